#include "wristml/features.hpp"

#include "wristml/error.hpp"
#include "wristml/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wristml {
namespace {

constexpr double kNn50ThresholdMs = 50.0;

std::vector<double> successive_differences(const RRSeries& rr, std::size_t min_intervals, const char* what) {
    const auto& x = rr.intervals_ms;
    if (x.size() < min_intervals)
        throw InsufficientDataError(std::string(what) + " needs at least " + std::to_string(min_intervals) +
                                    " RR intervals, got " + std::to_string(x.size()));
    if (!std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0 && std::isfinite(v); }))
        throw Error("RR intervals must be positive and finite");
    std::vector<double> d(x.size() - 1);
    kernels::active().successive_diff(x.data(), x.size(), d.data());
    return d;
}

}  // namespace

double rmssd(const RRSeries& rr) {
    const auto d = successive_differences(rr, 2, "RMSSD");
    return std::sqrt(kernels::sum_sq_dev(d, 0.0) / static_cast<double>(d.size()));
}

double sdsd(const RRSeries& rr) {
    const auto d = successive_differences(rr, 3, "SDSD");
    const double n = static_cast<double>(d.size());
    const double mean = kernels::sum(d) / n;
    return std::sqrt(kernels::sum_sq_dev(d, mean) / n);
}

std::size_t nn50(const RRSeries& rr) {
    const auto d = successive_differences(rr, 2, "NN50");
    return kernels::count_abs_greater(d, kNn50ThresholdMs);
}

HrvFeatures hrv_features(const RRSeries& rr) {
    const auto d = successive_differences(rr, 3, "HRV features");
    const double n = static_cast<double>(d.size());
    const double mean = kernels::sum(d) / n;
    HrvFeatures f;
    f.rmssd_ms = std::sqrt(kernels::sum_sq_dev(d, 0.0) / n);
    f.sdsd_ms = std::sqrt(kernels::sum_sq_dev(d, mean) / n);
    f.nn50 = kernels::count_abs_greater(d, kNn50ThresholdMs);
    return f;
}

}  // namespace wristml
