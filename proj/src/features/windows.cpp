#include "wristml/features.hpp"

#include "wristml/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wristml {
namespace {

// Window arithmetic tolerates this much floating-point slack (in windows).
constexpr double kSlack = 1e-9;

double covered_until(const std::vector<double>& t, double rate) { return t.back() + 1.0 / rate; }

// Sample positions on the window grid, as whole sample counts from `origin`.
std::vector<long long> sample_offsets(const std::vector<double>& t, double origin, double rate) {
    std::vector<long long> s(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        s[i] = std::llround((t[i] - origin) * rate);
    return s;
}

std::pair<std::size_t, std::size_t> slice(const std::vector<long long>& s, double from_s, double to_s, double rate) {
    const long long lo = std::llround(from_s * rate);
    const long long hi = std::llround(to_s * rate);
    const auto b = std::lower_bound(s.begin(), s.end(), lo);
    const auto e = std::lower_bound(s.begin(), s.end(), hi);
    return {static_cast<std::size_t>(b - s.begin()), static_cast<std::size_t>(e - s.begin())};
}

void check_signal(std::size_t n_time, std::size_t n_values, double rate, const char* name) {
    if (n_time != n_values)
        throw ShapeError(std::string(name) + " has mismatched time and value columns");
    if (n_time < 2)
        throw InsufficientDataError(std::string(name) + " has fewer than 2 samples");
    if (!(rate > 0.0))
        throw Error(std::string(name) + " sample rate must be positive");
}

}  // namespace

void validate(const WindowConfig& cfg) {
    if (!(cfg.window_length_s > 0.0))
        throw Error("window length must be positive");
    if (!(cfg.overlap >= 0.0 && cfg.overlap < 1.0))
        throw Error("window overlap must be in [0, 1)");
    if (!(cfg.gsr_threshold_us >= 0.0))
        throw Error("GSR threshold must be non-negative");
}

std::size_t window_count(double duration_s, const WindowConfig& cfg) {
    validate(cfg);
    const double spare = (duration_s - cfg.window_length_s) / cfg.stride_s();
    if (spare < -kSlack)
        return 0;
    return static_cast<std::size_t>(std::floor(spare + kSlack)) + 1;
}

std::vector<WindowFeatures> extract_window_features(const SampledSignal& ecg, const GsrTrace& gsr,
                                                    const WindowConfig& cfg) {
    validate(cfg);
    check_signal(ecg.time_s.size(), ecg.values.size(), ecg.sample_rate_hz, "ECG");
    check_signal(gsr.time_s.size(), gsr.conductance_us.size(), gsr.sample_rate_hz, "GSR");

    const double start = std::max(ecg.time_s.front(), gsr.time_s.front());
    const double end = std::min(covered_until(ecg.time_s, ecg.sample_rate_hz), covered_until(gsr.time_s, gsr.sample_rate_hz));
    const std::size_t count = window_count(end - start, cfg);
    if (count == 0)
        throw InsufficientDataError("window of " + std::to_string(cfg.window_length_s) +
                                    " s is longer than the common signal span of " + std::to_string(end - start) + " s");

    const auto ecg_pos = sample_offsets(ecg.time_s, start, ecg.sample_rate_hz);
    const auto gsr_pos = sample_offsets(gsr.time_s, start, gsr.sample_rate_hz);

    std::vector<WindowFeatures> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double from = static_cast<double>(k) * cfg.stride_s();
        const double to = from + cfg.window_length_s;
        out[k].start_s = from;

        const auto [eb, ee] = slice(ecg_pos, from, to, ecg.sample_rate_hz);
        const std::span<const double> ecg_window(ecg.values.data() + eb, ee - eb);
        try {
            const HrvFeatures hrv = hrv_features(detect_r_peaks(ecg_window, ecg.sample_rate_hz, cfg.r_peaks));
            out[k].features.rmssd_ms = hrv.rmssd_ms;
            out[k].features.sdsd_ms = hrv.sdsd_ms;
            out[k].features.nn50 = hrv.nn50;
        } catch (const InsufficientDataError& e) {
            throw InsufficientDataError("window " + std::to_string(k) + " (t=" + std::to_string(from) + " s): " + e.what());
        }

        const auto [gb, ge] = slice(gsr_pos, from, to, gsr.sample_rate_hz);
        GsrTrace g;
        g.sample_rate_hz = gsr.sample_rate_hz;
        g.time_s.assign(gsr.time_s.begin() + static_cast<std::ptrdiff_t>(gb), gsr.time_s.begin() + static_cast<std::ptrdiff_t>(ge));
        g.conductance_us.assign(gsr.conductance_us.begin() + static_cast<std::ptrdiff_t>(gb),
                                gsr.conductance_us.begin() + static_cast<std::ptrdiff_t>(ge));
        if (g.time_s.size() >= 2) {
            const GsrSlopeFeatures slope = gsr_slope_features(g, cfg.gsr_threshold_us);
            out[k].features.gsrh_us = slope.height_us;
            out[k].features.gsrl_s = slope.length_s;
        }
    }
    return out;
}

}  // namespace wristml
