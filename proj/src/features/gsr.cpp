#include "wristml/features.hpp"

#include "wristml/error.hpp"

namespace wristml {

GsrSlopeFeatures gsr_slope_features(const GsrTrace& gsr, double threshold_us) {
    const auto& t = gsr.time_s;
    const auto& c = gsr.conductance_us;
    if (t.size() != c.size())
        throw ShapeError("GSR trace has mismatched time and conductance columns");
    if (c.size() < 2)
        throw InsufficientDataError("GSR slope features need at least 2 samples");

    double height_sum = 0.0;
    double length_sum = 0.0;
    std::size_t runs = 0;

    std::size_t start = 0;
    while (start + 1 < c.size()) {
        std::size_t end = start;
        while (end + 1 < c.size() && c[end + 1] > c[end])
            ++end;
        if (end > start) {
            const double rise = c[end] - c[start];
            if (rise >= threshold_us) {
                height_sum += rise;
                length_sum += t[end] - t[start];
                ++runs;
            }
            start = end;
        } else {
            ++start;
        }
    }

    GsrSlopeFeatures f;
    f.runs = runs;
    if (runs > 0) {
        f.height_us = height_sum / static_cast<double>(runs);
        f.length_s = length_sum / static_cast<double>(runs);
    }
    return f;
}

}  // namespace wristml
