#include "wristml/features.hpp"

#include "wristml/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wristml {

std::vector<std::size_t> detect_r_peak_indices(std::span<const double> ecg, double sample_rate_hz,
                                               const RPeakOptions& options) {
    if (!(sample_rate_hz >= 100.0))
        throw InsufficientDataError("R-peak detection needs a sample rate of at least 100 Hz, got " +
                                    std::to_string(sample_rate_hz));
    if (static_cast<double>(ecg.size()) < 2.0 * sample_rate_hz)
        throw InsufficientDataError("R-peak detection needs at least 2 s of ECG");

    const std::size_t n = ecg.size();
    std::vector<double> energy(n, 0.0);
    double peak_energy = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = ecg[i] - ecg[i - 1];
        energy[i] = d * d;
        peak_energy = std::max(peak_energy, energy[i]);
    }

    std::vector<std::size_t> peaks;
    if (!(peak_energy > 0.0))
        return peaks;

    const double threshold = options.threshold_ratio * peak_energy;
    const auto refractory = static_cast<std::size_t>(std::lround(options.refractory_s * sample_rate_hz));
    const auto search = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(options.search_s * sample_rate_hz)));

    std::size_t blocked_until = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (i < blocked_until || energy[i] < threshold)
            continue;
        // The crossing sits on the QRS upstroke; the apex is the signal maximum shortly after.
        const std::size_t lo = i - 1;
        const std::size_t hi = std::min(n, i + search);
        const auto apex = static_cast<std::size_t>(std::max_element(ecg.begin() + lo, ecg.begin() + hi) - ecg.begin());
        if (peaks.empty() || apex >= peaks.back() + refractory)
            peaks.push_back(apex);
        blocked_until = std::max(apex, i) + refractory;
    }
    return peaks;
}

RRSeries detect_r_peaks(std::span<const double> ecg, double sample_rate_hz, const RPeakOptions& options) {
    const auto peaks = detect_r_peak_indices(ecg, sample_rate_hz, options);
    if (peaks.size() < 2)
        throw InsufficientDataError("found " + std::to_string(peaks.size()) + " R peaks; at least 2 are needed");
    RRSeries rr;
    rr.intervals_ms.reserve(peaks.size() - 1);
    for (std::size_t k = 1; k < peaks.size(); ++k)
        rr.intervals_ms.push_back(static_cast<double>(peaks[k] - peaks[k - 1]) * 1000.0 / sample_rate_hz);
    return rr;
}

}  // namespace wristml
