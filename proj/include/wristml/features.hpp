#pragma once

// Classifier inputs derived from ECG (heart-rate variability) and galvanic
// skin response.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace wristml {

// Successive R-peak to R-peak durations in milliseconds.
struct RRSeries {
    std::vector<double> intervals_ms;
};

// Uniformly sampled signal with explicit timestamps.
struct SampledSignal {
    std::vector<double> time_s;
    std::vector<double> values;
    double sample_rate_hz = 0.0;
};

// Skin conductance trace in microsiemens.
struct GsrTrace {
    std::vector<double> time_s;
    std::vector<double> conductance_us;
    double sample_rate_hz = 0.0;
};

struct FeatureVector {
    double rmssd_ms = 0.0;
    double sdsd_ms = 0.0;
    std::size_t nn50 = 0;
    double gsrh_us = 0.0;
    double gsrl_s = 0.0;

    std::array<double, 5> as_array() const {
        return {rmssd_ms, sdsd_ms, static_cast<double>(nn50), gsrh_us, gsrl_s};
    }

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

inline constexpr std::array<std::string_view, 5> kFeatureNames = {"rmssd_ms", "sdsd_ms", "nn50", "gsrh_uS", "gsrl_s"};

// Root mean square of successive differences. Needs >= 2 intervals.
double rmssd(const RRSeries& rr);

// Population standard deviation of successive differences. Needs >= 3 intervals.
double sdsd(const RRSeries& rr);

// Number of successive differences strictly greater than 50 ms in magnitude.
std::size_t nn50(const RRSeries& rr);

struct HrvFeatures {
    double rmssd_ms = 0.0;
    double sdsd_ms = 0.0;
    std::size_t nn50 = 0;
};

// All three in one pass over the differences. Needs >= 3 intervals.
HrvFeatures hrv_features(const RRSeries& rr);

struct RPeakOptions {
    double refractory_s = 0.25;
    double threshold_ratio = 0.3;  // fraction of the peak derivative energy
    double search_s = 0.1;         // window after a threshold crossing searched for the R apex
};

// Derivative-energy threshold detector. Requires sample_rate >= 100 Hz and
// at least 2 s of signal; throws InsufficientDataError when fewer than two
// beats are found.
RRSeries detect_r_peaks(std::span<const double> ecg, double sample_rate_hz, const RPeakOptions& options = {});

// Sample indices of the detected R apexes.
std::vector<std::size_t> detect_r_peak_indices(std::span<const double> ecg, double sample_rate_hz,
                                               const RPeakOptions& options = {});

struct GsrSlopeFeatures {
    double height_us = 0.0;  // mean rise of accepted runs
    double length_s = 0.0;   // mean duration of accepted runs
    std::size_t runs = 0;
};

// Maximal strictly rising runs whose total rise is at least threshold_us.
// Returns zeros when no run qualifies.
GsrSlopeFeatures gsr_slope_features(const GsrTrace& gsr, double threshold_us = 0.05);

struct WindowConfig {
    double window_length_s = 30.0;
    double overlap = 0.5;  // in [0, 1)
    double gsr_threshold_us = 0.05;
    RPeakOptions r_peaks{};

    double stride_s() const { return window_length_s * (1.0 - overlap); }
};

// Throws Error for an invalid configuration.
void validate(const WindowConfig& cfg);

// Number of complete windows that fit in duration_s.
std::size_t window_count(double duration_s, const WindowConfig& cfg);

struct WindowFeatures {
    double start_s = 0.0;  // window start relative to the common signal start
    FeatureVector features;
};

// One feature vector per window over the time span both signals cover.
// Throws InsufficientDataError when the window is longer than the signals
// or a window holds too few beats.
std::vector<WindowFeatures> extract_window_features(const SampledSignal& ecg, const GsrTrace& gsr,
                                                    const WindowConfig& cfg);

}  // namespace wristml
