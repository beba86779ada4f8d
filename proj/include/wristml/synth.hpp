#pragma once

// Deterministic synthetic recordings for tests, demos and the bundled
// example data. Not physiological models.

#include "wristml/features.hpp"

#include <cstdint>
#include <vector>

namespace wristml::synth {

struct EcgOptions {
    double duration_s = 60.0;
    double sample_rate_hz = 256.0;
    double mean_rr_ms = 800.0;
    double rr_jitter_ms = 0.0;  // uniform +- jitter per beat
    double qrs_sigma_ms = 10.0;
    double amplitude_mv = 1.0;
    double noise_mv = 0.0;
    double start_time_s = 0.0;
};

struct Ecg {
    SampledSignal signal;
    std::vector<double> beat_times_s;  // true R apex times
};

// Gaussian QRS pulses at jittered beat times on a flat baseline.
Ecg ecg(const EcgOptions& options, std::uint64_t seed);

// Single-sample unit spikes every period_s seconds, starting at t = 0.
SampledSignal spike_train(double duration_s, double sample_rate_hz, double period_s);

struct GsrOptions {
    double duration_s = 60.0;
    double sample_rate_hz = 8.0;
    double tonic_us = 2.0;
    double responses_per_minute = 4.0;
    double min_rise_us = 0.1;
    double max_rise_us = 1.0;
    double min_rise_s = 1.0;
    double max_rise_s = 3.0;
    double decay_s = 4.0;
    double start_time_s = 0.0;
};

// Tonic level plus skin conductance responses: a linear rise followed by an
// exponential recovery.
GsrTrace gsr(const GsrOptions& options, std::uint64_t seed);

}  // namespace wristml::synth
