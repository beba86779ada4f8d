#include "wristml/synth.hpp"

#include <cmath>
#include <random>

namespace wristml::synth {

Ecg ecg(const EcgOptions& options, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-options.rr_jitter_ms, options.rr_jitter_ms);
    std::normal_distribution<double> noise(0.0, 1.0);

    Ecg out;
    // first beat half an interval in, so every beat has a full QRS in range
    for (double t = options.mean_rr_ms / 2000.0; t < options.duration_s;) {
        out.beat_times_s.push_back(t);
        t += (options.mean_rr_ms + (options.rr_jitter_ms > 0.0 ? jitter(rng) : 0.0)) / 1000.0;
    }

    const auto n = static_cast<std::size_t>(std::llround(options.duration_s * options.sample_rate_hz));
    const double sigma = options.qrs_sigma_ms / 1000.0;
    auto& s = out.signal;
    s.sample_rate_hz = options.sample_rate_hz;
    s.time_s.resize(n);
    s.values.assign(n, 0.0);
    std::size_t first_beat = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / options.sample_rate_hz;
        s.time_s[i] = options.start_time_s + t;
        while (first_beat < out.beat_times_s.size() && out.beat_times_s[first_beat] < t - 6.0 * sigma)
            ++first_beat;
        double v = 0.0;
        for (std::size_t b = first_beat; b < out.beat_times_s.size() && out.beat_times_s[b] <= t + 6.0 * sigma; ++b) {
            const double u = (t - out.beat_times_s[b]) / sigma;
            v += options.amplitude_mv * std::exp(-0.5 * u * u);
        }
        if (options.noise_mv > 0.0)
            v += options.noise_mv * noise(rng);
        s.values[i] = v;
    }
    for (double& b : out.beat_times_s)
        b += options.start_time_s;
    return out;
}

SampledSignal spike_train(double duration_s, double sample_rate_hz, double period_s) {
    SampledSignal s;
    s.sample_rate_hz = sample_rate_hz;
    const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    s.time_s.resize(n);
    s.values.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        s.time_s[i] = static_cast<double>(i) / sample_rate_hz;
    for (std::size_t k = 0;; ++k) {
        const auto i = static_cast<std::size_t>(std::llround(static_cast<double>(k) * period_s * sample_rate_hz));
        if (i >= n)
            break;
        s.values[i] = 1.0;
    }
    return s;
}

GsrTrace gsr(const GsrOptions& options, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    struct Response {
        double onset, rise_s, rise_us;
    };
    std::vector<Response> responses;
    const double mean_gap = 60.0 / options.responses_per_minute;
    for (double t = mean_gap * unit(rng); t < options.duration_s; t += mean_gap * (0.5 + unit(rng))) {
        responses.push_back({t, options.min_rise_s + (options.max_rise_s - options.min_rise_s) * unit(rng),
                             options.min_rise_us + (options.max_rise_us - options.min_rise_us) * unit(rng)});
    }

    GsrTrace g;
    g.sample_rate_hz = options.sample_rate_hz;
    const auto n = static_cast<std::size_t>(std::llround(options.duration_s * options.sample_rate_hz));
    g.time_s.resize(n);
    g.conductance_us.assign(n, options.tonic_us);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / options.sample_rate_hz;
        g.time_s[i] = options.start_time_s + t;
        for (const auto& r : responses) {
            const double dt = t - r.onset;
            if (dt <= 0.0)
                continue;
            g.conductance_us[i] += dt < r.rise_s ? r.rise_us * dt / r.rise_s
                                                 : r.rise_us * std::exp(-(dt - r.rise_s) / options.decay_s);
        }
    }
    return g;
}

}  // namespace wristml::synth
