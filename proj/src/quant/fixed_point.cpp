#include "wristml/fixed_point.hpp"

#include "wristml/error.hpp"
#include "wristml/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wristml {
namespace {

using kernels::int128;

constexpr std::int64_t kRawMax = std::numeric_limits<std::int32_t>::max();
constexpr std::int64_t kRawMin = std::numeric_limits<std::int32_t>::min();

// acc / 2^shift rounded half away from zero, then clamped to int32.
std::int32_t rescale_saturate(int128 acc, int shift, bool& saturated) {
    const int128 half = static_cast<int128>(1) << (shift - 1);
    const int128 q = acc >= 0 ? (acc + half) >> shift : -((-acc + half) >> shift);
    if (q > kRawMax) {
        saturated = true;
        return static_cast<std::int32_t>(kRawMax);
    }
    if (q < kRawMin) {
        saturated = true;
        return static_cast<std::int32_t>(kRawMin);
    }
    saturated = false;
    return static_cast<std::int32_t>(q);
}

}  // namespace

QFormat::QFormat(int frac_bits) : frac_bits_(frac_bits) {
    if (frac_bits < 1 || frac_bits > 30)
        throw RangeError("frac_bits must be in [1, 30], got " + std::to_string(frac_bits));
}

double QFormat::resolution() const noexcept { return std::ldexp(1.0, -frac_bits_); }
double QFormat::min_value() const noexcept { return std::ldexp(static_cast<double>(kRawMin), -frac_bits_); }
double QFormat::max_value() const noexcept { return std::ldexp(static_cast<double>(kRawMax), -frac_bits_); }

bool QFormat::representable(double x) const noexcept {
    return std::isfinite(x) && x >= min_value() && x <= max_value();
}

std::int32_t QFormat::quantize(double x, bool* saturated) const noexcept {
    const double scaled = std::round(std::ldexp(x, frac_bits_));
    bool sat = false;
    std::int32_t raw;
    if (std::isnan(scaled)) {
        sat = true;
        raw = 0;
    } else if (scaled > static_cast<double>(kRawMax)) {
        sat = true;
        raw = static_cast<std::int32_t>(kRawMax);
    } else if (scaled < static_cast<double>(kRawMin)) {
        sat = true;
        raw = static_cast<std::int32_t>(kRawMin);
    } else {
        raw = static_cast<std::int32_t>(scaled);
    }
    if (saturated != nullptr)
        *saturated = sat;
    return raw;
}

double QFormat::dequantize(std::int32_t raw) const noexcept { return std::ldexp(static_cast<double>(raw), -frac_bits_); }

FixedPointNet::FixedPointNet(std::vector<LayerSpec> layers, std::vector<std::vector<std::int32_t>> weights,
                             QFormat fmt, std::size_t saturated_weights)
    : layers_(std::move(layers)), weights_(std::move(weights)), fmt_(fmt), lut_(fmt), saturated_(saturated_weights) {
    // Reuse the float model's topology validation.
    const NetworkModel shape(layers_);
    if (weights_.size() != shape.connection_count())
        throw ShapeError("expected " + std::to_string(shape.connection_count()) + " weight matrices, got " +
                         std::to_string(weights_.size()));
    for (std::size_t c = 0; c < weights_.size(); ++c)
        if (weights_[c].size() != shape.weights(c).size())
            throw ShapeError("connection " + std::to_string(c) + " expects " + std::to_string(shape.weights(c).size()) +
                             " weights, got " + std::to_string(weights_[c].size()));
}

void FixedPointNet::set_normalization(std::optional<InputNormalization> norm) {
    if (norm && (norm->mean.size() != input_size() || norm->stddev.size() != input_size()))
        throw ShapeError("normalization statistics must have one entry per input");
    normalization_ = std::move(norm);
}

FixedPointNet quantize(const NetworkModel& net, QFormat fmt) {
    std::vector<std::vector<std::int32_t>> weights(net.connection_count());
    std::size_t saturated = 0;
    for (std::size_t c = 0; c < net.connection_count(); ++c) {
        const auto src = net.weights(c);
        weights[c].resize(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            bool sat = false;
            weights[c][i] = fmt.quantize(src[i], &sat);
            saturated += sat ? 1 : 0;
        }
    }
    FixedPointNet out(net.layers(), std::move(weights), fmt, saturated);
    out.set_normalization(net.normalization());
    return out;
}

NetworkModel dequantize(const FixedPointNet& net) {
    std::vector<std::vector<double>> weights(net.connection_count());
    for (std::size_t c = 0; c < net.connection_count(); ++c)
        for (std::int32_t w : net.weights(c))
            weights[c].push_back(net.format().dequantize(w));
    NetworkModel out(net.layers(), std::move(weights));
    out.set_normalization(net.normalization());
    return out;
}

std::vector<std::int32_t> infer_fixed_raw(const FixedPointNet& net, std::span<const std::int32_t> input,
                                          FixedInferenceStats* stats) {
    if (input.size() != net.input_size())
        throw ShapeError("input has " + std::to_string(input.size()) + " values, network expects " +
                         std::to_string(net.input_size()));
    const auto& k = kernels::active();
    const int f = net.format().frac_bits();
    std::size_t saturated = 0;

    std::vector<std::int32_t> act(input.begin(), input.end());
    std::vector<std::int32_t> next;
    std::vector<int128> acc;
    for (std::size_t c = 0; c < net.connection_count(); ++c) {
        const LayerSpec& out = net.layers()[c + 1];
        const auto w = net.weights(c);
        const std::size_t n_in = act.size();
        acc.resize(out.size);
        next.resize(out.size);
        k.dense_i32(act.data(), n_in, w.data(), out.size, acc.data());
        const std::int32_t* bias = w.data() + n_in * out.size;
        for (std::size_t j = 0; j < out.size; ++j) {
            const int128 total = acc[j] + static_cast<int128>(bias[j]) * (static_cast<int128>(1) << f);
            bool sat = false;
            const std::int32_t z = rescale_saturate(total, f, sat);
            saturated += sat ? 1 : 0;
            next[j] = out.activation == Activation::tanh ? net.lut().eval(z) : z;
        }
        act.swap(next);
    }
    if (stats != nullptr)
        stats->saturated_neurons = saturated;
    return act;
}

std::vector<double> infer_fixed(const FixedPointNet& net, std::span<const double> input, FixedInferenceStats* stats) {
    if (input.size() != net.input_size())
        throw ShapeError("input has " + std::to_string(input.size()) + " values, network expects " +
                         std::to_string(net.input_size()));
    const QFormat& fmt = net.format();
    std::vector<std::int32_t> q(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (!fmt.representable(input[i]))
            throw RangeError("input " + std::to_string(i) + " = " + std::to_string(input[i]) +
                             " is outside the representable range of Q" + std::to_string(31 - fmt.frac_bits()) + "." +
                             std::to_string(fmt.frac_bits()));
        q[i] = fmt.quantize(input[i]);
    }
    const auto raw = infer_fixed_raw(net, q, stats);
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        out[i] = fmt.dequantize(raw[i]);
    return out;
}

}  // namespace wristml
