#pragma once

#include "wristml/network.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace wristml {

// Signed 32-bit fixed point with frac_bits fractional bits (Q(31-f).f).
class QFormat {
public:
    static constexpr int total_bits = 32;

    // Throws RangeError unless 1 <= frac_bits <= 30.
    explicit QFormat(int frac_bits = 16);

    int frac_bits() const noexcept { return frac_bits_; }
    double resolution() const noexcept;  // 2^-frac_bits
    double min_value() const noexcept;   // -2^(31 - f)
    double max_value() const noexcept;   // 2^(31 - f) - 2^-f

    bool representable(double x) const noexcept;

    // round(x * 2^f), half away from zero, clamped to the int32 range.
    // Sets *saturated when the clamp was applied.
    std::int32_t quantize(double x, bool* saturated = nullptr) const noexcept;
    double dequantize(std::int32_t raw) const noexcept;

    friend bool operator==(const QFormat&, const QFormat&) = default;

private:
    int frac_bits_;
};

// Piecewise-linear tanh over [-4, 4] on 257 evenly spaced knots (spacing
// 1/32). Knot values are tanh rounded into the format; the table is built
// from its upper half and mirrored, so eval(-x) == -eval(x) exactly.
// Beyond |x| >= 4 the output saturates at +-(1 - 2^-f).
class TanhLut {
public:
    static constexpr std::size_t knot_count = 257;
    static constexpr double half_range = 4.0;
    static constexpr int knots_per_unit = 32;

    explicit TanhLut(QFormat fmt);

    std::int32_t eval(std::int32_t x) const noexcept;

    const QFormat& format() const noexcept { return fmt_; }
    std::span<const std::int32_t> knots() const noexcept { return knots_; }
    std::int32_t saturation() const noexcept { return saturation_; }

private:
    QFormat fmt_;
    std::array<std::int32_t, knot_count> knots_{};
    std::int32_t saturation_;
};

std::int32_t tanh_lut_eval(std::int32_t x, const TanhLut& lut);

// Quantized mirror of a NetworkModel. Weight matrices keep the float
// layout (row-major, bias row last) with Q-format integers.
class FixedPointNet {
public:
    FixedPointNet(std::vector<LayerSpec> layers, std::vector<std::vector<std::int32_t>> weights, QFormat fmt,
                  std::size_t saturated_weights = 0);

    const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
    std::size_t connection_count() const noexcept { return weights_.size(); }
    std::size_t input_size() const noexcept { return layers_.front().size; }
    std::size_t output_size() const noexcept { return layers_.back().size; }
    std::span<const std::int32_t> weights(std::size_t connection) const { return weights_.at(connection); }
    const QFormat& format() const noexcept { return fmt_; }
    const TanhLut& lut() const noexcept { return lut_; }

    // Weights clamped during quantization.
    std::size_t saturated_weights() const noexcept { return saturated_; }

    const std::optional<InputNormalization>& normalization() const noexcept { return normalization_; }
    void set_normalization(std::optional<InputNormalization> norm);

private:
    std::vector<LayerSpec> layers_;
    std::vector<std::vector<std::int32_t>> weights_;
    QFormat fmt_;
    TanhLut lut_;
    std::size_t saturated_;
    std::optional<InputNormalization> normalization_;
};

FixedPointNet quantize(const NetworkModel& net, QFormat fmt = QFormat{16});
NetworkModel dequantize(const FixedPointNet& net);

struct FixedInferenceStats {
    std::size_t saturated_neurons = 0;  // pre-activations clamped to the int32 range
};

// Integer-only forward pass on already-quantized inputs. Products are
// summed exactly, the bias is added at double precision (2f fractional
// bits), and each neuron is rescaled once with round-half-away-from-zero
// and saturated to int32.
std::vector<std::int32_t> infer_fixed_raw(const FixedPointNet& net, std::span<const std::int32_t> input,
                                          FixedInferenceStats* stats = nullptr);

// Quantizes the input (RangeError if any value is not representable),
// runs infer_fixed_raw, and dequantizes the outputs.
std::vector<double> infer_fixed(const FixedPointNet& net, std::span<const double> input,
                                FixedInferenceStats* stats = nullptr);

}  // namespace wristml
