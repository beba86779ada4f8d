#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace wristml {

enum class Activation { linear, tanh };

struct LayerSpec {
    std::size_t size = 1;  // real neurons; the bias unit is implicit
    Activation activation = Activation::tanh;

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// Per-feature z-score statistics applied to raw inputs before inference.
struct InputNormalization {
    std::vector<double> mean;
    std::vector<double> stddev;

    std::vector<double> apply(std::span<const double> raw) const;

    friend bool operator==(const InputNormalization&, const InputNormalization&) = default;
};

// Fully connected feed-forward network.
//
// Connection l maps layer l to layer l + 1 through a row-major matrix of
// (size(l) + 1) x size(l + 1) weights. Row r < size(l) holds the weights
// leaving input neuron r; the final row is the bias. Bias units are not
// counted as neurons.
class NetworkModel {
public:
    // Throws ShapeError on fewer than two layers, an empty layer, or a
    // non-linear input layer. All weights start at zero.
    explicit NetworkModel(std::vector<LayerSpec> layers);

    // Throws ShapeError when the matrices do not match the topology and
    // Error when a weight is not finite.
    NetworkModel(std::vector<LayerSpec> layers, std::vector<std::vector<double>> weights);

    const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
    std::size_t layer_count() const noexcept { return layers_.size(); }
    std::size_t connection_count() const noexcept { return weights_.size(); }
    std::size_t input_size() const noexcept { return layers_.front().size; }
    std::size_t output_size() const noexcept { return layers_.back().size; }
    std::size_t neuron_count() const noexcept;
    std::size_t weight_count() const noexcept;

    std::span<const double> weights(std::size_t connection) const { return weights_.at(connection); }
    std::span<double> weights(std::size_t connection) { return weights_.at(connection); }

    double weight(std::size_t connection, std::size_t from, std::size_t to) const;
    double bias(std::size_t connection, std::size_t to) const;

    // All weights concatenated in connection order.
    std::vector<double> flat_weights() const;
    void set_flat_weights(std::span<const double> flat);

    const std::optional<InputNormalization>& normalization() const noexcept { return normalization_; }
    void set_normalization(std::optional<InputNormalization> norm);

    friend bool operator==(const NetworkModel&, const NetworkModel&) = default;

private:
    std::vector<LayerSpec> layers_;
    std::vector<std::vector<double>> weights_;
    std::optional<InputNormalization> normalization_;
};

// Topology helper: input layer linear, every other layer tanh.
std::vector<LayerSpec> tanh_topology(std::span<const std::size_t> sizes);

// 5-50-50-3, tanh hidden and output layers, zero weights.
NetworkModel build_network_a();

// 100 inputs, 24 hidden layers growing by 8 neurons every second layer
// (8, 8, 16, 16, ..., 96, 96), 8 outputs, tanh throughout, zero weights.
NetworkModel build_network_b();

// Copy of net with every weight drawn uniformly from [-range, range].
NetworkModel randomize_weights(const NetworkModel& net, std::uint64_t seed, double range = 0.5);

// Forward pass. Throws ShapeError when input.size() != net.input_size().
std::vector<double> infer_float(const NetworkModel& net, std::span<const double> input);

std::size_t argmax(std::span<const double> values);

struct FootprintReport {
    std::size_t neuron_bytes = 0;
    std::size_t weight_bytes = 0;
    std::size_t layer_bytes = 0;
    std::size_t total_bytes = 0;
};

// Storage estimate of the on-device network: 16 bytes per neuron, 4 per
// weight, 8 per layer.
FootprintReport footprint(const NetworkModel& net);

}  // namespace wristml
