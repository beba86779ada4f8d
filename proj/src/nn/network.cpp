#include "wristml/network.hpp"

#include "wristml/error.hpp"
#include "wristml/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace wristml {
namespace {

void validate_layers(const std::vector<LayerSpec>& layers) {
    if (layers.size() < 2)
        throw ShapeError("a network needs at least an input and an output layer");
    for (std::size_t l = 0; l < layers.size(); ++l)
        if (layers[l].size == 0)
            throw ShapeError("layer " + std::to_string(l) + " is empty");
    if (layers.front().activation != Activation::linear)
        throw ShapeError("the input layer must be linear");
}

std::size_t matrix_size(const std::vector<LayerSpec>& layers, std::size_t connection) {
    return (layers[connection].size + 1) * layers[connection + 1].size;
}

}  // namespace

std::vector<double> InputNormalization::apply(std::span<const double> raw) const {
    if (raw.size() != mean.size() || raw.size() != stddev.size())
        throw ShapeError("normalization expects " + std::to_string(mean.size()) + " features, got " +
                         std::to_string(raw.size()));
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        out[i] = stddev[i] > 0.0 ? (raw[i] - mean[i]) / stddev[i] : raw[i] - mean[i];
    return out;
}

NetworkModel::NetworkModel(std::vector<LayerSpec> layers) : layers_(std::move(layers)) {
    validate_layers(layers_);
    weights_.resize(layers_.size() - 1);
    for (std::size_t c = 0; c < weights_.size(); ++c)
        weights_[c].assign(matrix_size(layers_, c), 0.0);
}

NetworkModel::NetworkModel(std::vector<LayerSpec> layers, std::vector<std::vector<double>> weights)
    : layers_(std::move(layers)), weights_(std::move(weights)) {
    validate_layers(layers_);
    if (weights_.size() != layers_.size() - 1)
        throw ShapeError("expected " + std::to_string(layers_.size() - 1) + " weight matrices, got " +
                         std::to_string(weights_.size()));
    for (std::size_t c = 0; c < weights_.size(); ++c) {
        if (weights_[c].size() != matrix_size(layers_, c))
            throw ShapeError("connection " + std::to_string(c) + " expects " +
                             std::to_string(matrix_size(layers_, c)) + " weights, got " +
                             std::to_string(weights_[c].size()));
        if (!std::all_of(weights_[c].begin(), weights_[c].end(), [](double w) { return std::isfinite(w); }))
            throw Error("connection " + std::to_string(c) + " contains a non-finite weight");
    }
}

std::size_t NetworkModel::neuron_count() const noexcept {
    std::size_t n = 0;
    for (const auto& l : layers_)
        n += l.size;
    return n;
}

std::size_t NetworkModel::weight_count() const noexcept {
    std::size_t n = 0;
    for (std::size_t c = 0; c + 1 < layers_.size(); ++c)
        n += matrix_size(layers_, c);
    return n;
}

double NetworkModel::weight(std::size_t connection, std::size_t from, std::size_t to) const {
    const std::size_t n_out = layers_.at(connection + 1).size;
    if (from > layers_[connection].size || to >= n_out)
        throw ShapeError("weight index out of range");
    return weights_[connection][from * n_out + to];
}

double NetworkModel::bias(std::size_t connection, std::size_t to) const {
    return weight(connection, layers_.at(connection).size, to);
}

std::vector<double> NetworkModel::flat_weights() const {
    std::vector<double> flat;
    flat.reserve(weight_count());
    for (const auto& m : weights_)
        flat.insert(flat.end(), m.begin(), m.end());
    return flat;
}

void NetworkModel::set_flat_weights(std::span<const double> flat) {
    if (flat.size() != weight_count())
        throw ShapeError("expected " + std::to_string(weight_count()) + " weights, got " +
                         std::to_string(flat.size()));
    auto it = flat.begin();
    for (auto& m : weights_) {
        std::copy_n(it, m.size(), m.begin());
        it += static_cast<std::ptrdiff_t>(m.size());
    }
}

void NetworkModel::set_normalization(std::optional<InputNormalization> norm) {
    if (norm && (norm->mean.size() != input_size() || norm->stddev.size() != input_size()))
        throw ShapeError("normalization statistics must have one entry per input");
    normalization_ = std::move(norm);
}

std::vector<LayerSpec> tanh_topology(std::span<const std::size_t> sizes) {
    std::vector<LayerSpec> layers;
    layers.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i)
        layers.push_back({sizes[i], i == 0 ? Activation::linear : Activation::tanh});
    return layers;
}

NetworkModel build_network_a() {
    const std::size_t sizes[] = {5, 50, 50, 3};
    return NetworkModel(tanh_topology(sizes));
}

NetworkModel build_network_b() {
    std::vector<std::size_t> sizes{100};
    for (std::size_t h = 0; h < 24; ++h)
        sizes.push_back(8 * (h / 2 + 1));
    sizes.push_back(8);
    return NetworkModel(tanh_topology(sizes));
}

NetworkModel randomize_weights(const NetworkModel& net, std::uint64_t seed, double range) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-range, range);
    NetworkModel out = net;
    for (std::size_t c = 0; c < out.connection_count(); ++c)
        for (double& w : out.weights(c))
            w = dist(rng);
    return out;
}

std::vector<double> infer_float(const NetworkModel& net, std::span<const double> input) {
    if (input.size() != net.input_size())
        throw ShapeError("input has " + std::to_string(input.size()) + " values, network expects " +
                         std::to_string(net.input_size()));
    const auto& k = kernels::active();
    std::vector<double> act(input.begin(), input.end());
    std::vector<double> next;
    for (std::size_t c = 0; c < net.connection_count(); ++c) {
        const LayerSpec& out = net.layers()[c + 1];
        next.resize(out.size);
        k.dense_f64(act.data(), act.size(), net.weights(c).data(), out.size, next.data());
        if (out.activation == Activation::tanh)
            for (double& z : next)
                z = std::tanh(z);
        act.swap(next);
    }
    return act;
}

std::size_t argmax(std::span<const double> values) {
    if (values.empty())
        throw ShapeError("argmax of an empty vector");
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

FootprintReport footprint(const NetworkModel& net) {
    FootprintReport r;
    r.neuron_bytes = 16 * net.neuron_count();
    r.weight_bytes = 4 * net.weight_count();
    r.layer_bytes = 8 * net.layer_count();
    r.total_bytes = r.neuron_bytes + r.weight_bytes + r.layer_bytes;
    return r;
}

}  // namespace wristml
