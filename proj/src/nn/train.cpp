#include "wristml/train.hpp"

#include "wristml/error.hpp"

#include <cmath>
#include <string>

namespace wristml {
namespace {

void check_dataset(const NetworkModel& net, const Dataset& data) {
    if (data.empty())
        throw ShapeError("training set is empty");
    for (std::size_t s = 0; s < data.size(); ++s)
        if (data[s].input.size() != net.input_size() || data[s].target.size() != net.output_size())
            throw ShapeError("sample " + std::to_string(s) + " does not match the network's " +
                             std::to_string(net.input_size()) + " inputs / " + std::to_string(net.output_size()) +
                             " outputs");
}

double activate(Activation a, double z) { return a == Activation::tanh ? std::tanh(z) : z; }

// d act / d z expressed through the activation value y.
double activate_slope(Activation a, double y) { return a == Activation::tanh ? 1.0 - y * y : 1.0; }

// Activations of every layer for one sample; acts[0] is the input.
std::vector<std::vector<double>> forward_all(const NetworkModel& net, const std::vector<double>& input) {
    std::vector<std::vector<double>> acts(net.layer_count());
    acts[0] = input;
    for (std::size_t c = 0; c < net.connection_count(); ++c) {
        const std::size_t n_in = net.layers()[c].size;
        const std::size_t n_out = net.layers()[c + 1].size;
        const auto w = net.weights(c);
        auto& out = acts[c + 1];
        out.assign(n_out, 0.0);
        for (std::size_t j = 0; j < n_out; ++j) {
            double z = w[n_in * n_out + j];
            for (std::size_t i = 0; i < n_in; ++i)
                z += acts[c][i] * w[i * n_out + j];
            out[j] = activate(net.layers()[c + 1].activation, z);
        }
    }
    return acts;
}

}  // namespace

double mse(const NetworkModel& net, const Dataset& data) {
    check_dataset(net, data);
    double total = 0.0;
    for (const auto& s : data) {
        const auto y = infer_float(net, s.input);
        for (std::size_t k = 0; k < y.size(); ++k)
            total += (y[k] - s.target[k]) * (y[k] - s.target[k]);
    }
    return total / static_cast<double>(data.size() * net.output_size());
}

LossGradient mse_gradient(const NetworkModel& net, const Dataset& data) {
    check_dataset(net, data);
    const double scale = 1.0 / static_cast<double>(data.size() * net.output_size());

    std::vector<std::size_t> offset(net.connection_count() + 1, 0);
    for (std::size_t c = 0; c < net.connection_count(); ++c)
        offset[c + 1] = offset[c] + net.weights(c).size();

    LossGradient result;
    result.gradient.assign(offset.back(), 0.0);

    for (const auto& s : data) {
        const auto acts = forward_all(net, s.input);
        const auto& y = acts.back();

        // delta = dL/dz for the current layer
        std::vector<double> delta(y.size());
        const Activation out_act = net.layers().back().activation;
        for (std::size_t k = 0; k < y.size(); ++k) {
            const double e = y[k] - s.target[k];
            result.loss += e * e * scale;
            delta[k] = 2.0 * e * scale * activate_slope(out_act, y[k]);
        }

        for (std::size_t c = net.connection_count(); c-- > 0;) {
            const std::size_t n_in = net.layers()[c].size;
            const std::size_t n_out = net.layers()[c + 1].size;
            const auto w = net.weights(c);
            double* g = result.gradient.data() + offset[c];
            for (std::size_t i = 0; i < n_in; ++i)
                for (std::size_t j = 0; j < n_out; ++j)
                    g[i * n_out + j] += acts[c][i] * delta[j];
            for (std::size_t j = 0; j < n_out; ++j)
                g[n_in * n_out + j] += delta[j];

            if (c == 0)
                break;
            std::vector<double> prev(n_in, 0.0);
            const Activation act = net.layers()[c].activation;
            for (std::size_t i = 0; i < n_in; ++i) {
                double back = 0.0;
                for (std::size_t j = 0; j < n_out; ++j)
                    back += w[i * n_out + j] * delta[j];
                prev[i] = back * activate_slope(act, acts[c][i]);
            }
            delta.swap(prev);
        }
    }
    return result;
}

TrainResult train(const NetworkModel& net, const Dataset& data, const TrainOptions& options) {
    check_dataset(net, data);
    TrainResult result{net, {}};
    result.loss_history.reserve(options.epochs + 1);
    std::vector<double> weights = net.flat_weights();

    for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
        const LossGradient lg = mse_gradient(result.model, data);
        if (!std::isfinite(lg.loss))
            throw DivergenceError(epoch);
        result.loss_history.push_back(lg.loss);
        if (options.learning_rate == 0.0)
            continue;
        for (std::size_t i = 0; i < weights.size(); ++i)
            weights[i] -= options.learning_rate * lg.gradient[i];
        result.model.set_flat_weights(weights);
    }
    const double final_loss = mse(result.model, data);
    if (!std::isfinite(final_loss))
        throw DivergenceError(options.epochs);
    result.loss_history.push_back(final_loss);
    return result;
}

}  // namespace wristml
