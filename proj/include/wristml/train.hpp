#pragma once

#include "wristml/network.hpp"

#include <cstddef>
#include <vector>

namespace wristml {

struct Sample {
    std::vector<double> input;
    std::vector<double> target;
};

using Dataset = std::vector<Sample>;

// Mean squared error over every sample and output unit.
double mse(const NetworkModel& net, const Dataset& data);

struct LossGradient {
    double loss = 0.0;
    std::vector<double> gradient;  // same layout as NetworkModel::flat_weights()
};

// Analytic gradient of mse() by backpropagation.
LossGradient mse_gradient(const NetworkModel& net, const Dataset& data);

struct TrainOptions {
    std::size_t epochs = 1000;
    double learning_rate = 0.1;
};

struct TrainResult {
    NetworkModel model;
    std::vector<double> loss_history;  // loss before each epoch's update, then the final loss
};

// Full-batch gradient descent on mse(). Throws ShapeError on an empty or
// mis-shaped dataset and DivergenceError when the loss stops being finite.
TrainResult train(const NetworkModel& net, const Dataset& data, const TrainOptions& options);

}  // namespace wristml
