#pragma once

// Glue between feature vectors and the networks: normalization, labelled
// training sets, and argmax classification.

#include "wristml/features.hpp"
#include "wristml/fixed_point.hpp"
#include "wristml/network.hpp"
#include "wristml/train.hpp"

#include <cstddef>
#include <vector>

namespace wristml {

// z-score statistics per feature (population standard deviation).
InputNormalization fit_normalization(const std::vector<FeatureVector>& rows);

// Raw feature array, normalized when stats are present.
std::vector<double> network_input(const FeatureVector& f, const std::optional<InputNormalization>& norm);

// One-hot targets of +1 for the labelled class and -1 elsewhere.
Dataset make_dataset(const std::vector<FeatureVector>& rows, const std::vector<std::size_t>& labels,
                     std::size_t classes, const std::optional<InputNormalization>& norm);

struct Classification {
    std::size_t label = 0;
    double margin = 0.0;  // best output minus runner-up
    std::vector<double> outputs;
};

Classification decide(std::vector<double> outputs);

Classification classify(const NetworkModel& net, const FeatureVector& f);
Classification classify_fixed(const FixedPointNet& net, const FeatureVector& f);

}  // namespace wristml
