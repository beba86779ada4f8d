#include "wristml/pipeline.hpp"

#include "wristml/error.hpp"

#include <cmath>
#include <string>

namespace wristml {

InputNormalization fit_normalization(const std::vector<FeatureVector>& rows) {
    if (rows.empty())
        throw InsufficientDataError("normalization needs at least one feature row");
    InputNormalization norm;
    norm.mean.assign(kFeatureNames.size(), 0.0);
    norm.stddev.assign(kFeatureNames.size(), 0.0);
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        const auto a = r.as_array();
        for (std::size_t i = 0; i < a.size(); ++i)
            norm.mean[i] += a[i] / n;
    }
    for (const auto& r : rows) {
        const auto a = r.as_array();
        for (std::size_t i = 0; i < a.size(); ++i)
            norm.stddev[i] += (a[i] - norm.mean[i]) * (a[i] - norm.mean[i]) / n;
    }
    for (double& s : norm.stddev)
        s = std::sqrt(s);
    return norm;
}

std::vector<double> network_input(const FeatureVector& f, const std::optional<InputNormalization>& norm) {
    const auto a = f.as_array();
    if (norm)
        return norm->apply(a);
    return {a.begin(), a.end()};
}

Dataset make_dataset(const std::vector<FeatureVector>& rows, const std::vector<std::size_t>& labels,
                     std::size_t classes, const std::optional<InputNormalization>& norm) {
    if (rows.size() != labels.size())
        throw ShapeError("every feature row needs a label");
    Dataset data;
    data.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (labels[r] >= classes)
            throw ShapeError("label " + std::to_string(labels[r]) + " on row " + std::to_string(r) + " exceeds the " +
                             std::to_string(classes) + " network outputs");
        Sample s{network_input(rows[r], norm), std::vector<double>(classes, -1.0)};
        s.target[labels[r]] = 1.0;
        data.push_back(std::move(s));
    }
    return data;
}

Classification decide(std::vector<double> outputs) {
    Classification c;
    c.label = argmax(outputs);
    double runner_up = -INFINITY;
    for (std::size_t i = 0; i < outputs.size(); ++i)
        if (i != c.label && outputs[i] > runner_up)
            runner_up = outputs[i];
    c.margin = outputs.size() > 1 ? outputs[c.label] - runner_up : 0.0;
    c.outputs = std::move(outputs);
    return c;
}

Classification classify(const NetworkModel& net, const FeatureVector& f) {
    return decide(infer_float(net, network_input(f, net.normalization())));
}

Classification classify_fixed(const FixedPointNet& net, const FeatureVector& f) {
    return decide(infer_fixed(net, network_input(f, net.normalization())));
}

}  // namespace wristml
