#pragma once

// Numeric CSV files: one header line, comma-separated decimal columns.

#include "wristml/features.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wristml::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> row_lines;  // 1-based source line of each row
};

// Throws ParseError with the offending line. When `expected` is non-empty
// the header must match it exactly.
Table parse(std::string_view text, const std::vector<std::string_view>& expected = {});

std::string format_number(double v);

// `time_s,ecg`. The sample rate is taken from the median sample spacing.
SampledSignal read_ecg(std::string_view text);
std::string write_ecg(const SampledSignal& ecg);

// `time_s,gsr_uS`.
GsrTrace read_gsr(std::string_view text);
std::string write_gsr(const GsrTrace& gsr);

// `rmssd_ms,sdsd_ms,nn50,gsrh_uS,gsrl_s`
std::string write_features(const std::vector<FeatureVector>& rows);

struct LabeledFeatures {
    std::vector<FeatureVector> features;
    std::vector<std::size_t> labels;  // empty unless a `label` column is present
};

// Accepts the feature header, optionally followed by a `label` column.
LabeledFeatures read_features(std::string_view text);

}  // namespace wristml::csv
