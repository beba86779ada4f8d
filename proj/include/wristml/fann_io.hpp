#pragma once

// Text model format modeled on the FANN native layout. The grammar is
// documented in docs/model_format.md.

#include "wristml/fixed_point.hpp"
#include "wristml/network.hpp"

#include <string>
#include <string_view>

namespace wristml {

inline constexpr std::string_view kFloatModelTag = "WRISTML_FLO_1.0";
inline constexpr std::string_view kFixedModelTag = "WRISTML_FIX_1.0";

enum class ModelKind { floating, fixed };

// Inspects the version tag on the first line. Throws ParseError.
ModelKind detect_model_kind(std::string_view text);

// Weights are written in shortest round-trip form, so load(save(net)) == net.
std::string save_fann(const NetworkModel& net);

// Throws ParseError (with a 1-based line number) on malformed input.
NetworkModel load_fann(std::string_view text);

std::string save_fann_fixed(const FixedPointNet& net);
FixedPointNet load_fann_fixed(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace wristml
