#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wristml::cli {

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kParseError = 2,     // malformed CSV / model / document
    kDataError = 3,      // not enough data, values out of range, divergence
    kShapeError = 4,     // model and data dimensions disagree
    kConfigError = 5,    // unknown names, missing files, bad arguments
};

// Runs one command line (args excludes the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wristml::cli
