#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace uplink::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kNumericFailure = 3,
    kValidationFailure = 4,
};

/// Runs the command line `args` (without the program name). Tables go to `out`
/// when no --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uplink::cli
