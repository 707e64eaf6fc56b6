#pragma once

#include <iosfwd>

#include <nlohmann/json.hpp>

namespace spinlink::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // reproduce-paper found a failing criterion
  kExitInvalidConfig = 2,
  kExitIo = 3,
  kExitNumeric = 4,
};

/// A run is described entirely by a JSON config:
/// {"command": "compute-params", "chain": {"preset": 20}, "out": "p.csv", ...}.
/// Command-line flags are translated into this form before execution, and
/// every artifact carries the config in its header.
int execute(const nlohmann::json& config, std::ostream& out, std::ostream& err);

// Parses flags (or --config FILE) and calls execute.
int main(int argc, char** argv);

}  // namespace spinlink::cli
