// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qspec::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_malformed_input = 2,
  exit_invalid_levels = 3,
  exit_weight_mismatch = 4,
  exit_state_mismatch = 5,
};

/// Runs the command line `args` (args[0] is the program name). Documents go
/// to `out` when no --out file is given; diagnostics go to `err`.
[[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qspec::cli
