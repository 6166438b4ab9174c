// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qspec {

enum class ErrorCode {
  invalid_argument,
  non_fourier_frequency,
  unknown_level,
  level_out_of_range,
  degenerate_design,
  solver_not_converged,
  invalid_bandwidth,
  grid_mismatch,
  invalid_block_length,
  weight_kind_mismatch,
  insufficient_replicates,
  corrupt_state,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown when the interior-point quantile regression exhausts its iteration
/// budget before the duality gap reaches tolerance.
class SolverNotConverged : public Error {
 public:
  SolverNotConverged(double duality_gap, int iterations, const std::string& context = {});

  [[nodiscard]] double duality_gap() const noexcept { return gap_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }

 private:
  double gap_;
  int iterations_;
};

}  // namespace qspec
