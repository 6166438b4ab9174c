// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/error.hpp"

namespace qspec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::non_fourier_frequency: return "NonFourierFrequency";
    case ErrorCode::unknown_level: return "UnknownLevel";
    case ErrorCode::level_out_of_range: return "LevelOutOfRange";
    case ErrorCode::degenerate_design: return "DegenerateDesign";
    case ErrorCode::solver_not_converged: return "SolverNotConverged";
    case ErrorCode::invalid_bandwidth: return "InvalidBandwidth";
    case ErrorCode::grid_mismatch: return "GridMismatch";
    case ErrorCode::invalid_block_length: return "InvalidBlockLength";
    case ErrorCode::weight_kind_mismatch: return "WeightKindMismatch";
    case ErrorCode::insufficient_replicates: return "InsufficientReplicates";
    case ErrorCode::corrupt_state: return "CorruptState";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

SolverNotConverged::SolverNotConverged(double duality_gap, int iterations,
                                       const std::string& context)
    : Error(ErrorCode::solver_not_converged,
            "duality gap " + std::to_string(duality_gap) + " after " +
                std::to_string(iterations) + " iterations" +
                (context.empty() ? std::string() : " (" + context + ")")),
      gap_(duality_gap),
      iterations_(iterations) {}

}  // namespace qspec
