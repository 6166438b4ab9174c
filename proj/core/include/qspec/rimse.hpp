// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "qspec/models.hpp"
#include "qspec/ndarray.hpp"
#include "qspec/qspec_quantity.hpp"
#include "qspec/weight.hpp"

namespace qspec {

/// Estimators compared in the simulation study, in lattice order.
enum class StudyEstimator : std::size_t { cr = 0, lp = 1, scr = 2, slp = 3 };
inline constexpr std::array<std::string_view, 4> study_estimator_names = {"CR", "LP", "sCR", "sLP"};

/// Estimates [estimator][replication][j][k1][k2] against truth [j][k1][k2].
/// Returns sqrt(mean over (j, replication) |estimate - truth|^2) as
/// [k1][k2][estimator]. Throws GridMismatch.
[[nodiscard]] NdArray<double, 3> rimse(const NdArray<Complex, 5>& estimates, const ComplexLattice3& truth);

struct RimseStudyConfig {
  ModelSpec model;
  std::size_t N = 128;
  std::size_t R = 500;
  Kernel kernel = Kernel::epanechnikov;
  double bw = 0.3;
  std::vector<double> levels{0.25, 0.5, 0.75};
  std::uint64_t seed = 0;
  /// Study frequencies; default 2 pi s / 32 for s = 1..16.
  std::vector<double> frequencies;
  /// Test hook: may overwrite the estimates [estimator][j][k1][k2] of one replication.
  std::function<void(std::size_t, NdArray<Complex, 4>&)> estimate_override;
};

[[nodiscard]] std::vector<double> default_study_frequencies();

struct RimseStudyResult {
  std::vector<double> frequencies;
  std::vector<double> levels;
  NdArray<Complex, 5> errors;  ///< [estimator][replication][j][k1][k2], estimate - truth
  NdArray<double, 3> rimse;    ///< [k1][k2][estimator]
};

/// Runs the study. Replication r draws from RandomStream(seed).split(r).
/// The truth must cover the study frequencies and levels (NonFourierFrequency
/// or UnknownLevel otherwise).
[[nodiscard]] RimseStudyResult run_rimse_study(const RimseStudyConfig& config, const QSpecQuantity& truth);

}  // namespace qspec
