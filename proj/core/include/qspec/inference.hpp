// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qspec/ndarray.hpp"
#include "qspec/smoothed_pg.hpp"

namespace qspec {

enum class CiMethod { normal, boot_full };

[[nodiscard]] std::string_view to_string(CiMethod method) noexcept;
[[nodiscard]] CiMethod parse_ci_method(std::string_view name);

inline constexpr std::size_t min_boot_replicates = 20;

/// Pointwise bands for the point estimate (slab b = 0). Real parts of
/// lower/upper bound Re, imaginary parts bound Im. Indexed [j][k1][k2] on the
/// frequencies of the smoothed estimator.
struct ConfidenceBand {
  CiMethod method = CiMethod::normal;
  double alpha = 0.1;
  ComplexLattice3 lower;
  ComplexLattice3 upper;
};

/// nu(omega) = (2 pi / n)^2 sum_{s=1}^{n-1} W_n(omega - 2 pi s / n)^2.
[[nodiscard]] double variance_factor(const KernelWeight& weight, double omega);

/// Plug-in standard deviations (sd of Re, sd of Im) of the smoothed estimate
/// at omega and level indices (k1, k2). Throws WeightKindMismatch.
[[nodiscard]] std::pair<double, double> sd_naive(const SmoothedPG& spg, double omega, std::size_t k1,
                                                 std::size_t k2);

/// Sample quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7). Sorts the input.
[[nodiscard]] double linear_quantile(std::span<double> sample, double p);

/// Throws WeightKindMismatch for step weights and InsufficientReplicates when
/// boot_full has fewer than 20 replicates.
[[nodiscard]] ConfidenceBand confidence_band(const SmoothedPG& spg, double alpha, CiMethod method);

}  // namespace qspec
