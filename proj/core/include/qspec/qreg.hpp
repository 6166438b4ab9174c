// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qspec {

inline constexpr int qreg_max_iterations = 200;
/// Stopping rule: duality gap <= qreg_gap_tolerance * (1 + |objective|).
inline constexpr double qreg_gap_tolerance = 1e-10;

/// rho_tau(x) = x (tau - I{x <= 0}).
[[nodiscard]] double check_loss(double residual, double tau) noexcept;

/// sum_t rho_tau(y_t - x_t' beta) for a row-major n x p design.
[[nodiscard]] double check_objective(std::span<const double> design, std::size_t columns,
                                     std::span<const double> response,
                                     std::span<const double> coefficients, double tau);

struct QuantileRegressionFit {
  std::vector<double> coefficients;
  double objective = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
};

/// Minimizes sum_t rho_tau(y_t - x_t' beta).
///
/// Solves the dual linear program max y'a s.t. X'a = (1 - tau) X'1, 0 <= a <= 1
/// with a feasible-start primal-dual interior-point method (Mehrotra
/// predictor-corrector). The normal equations are p x p, so every iteration is
/// O(n p^2). On convergence the fit is snapped to the vertex interpolating the
/// p observations with smallest residuals whenever that vertex is at least as
/// good, which removes the residual interior-point slack.
///
/// Throws DegenerateDesign when n < p or X'X is singular, SolverNotConverged
/// when the iteration limit is reached.
[[nodiscard]] QuantileRegressionFit fit_quantile_regression(std::span<const double> design,
                                                            std::size_t columns,
                                                            std::span<const double> response,
                                                            double tau);

}  // namespace qspec
