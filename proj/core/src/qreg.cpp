// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/qreg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "qspec/error.hpp"

namespace qspec {
namespace {

// Cholesky solve of a small symmetric positive definite system. Returns
// nullopt when the matrix is not numerically positive definite.
std::optional<std::vector<double>> solve_spd(std::vector<double> m, std::vector<double> rhs,
                                             std::size_t p) {
  double scale = 0.0;
  for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, std::abs(m[i * p + i]));
  if (!(scale > 0.0) || !std::isfinite(scale)) return std::nullopt;
  for (std::size_t j = 0; j < p; ++j) {
    double d = m[j * p + j];
    for (std::size_t k = 0; k < j; ++k) d -= m[j * p + k] * m[j * p + k];
    if (!(d > scale * 1e-14)) return std::nullopt;
    const double l = std::sqrt(d);
    m[j * p + j] = l;
    for (std::size_t i = j + 1; i < p; ++i) {
      double v = m[i * p + j];
      for (std::size_t k = 0; k < j; ++k) v -= m[i * p + k] * m[j * p + k];
      m[i * p + j] = v / l;
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    double v = rhs[i];
    for (std::size_t k = 0; k < i; ++k) v -= m[i * p + k] * rhs[k];
    rhs[i] = v / m[i * p + i];
  }
  for (std::size_t i = p; i-- > 0;) {
    double v = rhs[i];
    for (std::size_t k = i + 1; k < p; ++k) v -= m[k * p + i] * rhs[k];
    rhs[i] = v / m[i * p + i];
  }
  return rhs;
}

// Gaussian elimination with partial pivoting for the square vertex system.
std::optional<std::vector<double>> solve_square(std::vector<double> a, std::vector<double> b,
                                                std::size_t p) {
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r) {
      if (std::abs(a[r * p + c]) > std::abs(a[piv * p + c])) piv = r;
    }
    if (std::abs(a[piv * p + c]) < 1e-13) return std::nullopt;
    if (piv != c) {
      for (std::size_t k = 0; k < p; ++k) std::swap(a[c * p + k], a[piv * p + k]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < p; ++r) {
      const double f = a[r * p + c] / a[c * p + c];
      for (std::size_t k = c; k < p; ++k) a[r * p + k] -= f * a[c * p + k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t r = p; r-- > 0;) {
    double v = b[r];
    for (std::size_t k = r + 1; k < p; ++k) v -= a[r * p + k] * b[k];
    b[r] = v / a[r * p + r];
  }
  return b;
}

double max_step(std::span<const double> v, std::span<const double> dv, double sign = 1.0) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = sign * dv[i];
    if (d < 0.0) alpha = std::min(alpha, -v[i] / d);
  }
  return alpha;
}

struct Direction {
  std::vector<double> dx, dy, dz, dw;
};

}  // namespace

double check_loss(double residual, double tau) noexcept {
  return residual * (tau - (residual <= 0.0 ? 1.0 : 0.0));
}

double check_objective(std::span<const double> design, std::size_t columns,
                       std::span<const double> response, std::span<const double> coefficients,
                       double tau) {
  double total = 0.0;
  for (std::size_t i = 0; i < response.size(); ++i) {
    double fitted = 0.0;
    for (std::size_t k = 0; k < columns; ++k) fitted += design[i * columns + k] * coefficients[k];
    total += check_loss(response[i] - fitted, tau);
  }
  return total;
}

QuantileRegressionFit fit_quantile_regression(std::span<const double> design, std::size_t p,
                                              std::span<const double> y, double tau) {
  const std::size_t n = y.size();
  if (p == 0 || design.size() != n * p) {
    throw Error(ErrorCode::invalid_argument, "design matrix does not match response length");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::level_out_of_range, "quantile level must lie in (0,1)");
  }
  if (n < p) throw Error(ErrorCode::degenerate_design, "fewer observations than coefficients");

  auto row = [&](std::size_t i) { return design.subspan(i * p, p); };
  auto dot_row = [&](std::size_t i, std::span<const double> v) {
    double s = 0.0;
    for (std::size_t k = 0; k < p; ++k) s += design[i * p + k] * v[k];
    return s;
  };

  // Least-squares start for the coefficients.
  std::vector<double> xtx(p * p, 0.0), xty(p, 0.0), b(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = row(i);
    for (std::size_t a = 0; a < p; ++a) {
      xty[a] += xi[a] * y[i];
      b[a] += (1.0 - tau) * xi[a];
      for (std::size_t c = 0; c < p; ++c) xtx[a * p + c] += xi[a] * xi[c];
    }
  }
  const auto beta_ls = solve_spd(xtx, xty, p);
  if (!beta_ls) throw Error(ErrorCode::degenerate_design, "design matrix is rank deficient");

  // LP in bounded form: min c'x s.t. Ax = b, 0 <= x <= 1, with c = -y, A = X'.
  // Dual: A'v + z - w = c, z, w >= 0; the regression coefficients are -v.
  std::vector<double> x(n, 1.0 - tau), s(n, tau), z(n), w(n), v(p);
  for (std::size_t k = 0; k < p; ++k) v[k] = -(*beta_ls)[k];
  {
    std::vector<double> r(n);
    double mean_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = -y[i] - dot_row(i, v);
      mean_abs += std::abs(r[i]);
    }
    mean_abs /= static_cast<double>(n);
    double ymax = 0.0;
    for (double yi : y) ymax = std::max(ymax, std::abs(yi));
    const double delta = mean_abs > 1e-12 * (1.0 + ymax) ? mean_abs : 1.0 + 1e-3 * ymax;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = std::max(r[i], 0.0) + delta;
      w[i] = std::max(-r[i], 0.0) + delta;
    }
  }

  std::vector<double> rp(p), rd(n);
  auto residuals = [&] {
    for (std::size_t k = 0; k < p; ++k) rp[k] = b[k];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < p; ++k) rp[k] -= design[i * p + k] * x[i];
      rd[i] = -y[i] - dot_row(i, v) - z[i] + w[i];
    }
  };

  std::vector<double> theta(n), rho(n);
  auto solve_newton = [&](std::span<const double> rxz, std::span<const double> rsw) {
    Direction d{std::vector<double>(n), std::vector<double>(p), std::vector<double>(n),
                std::vector<double>(n)};
    std::vector<double> m(p * p, 0.0), rhs(rp);
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] = 1.0 / (z[i] / x[i] + w[i] / s[i]);
      rho[i] = rd[i] - rxz[i] / x[i] + rsw[i] / s[i];
      const auto xi = row(i);
      for (std::size_t a = 0; a < p; ++a) {
        rhs[a] += xi[a] * theta[i] * rho[i];
        for (std::size_t c = 0; c <= a; ++c) m[a * p + c] += theta[i] * xi[a] * xi[c];
      }
    }
    double ridge = 0.0;
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t c = 0; c < a; ++c) m[c * p + a] = m[a * p + c];
      ridge = std::max(ridge, m[a * p + a]);
    }
    auto dy = solve_spd(m, rhs, p);
    for (double eps = 1e-14; !dy && eps < 1e-4; eps *= 100.0) {
      auto mr = m;
      for (std::size_t a = 0; a < p; ++a) mr[a * p + a] += eps * ridge;
      dy = solve_spd(mr, rhs, p);
    }
    if (!dy) throw Error(ErrorCode::degenerate_design, "normal equations became singular");
    d.dy = *dy;
    for (std::size_t i = 0; i < n; ++i) {
      d.dx[i] = theta[i] * (dot_row(i, d.dy) - rho[i]);
      d.dz[i] = (rxz[i] - z[i] * d.dx[i]) / x[i];
      d.dw[i] = (rsw[i] + w[i] * d.dx[i]) / s[i];
    }
    return d;
  };

  QuantileRegressionFit fit;
  fit.coefficients.assign(p, 0.0);
  std::vector<double> rxz(n), rsw(n);
  bool converged = false;
  int iter = 0;
  double gap = 0.0;
  for (;; ++iter) {
    residuals();
    gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += x[i] * z[i] + s[i] * w[i];
    for (std::size_t k = 0; k < p; ++k) fit.coefficients[k] = -v[k];
    fit.objective = check_objective(design, p, y, fit.coefficients, tau);
    if (gap <= qreg_gap_tolerance * (1.0 + std::abs(fit.objective))) {
      converged = true;
      break;
    }
    if (iter >= qreg_max_iterations) break;

    const double mu = gap / (2.0 * static_cast<double>(n));

    // Predictor (affine scaling) direction.
    for (std::size_t i = 0; i < n; ++i) {
      rxz[i] = -x[i] * z[i];
      rsw[i] = -s[i] * w[i];
    }
    const Direction aff = solve_newton(rxz, rsw);
    const double ap = std::min(1.0, std::min(max_step(x, aff.dx), max_step(s, aff.dx, -1.0)));
    const double ad = std::min(1.0, std::min(max_step(z, aff.dz), max_step(w, aff.dw)));
    double mu_aff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mu_aff += (x[i] + ap * aff.dx[i]) * (z[i] + ad * aff.dz[i]) +
                (s[i] - ap * aff.dx[i]) * (w[i] + ad * aff.dw[i]);
    }
    mu_aff /= 2.0 * static_cast<double>(n);
    const double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);

    // Corrector with centering.
    for (std::size_t i = 0; i < n; ++i) {
      rxz[i] = sigma * mu - x[i] * z[i] - aff.dx[i] * aff.dz[i];
      rsw[i] = sigma * mu - s[i] * w[i] + aff.dx[i] * aff.dw[i];
    }
    const Direction d = solve_newton(rxz, rsw);
    const double sp =
        std::min(1.0, 0.99995 * std::min(max_step(x, d.dx), max_step(s, d.dx, -1.0)));
    const double sd = std::min(1.0, 0.99995 * std::min(max_step(z, d.dz), max_step(w, d.dw)));
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += sp * d.dx[i];
      s[i] -= sp * d.dx[i];
      z[i] += sd * d.dz[i];
      w[i] += sd * d.dw[i];
    }
    for (std::size_t k = 0; k < p; ++k) v[k] += sd * d.dy[k];
  }
  fit.iterations = iter;
  fit.duality_gap = gap;
  if (!converged) throw SolverNotConverged(gap, iter);

  // Vertex refinement: interpolate the p observations closest to the fit.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> absres(n);
  for (std::size_t i = 0; i < n; ++i) absres[i] = std::abs(y[i] - dot_row(i, fit.coefficients));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t c) { return absres[a] < absres[c]; });
  std::vector<std::vector<double>> basis;
  std::vector<std::size_t> chosen;
  for (std::size_t i : order) {
    if (chosen.size() == p) break;
    const auto xi = row(i);
    std::vector<double> u(xi.begin(), xi.end());
    const double norm0 = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    for (const auto& q : basis) {
      const double proj = std::inner_product(u.begin(), u.end(), q.begin(), 0.0);
      for (std::size_t k = 0; k < p; ++k) u[k] -= proj * q[k];
    }
    const double norm = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    if (norm <= 1e-9 * norm0 || norm0 == 0.0) continue;
    for (double& e : u) e /= norm;
    basis.push_back(std::move(u));
    chosen.push_back(i);
  }
  if (chosen.size() == p) {
    std::vector<double> a(p * p), rhs(p);
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t k = 0; k < p; ++k) a[r * p + k] = design[chosen[r] * p + k];
      rhs[r] = y[chosen[r]];
    }
    if (auto vertex = solve_square(a, rhs, p)) {
      const double obj = check_objective(design, p, y, *vertex, tau);
      if (obj <= fit.objective) {
        fit.coefficients = std::move(*vertex);
        fit.objective = obj;
      }
    }
  }
  return fit;
}

}  // namespace qspec
