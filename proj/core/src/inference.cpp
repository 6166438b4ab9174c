// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qspec/error.hpp"
#include "qspec/grid.hpp"
#include "qspec/normal.hpp"
#include "qspec/parallel.hpp"

namespace qspec {
namespace {

const KernelWeight& require_kernel(const SmoothedPG& spg) {
  const auto* kw = std::get_if<KernelWeight>(&spg.weight());
  if (kw == nullptr) {
    throw Error(ErrorCode::weight_kind_mismatch, "confidence bands need a kernel-smoothed estimator");
  }
  return *kw;
}

std::pair<double, double> sd_at(const ComplexLattice4& v, std::size_t j, std::size_t k1, std::size_t k2,
                                double nu) {
  const double f11 = v(j, k1, k1, 0).real();
  const double f22 = v(j, k2, k2, 0).real();
  const Complex f12 = v(j, k1, k2, 0);
  const double re2 = f12.real() * f12.real();
  const double im2 = f12.imag() * f12.imag();
  const double var_re = 0.5 * nu * std::max(0.0, f11 * f22 + re2 - im2);
  const double var_im = 0.5 * nu * std::max(0.0, f11 * f22 - re2 + im2);
  return {std::sqrt(var_re), std::sqrt(var_im)};
}

}  // namespace

std::string_view to_string(CiMethod method) noexcept {
  return method == CiMethod::normal ? "normal" : "boot.full";
}

CiMethod parse_ci_method(std::string_view name) {
  if (name == "normal") return CiMethod::normal;
  if (name == "boot.full" || name == "boot_full") return CiMethod::boot_full;
  throw Error(ErrorCode::invalid_argument, "unknown confidence band method '" + std::string(name) + "'");
}

double variance_factor(const KernelWeight& weight, double omega) {
  const std::size_t n = weight.n();
  const auto j = grid_multiple(omega, n);
  double sum = 0.0;
  for (std::size_t s = 1; s < n; ++s) {
    const double w = weight.at_offset(j - static_cast<std::int64_t>(s));
    sum += w * w;
  }
  const double step = two_pi / static_cast<double>(n);
  return step * step * sum;
}

std::pair<double, double> sd_naive(const SmoothedPG& spg, double omega, std::size_t k1, std::size_t k2) {
  const KernelWeight& kw = require_kernel(spg);
  if (!spg.same_levels()) {
    throw Error(ErrorCode::invalid_argument, "plug-in variance needs identical level sets");
  }
  const std::size_t K = spg.levels1().size();
  if (k1 >= K || k2 >= K) throw Error(ErrorCode::unknown_level, "level index out of range");
  const FoldedFrequency f = fold_frequency(omega, spg.n());
  auto [sd_re, sd_im] = sd_at(spg.values(), f.index, k1, k2, variance_factor(kw, omega));
  return {sd_re, sd_im};
}

double linear_quantile(std::span<double> sample, double p) {
  if (sample.empty()) throw Error(ErrorCode::invalid_argument, "empty sample");
  std::sort(sample.begin(), sample.end());
  const double h = static_cast<double>(sample.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

ConfidenceBand confidence_band(const SmoothedPG& spg, double alpha, CiMethod method) {
  const KernelWeight& kw = require_kernel(spg);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::invalid_argument, "alpha must lie in (0,1]");
  const auto& v = spg.values();
  const std::size_t J = v.extent(0);
  const std::size_t K1 = v.extent(1);
  const std::size_t K2 = v.extent(2);
  const std::size_t B = spg.bootstrap_replicates();
  if (method == CiMethod::boot_full && B < min_boot_replicates) {
    throw Error(ErrorCode::insufficient_replicates,
                "boot.full needs at least 20 bootstrap replicates, got " + std::to_string(B));
  }
  if (method == CiMethod::normal && !spg.same_levels()) {
    throw Error(ErrorCode::invalid_argument, "plug-in variance needs identical level sets");
  }

  ConfidenceBand band{method, alpha, ComplexLattice3({J, K1, K2}), ComplexLattice3({J, K1, K2})};
  const auto grid = spg.grid_indices();
  const double z = alpha >= 1.0 ? 0.0 : normal_quantile(1.0 - alpha / 2.0);

  parallel_for(J, [&](std::size_t j) {
    if (method == CiMethod::normal) {
      const double nu = variance_factor(kw, fourier_frequency(static_cast<std::int64_t>(grid[j]), spg.n()));
      for (std::size_t k1 = 0; k1 < K1; ++k1) {
        for (std::size_t k2 = 0; k2 < K2; ++k2) {
          const auto [sd_re, sd_im] = sd_at(v, j, k1, k2, nu);
          const Complex est = v(j, k1, k2, 0);
          band.lower(j, k1, k2) = Complex(est.real() - z * sd_re, est.imag() - z * sd_im);
          band.upper(j, k1, k2) = Complex(est.real() + z * sd_re, est.imag() + z * sd_im);
        }
      }
      return;
    }
    std::vector<double> re(B);
    std::vector<double> im(B);
    for (std::size_t k1 = 0; k1 < K1; ++k1) {
      for (std::size_t k2 = 0; k2 < K2; ++k2) {
        for (std::size_t b = 0; b < B; ++b) {
          re[b] = v(j, k1, k2, b + 1).real();
          im[b] = v(j, k1, k2, b + 1).imag();
        }
        const double lo_re = linear_quantile(re, alpha / 2.0);
        const double hi_re = linear_quantile(re, 1.0 - alpha / 2.0);
        const double lo_im = linear_quantile(im, alpha / 2.0);
        const double hi_im = linear_quantile(im, 1.0 - alpha / 2.0);
        band.lower(j, k1, k2) = Complex(lo_re, lo_im);
        band.upper(j, k1, k2) = Complex(hi_re, hi_im);
      }
    }
  });
  return band;
}

}  // namespace qspec
