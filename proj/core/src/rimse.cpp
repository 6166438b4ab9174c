// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/rimse.hpp"

#include <cmath>
#include <numbers>

#include "qspec/error.hpp"
#include "qspec/freq_rep.hpp"
#include "qspec/parallel.hpp"
#include "qspec/quantile_pg.hpp"
#include "qspec/smoothed_pg.hpp"

namespace qspec {

NdArray<double, 3> rimse(const NdArray<Complex, 5>& estimates, const ComplexLattice3& truth) {
  const auto& e = estimates.extents();
  const auto& t = truth.extents();
  if (e[2] != t[0] || e[3] != t[1] || e[4] != t[2]) {
    throw Error(ErrorCode::grid_mismatch, "estimate and truth lattices differ in shape");
  }
  const std::size_t E = e[0];
  const std::size_t R = e[1];
  const std::size_t J = e[2];
  const std::size_t K1 = e[3];
  const std::size_t K2 = e[4];
  if (R == 0 || J == 0) throw Error(ErrorCode::invalid_argument, "no estimates to compare");
  NdArray<double, 3> out({K1, K2, E});
  for (std::size_t k1 = 0; k1 < K1; ++k1) {
    for (std::size_t k2 = 0; k2 < K2; ++k2) {
      for (std::size_t est = 0; est < E; ++est) {
        double sum = 0.0;
        for (std::size_t r = 0; r < R; ++r) {
          for (std::size_t j = 0; j < J; ++j) sum += std::norm(estimates(est, r, j, k1, k2) - truth(j, k1, k2));
        }
        out(k1, k2, est) = std::sqrt(sum / static_cast<double>(R * J));
      }
    }
  }
  return out;
}

std::vector<double> default_study_frequencies() {
  std::vector<double> f;
  for (int s = 1; s <= 16; ++s) f.push_back(2.0 * std::numbers::pi * s / 32.0);
  return f;
}

RimseStudyResult run_rimse_study(const RimseStudyConfig& config, const QSpecQuantity& truth_q) {
  if (config.R == 0) throw Error(ErrorCode::invalid_argument, "at least one replication is required");
  validate_levels(config.levels, LevelDomain::open_unit);
  const std::vector<double> freqs =
      config.frequencies.empty() ? default_study_frequencies() : config.frequencies;
  for (const double w : freqs) (void)grid_multiple(w, config.N);

  const auto truth4 = truth_q.get_values(freqs, config.levels, config.levels);
  const std::size_t J = freqs.size();
  const std::size_t K = config.levels.size();
  ComplexLattice3 truth({J, K, K});
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t k1 = 0; k1 < K; ++k1) {
      for (std::size_t k2 = 0; k2 < K; ++k2) truth(j, k1, k2) = truth4(j, k1, k2, 0);
    }
  }

  const KernelWeight weight(config.kernel, config.bw, config.N);
  constexpr std::size_t E = study_estimator_names.size();
  NdArray<Complex, 5> estimates({E, config.R, J, K, K});

  parallel_for(config.R, [&](std::size_t r) {
    RandomStream stream = RandomStream(config.seed).split(r);
    const TimeSeries y = config.model.generate(config.N, stream);
    const auto cr = std::make_shared<const QuantilePG>(quantile_pg(clipped_ft(y, config.levels, true)));
    const auto lp = std::make_shared<const QuantilePG>(quantile_pg(qreg_estimator(y, config.levels, true)));
    const std::array<QSpecQuantity, E> fits = {*cr, *lp, smooth_pg(cr, weight), smooth_pg(lp, weight)};
    NdArray<Complex, 4> est({E, J, K, K});
    for (std::size_t e = 0; e < E; ++e) {
      const auto v = fits[e].get_values(freqs, config.levels, config.levels);
      for (std::size_t j = 0; j < J; ++j) {
        for (std::size_t k1 = 0; k1 < K; ++k1) {
          for (std::size_t k2 = 0; k2 < K; ++k2) est(e, j, k1, k2) = v(j, k1, k2, 0);
        }
      }
    }
    if (config.estimate_override) config.estimate_override(r, est);
    for (std::size_t e = 0; e < E; ++e) {
      for (std::size_t j = 0; j < J; ++j) {
        for (std::size_t k1 = 0; k1 < K; ++k1) {
          for (std::size_t k2 = 0; k2 < K; ++k2) estimates(e, r, j, k1, k2) = est(e, j, k1, k2);
        }
      }
    }
  });

  RimseStudyResult result;
  result.frequencies = freqs;
  result.levels = config.levels;
  result.rimse = rimse(estimates, truth);
  result.errors = std::move(estimates);
  for (std::size_t e = 0; e < E; ++e) {
    for (std::size_t r = 0; r < config.R; ++r) {
      for (std::size_t j = 0; j < J; ++j) {
        for (std::size_t k1 = 0; k1 < K; ++k1) {
          for (std::size_t k2 = 0; k2 < K; ++k2) result.errors(e, r, j, k1, k2) -= truth(j, k1, k2);
        }
      }
    }
  }
  return result;
}

}  // namespace qspec
