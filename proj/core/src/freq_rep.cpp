// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/freq_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qspec/error.hpp"
#include "qspec/fft.hpp"
#include "qspec/parallel.hpp"
#include "qspec/qreg.hpp"

namespace qspec {
namespace {

// Above this many (frequency x observation) products the clipped transform
// switches from direct summation to FFTs.
constexpr std::size_t kDirectDftLimit = std::size_t{1} << 22;
constexpr double kRankTolerance = 1e-12;

// exp(-2 pi i m / n), with tw[n - m] = conj(tw[m]) and the quarter turns exact.
std::vector<Complex> twiddles(std::size_t n) {
  std::vector<Complex> tw(n);
  for (std::size_t m = 0; 2 * m <= n; ++m) {
    tw[m] = std::polar(1.0, -two_pi * static_cast<double>(m) / static_cast<double>(n));
    if (m > 0) tw[n - m] = std::conj(tw[m]);
  }
  if (n % 2 == 0) tw[n / 2] = Complex(-1.0, 0.0);
  if (n % 4 == 0) {
    tw[n / 4] = Complex(0.0, -1.0);
    tw[3 * n / 4] = Complex(0.0, 1.0);
  }
  return tw;
}

// The transform of a real series is real at omega = 0 and omega = pi.
void clear_real_rows(ComplexLattice3& out, std::size_t n, std::size_t K, std::size_t b) {
  for (std::size_t k = 0; k < K; ++k) {
    out(0, k, b) = Complex(out(0, k, b).real(), 0.0);
    if (n % 2 == 0) out(n / 2, k, b) = Complex(out(n / 2, k, b).real(), 0.0);
  }
}

// Series used for slab b: the data for b = 0, otherwise an MBB resample.
TimeSeries replicate_series(const TimeSeries& y, const std::optional<BootSpec>& boot,
                            std::size_t b) {
  if (b == 0) return y;
  const RandomStream master(boot->seed);
  return y.resample(mbb_replicate(y.size(), boot->block_length, master.split(b - 1)));
}

// For each t, the first level index whose indicator is 1 (levels.size() if none).
std::vector<std::size_t> first_active_level(const TimeSeries& y, std::span<const double> levels,
                                            bool rank_based) {
  const std::size_t n = y.size();
  std::vector<double> thresholds(levels.size());
  std::vector<double> score(n);
  if (rank_based) {
    for (std::size_t k = 0; k < levels.size(); ++k) {
      thresholds[k] = static_cast<double>(n) * levels[k] + kRankTolerance;
    }
    const auto ranks = empirical_ranks(y.observations());
    for (std::size_t t = 0; t < n; ++t) score[t] = static_cast<double>(ranks[t]);
  } else {
    std::copy(levels.begin(), levels.end(), thresholds.begin());
    std::copy(y.begin(), y.end(), score.begin());
  }
  std::vector<std::size_t> first(n);
  for (std::size_t t = 0; t < n; ++t) {
    first[t] = static_cast<std::size_t>(
        std::lower_bound(thresholds.begin(), thresholds.end(), score[t]) - thresholds.begin());
  }
  return first;
}

void clipped_slab(const TimeSeries& y, std::span<const double> levels, bool rank_based,
                  std::span<const Complex> tw, ComplexLattice3& out, std::size_t b) {
  const std::size_t n = y.size();
  const std::size_t J = n / 2 + 1;
  const std::size_t K = levels.size();
  const auto first = first_active_level(y, levels, rank_based);

  if (J * n <= kDirectDftLimit) {
    // Indicators are nested in the level, so each observation contributes to
    // one increment bucket and the per-level sums are cumulative.
    std::vector<Complex> acc(K + 1);
    for (std::size_t j = 0; j < J; ++j) {
      std::fill(acc.begin(), acc.end(), Complex{});
      std::size_t idx = 0;
      for (std::size_t t = 0; t < n; ++t) {
        acc[first[t]] += tw[idx];
        idx += j;
        if (idx >= n) idx -= n;
      }
      Complex running{};
      for (std::size_t k = 0; k < K; ++k) {
        running += acc[k];
        out(j, k, b) = running;
      }
    }
    clear_real_rows(out, n, K, b);
    return;
  }

  std::vector<Complex> x(n);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < n; ++t) x[t] = first[t] <= k ? 1.0 : 0.0;
    const auto spectrum = fft(x);
    for (std::size_t j = 0; j < J; ++j) out(j, k, b) = spectrum[j];
  }
  clear_real_rows(out, n, K, b);
}

std::vector<double> regression_responses(const TimeSeries& y, bool rank_based) {
  const std::size_t n = y.size();
  std::vector<double> resp(n);
  if (rank_based) {
    const auto ranks = empirical_ranks(y.observations());
    for (std::size_t t = 0; t < n; ++t) resp[t] = static_cast<double>(ranks[t]);
  } else {
    for (std::size_t t = 0; t < n; ++t) resp[t] = static_cast<double>(n) * y[t];
  }
  return resp;
}

// Fit at grid position s in [0, n).
HarmonicFit harmonic_fit(std::span<const double> responses, double tau, std::size_t s) {
  const std::size_t n = responses.size();
  if (s == 0) {
    const std::vector<double> ones(n, 1.0);
    const auto fit = fit_quantile_regression(ones, 1, responses, tau);
    const double count = std::floor(static_cast<double>(n) * tau + kRankTolerance);
    return {fit.coefficients[0], Complex(count, 0.0), fit.objective};
  }
  if (2 * s == n) {
    std::vector<double> design(2 * n);
    for (std::size_t t = 0; t < n; ++t) {
      design[2 * t] = 1.0;
      design[2 * t + 1] = t % 2 == 0 ? 1.0 : -1.0;
    }
    const auto fit = fit_quantile_regression(design, 2, responses, tau);
    return {fit.coefficients[0], Complex(fit.coefficients[1], 0.0), fit.objective};
  }
  std::vector<double> design(3 * n);
  std::size_t idx = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double angle = two_pi * static_cast<double>(idx) / static_cast<double>(n);
    design[3 * t] = 1.0;
    design[3 * t + 1] = 2.0 * std::cos(angle);
    design[3 * t + 2] = -2.0 * std::sin(angle);
    idx += s;
    if (idx >= n) idx -= n;
  }
  const auto fit = fit_quantile_regression(design, 3, responses, tau);
  return {fit.coefficients[0], Complex(fit.coefficients[1], fit.coefficients[2]), fit.objective};
}

std::string fit_context(double tau, std::size_t j, std::size_t n, std::size_t b) {
  return "tau=" + std::to_string(tau) + ", omega=" +
         std::to_string(fourier_frequency(static_cast<std::int64_t>(j), n)) +
         ", replicate=" + std::to_string(b);
}

}  // namespace

FreqRep::FreqRep(FreqRepKind kind, TimeSeries source, std::vector<double> levels, bool rank_based,
                 std::optional<BootSpec> boot, ComplexLattice3 values)
    : kind_(kind),
      source_(std::move(source)),
      levels_(std::move(levels)),
      rank_based_(rank_based),
      boot_(boot),
      values_(std::move(values)) {
  const auto& e = values_.extents();
  const std::size_t slabs = boot_ ? boot_->replicates + 1 : 1;
  if (e[0] != source_.size() / 2 + 1 || e[1] != levels_.size() || e[2] != slabs) {
    throw Error(ErrorCode::invalid_argument, "frequency representation lattice has wrong shape");
  }
}

ComplexLattice3 FreqRep::get_values(std::span<const double> frequencies,
                                    std::span<const double> levels) const {
  const auto ks = level_indices(levels_, levels);
  ComplexLattice3 out({frequencies.size(), ks.size(), replicate_slabs()});
  for (std::size_t j = 0; j < frequencies.size(); ++j) {
    const FoldedFrequency f = fold_frequency(frequencies[j], n());
    for (std::size_t k = 0; k < ks.size(); ++k) {
      for (std::size_t b = 0; b < replicate_slabs(); ++b) {
        const Complex v = values_(f.index, ks[k], b);
        out(j, k, b) = f.conjugate ? std::conj(v) : v;
      }
    }
  }
  return out;
}

std::vector<std::size_t> empirical_ranks(std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  std::vector<std::size_t> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + 1;
    while (end < n && y[order[end]] == y[order[i]]) ++end;
    for (std::size_t m = i; m < end; ++m) ranks[order[m]] = end;
    i = end;
  }
  return ranks;
}

FreqRep clipped_ft(const TimeSeries& y, std::vector<double> levels, bool rank_based,
                   std::optional<BootSpec> boot) {
  validate_levels(levels, rank_based ? LevelDomain::closed_unit : LevelDomain::real_line);
  if (boot) validate_boot_spec(*boot, y.size());
  const std::size_t n = y.size();
  const std::size_t slabs = boot ? boot->replicates + 1 : 1;
  ComplexLattice3 values({n / 2 + 1, levels.size(), slabs});
  const auto tw = twiddles(n);
  parallel_for(slabs, [&](std::size_t b) {
    clipped_slab(replicate_series(y, boot, b), levels, rank_based, tw, values, b);
  });
  return FreqRep(FreqRepKind::clipped, y, std::move(levels), rank_based, boot, std::move(values));
}

HarmonicFit qreg_fit(const TimeSeries& y, double tau, double omega, bool rank_based) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::level_out_of_range, "quantile level must lie in (0,1)");
  }
  const std::size_t s = grid_position(omega, y.size());
  return harmonic_fit(regression_responses(y, rank_based), tau, s);
}

FreqRep qreg_estimator(const TimeSeries& y, std::vector<double> levels, bool rank_based,
                       std::optional<BootSpec> boot) {
  validate_levels(levels, LevelDomain::open_unit);
  if (boot) validate_boot_spec(*boot, y.size());
  const std::size_t n = y.size();
  const std::size_t J = n / 2 + 1;
  const std::size_t slabs = boot ? boot->replicates + 1 : 1;

  std::vector<std::vector<double>> responses(slabs);
  parallel_for(slabs, [&](std::size_t b) {
    responses[b] = regression_responses(replicate_series(y, boot, b), rank_based);
  });

  ComplexLattice3 values({J, levels.size(), slabs});
  parallel_for(slabs * J, [&](std::size_t task) {
    const std::size_t b = task / J;
    const std::size_t j = task % J;
    for (std::size_t k = 0; k < levels.size(); ++k) {
      try {
        values(j, k, b) = harmonic_fit(responses[b], levels[k], j).coefficient;
      } catch (const SolverNotConverged& e) {
        throw SolverNotConverged(e.duality_gap(), e.iterations(), fit_context(levels[k], j, n, b));
      } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (" + fit_context(levels[k], j, n, b) + ")");
      }
    }
  });
  return FreqRep(FreqRepKind::qreg, y, std::move(levels), rank_based, boot, std::move(values));
}

}  // namespace qspec
