// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qspec/bootstrap.hpp"
#include "qspec/grid.hpp"
#include "qspec/ndarray.hpp"
#include "qspec/time_series.hpp"

namespace qspec {

enum class FreqRepKind {
  clipped,  ///< DFT of the clipped (indicator) series
  qreg,     ///< harmonic quantile-regression coefficient
};

/// Frequency representation values on the half Fourier grid, indexed [j][k][b].
/// Slab b = 0 comes from the data, b = 1..B from moving-blocks replicates.
class FreqRep {
 public:
  FreqRep(FreqRepKind kind, TimeSeries source, std::vector<double> levels, bool rank_based,
          std::optional<BootSpec> boot, ComplexLattice3 values);

  [[nodiscard]] FreqRepKind kind() const noexcept { return kind_; }
  [[nodiscard]] const TimeSeries& source() const noexcept { return source_; }
  [[nodiscard]] std::size_t n() const noexcept { return source_.size(); }
  [[nodiscard]] FourierGrid grid() const { return FourierGrid(n()); }
  [[nodiscard]] std::span<const double> levels() const noexcept { return levels_; }
  [[nodiscard]] bool is_rank_based() const noexcept { return rank_based_; }
  [[nodiscard]] const std::optional<BootSpec>& boot() const noexcept { return boot_; }
  [[nodiscard]] const ComplexLattice3& values() const noexcept { return values_; }
  [[nodiscard]] std::size_t replicate_slabs() const noexcept { return values_.extent(2); }

  /// Values at arbitrary Fourier frequencies, using d(omega + 2 pi) = d(omega)
  /// and d(2 pi - omega) = conj(d(omega)).
  [[nodiscard]] ComplexLattice3 get_values(std::span<const double> frequencies,
                                           std::span<const double> levels) const;

 private:
  FreqRepKind kind_;
  TimeSeries source_;
  std::vector<double> levels_;
  bool rank_based_;
  std::optional<BootSpec> boot_;
  ComplexLattice3 values_;
};

/// r_t = #{s : X_s <= X_t}; tied observations share their maximal rank.
[[nodiscard]] std::vector<std::size_t> empirical_ranks(std::span<const double> y);

/// Clipped Fourier transform d(omega) = sum_t I{X_t <= q} exp(-i omega t).
/// With rank_based the indicator is I{r_t <= n tau}, levels in [0, 1].
/// Throws LevelOutOfRange.
[[nodiscard]] FreqRep clipped_ft(const TimeSeries& y, std::vector<double> levels, bool rank_based,
                                 std::optional<BootSpec> boot = std::nullopt);

struct HarmonicFit {
  double intercept = 0.0;
  Complex coefficient;
  double objective = 0.0;
};

/// Harmonic quantile regression at a Fourier frequency.
///
/// Responses are the ranks r_t (rank_based) or n X_t. Away from multiples of
/// pi the design row is (1, 2cos(omega t), -2sin(omega t)); at odd multiples
/// of pi it is (1, cos(omega t)) and the coefficient is real. At multiples of
/// 2 pi the coefficient is the count floor(n tau) and the intercept is the
/// tau-quantile fit of the responses.
[[nodiscard]] HarmonicFit qreg_fit(const TimeSeries& y, double tau, double omega, bool rank_based);

/// Harmonic quantile-regression coefficients for every level, half-grid
/// frequency and replicate. Levels must lie in (0, 1).
[[nodiscard]] FreqRep qreg_estimator(const TimeSeries& y, std::vector<double> levels,
                                     bool rank_based, std::optional<BootSpec> boot = std::nullopt);

}  // namespace qspec
