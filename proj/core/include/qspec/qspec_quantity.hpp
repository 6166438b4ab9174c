// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qspec/ndarray.hpp"

namespace qspec {

/// How stored frequencies relate to the full frequency axis.
enum class FrequencyLayout {
  /// Values stored for 2*pi*j/n, j = 0..floor(n/2). Every other Fourier
  /// frequency is recovered through Q(omega + 2*pi) = Q(omega) and
  /// Q(2*pi - omega) = conj(Q(omega)).
  hermitian_half,
  /// Values stored for an explicit list of grid multiples 2*pi*j/n; lookups
  /// must hit one of them (no periodic extension). Used for cumulated spectra.
  explicit_grid,
};

/// Values Q_b(omega_j, level1_k1, level2_k2) on a lattice indexed
/// [j][k1][k2][b]; b = 0 is the point estimate, b = 1..B bootstrap replicates.
class QSpecQuantity {
 public:
  QSpecQuantity() = default;
  QSpecQuantity(std::size_t n, FrequencyLayout layout, std::vector<std::size_t> grid_indices,
                std::vector<double> levels1, std::vector<double> levels2, ComplexLattice4 values);

  /// Half-grid quantity with indices 0..floor(n/2).
  [[nodiscard]] static QSpecQuantity hermitian(std::size_t n, std::vector<double> levels1,
                                               std::vector<double> levels2, ComplexLattice4 values);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] FrequencyLayout layout() const noexcept { return layout_; }
  [[nodiscard]] std::span<const std::size_t> grid_indices() const noexcept { return indices_; }
  [[nodiscard]] std::vector<double> frequencies() const;
  [[nodiscard]] std::span<const double> levels1() const noexcept { return levels1_; }
  [[nodiscard]] std::span<const double> levels2() const noexcept { return levels2_; }
  [[nodiscard]] bool same_levels() const noexcept { return levels1_ == levels2_; }
  [[nodiscard]] const ComplexLattice4& values() const noexcept { return values_; }
  /// B + 1.
  [[nodiscard]] std::size_t replicate_slabs() const noexcept { return values_.empty() ? 0 : values_.extent(3); }
  [[nodiscard]] std::size_t bootstrap_replicates() const noexcept {
    return replicate_slabs() == 0 ? 0 : replicate_slabs() - 1;
  }

  /// Lattice [j][k1][k2][b] at the requested frequencies and levels.
  /// Half-grid quantities fold any Fourier frequency onto the store.
  /// Throws NonFourierFrequency or UnknownLevel.
  [[nodiscard]] ComplexLattice4 get_values(std::span<const double> frequencies,
                                           std::span<const double> levels1,
                                           std::span<const double> levels2) const;
  [[nodiscard]] ComplexLattice4 get_values(std::span<const double> frequencies) const;

 private:
  struct Resolved {
    std::size_t position;
    bool conjugate;
  };
  [[nodiscard]] Resolved resolve(double omega) const;

  std::size_t n_ = 0;
  FrequencyLayout layout_ = FrequencyLayout::hermitian_half;
  std::vector<std::size_t> indices_;
  std::vector<double> levels1_;
  std::vector<double> levels2_;
  ComplexLattice4 values_;
};

}  // namespace qspec
