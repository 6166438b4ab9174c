// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/qspec_quantity.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qspec/error.hpp"
#include "qspec/grid.hpp"

namespace qspec {

QSpecQuantity::QSpecQuantity(std::size_t n, FrequencyLayout layout,
                             std::vector<std::size_t> grid_indices, std::vector<double> levels1,
                             std::vector<double> levels2, ComplexLattice4 values)
    : n_(n),
      layout_(layout),
      indices_(std::move(grid_indices)),
      levels1_(std::move(levels1)),
      levels2_(std::move(levels2)),
      values_(std::move(values)) {
  if (n_ == 0) throw Error(ErrorCode::invalid_argument, "grid size must be positive");
  if (!std::is_sorted(indices_.begin(), indices_.end()) ||
      std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw Error(ErrorCode::invalid_argument, "frequency indices must be strictly increasing");
  }
  if (layout_ == FrequencyLayout::hermitian_half) {
    if (indices_.size() != n_ / 2 + 1 || indices_.back() != n_ / 2) {
      throw Error(ErrorCode::invalid_argument, "half-grid quantities store j = 0..floor(n/2)");
    }
  }
  const auto& e = values_.extents();
  if (e[0] != indices_.size() || e[1] != levels1_.size() || e[2] != levels2_.size() || e[3] == 0) {
    throw Error(ErrorCode::invalid_argument,
                "lattice dimensions do not match frequencies/levels/replicates");
  }
}

QSpecQuantity QSpecQuantity::hermitian(std::size_t n, std::vector<double> levels1,
                                       std::vector<double> levels2, ComplexLattice4 values) {
  std::vector<std::size_t> idx(n / 2 + 1);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return QSpecQuantity(n, FrequencyLayout::hermitian_half, std::move(idx), std::move(levels1),
                       std::move(levels2), std::move(values));
}

std::vector<double> QSpecQuantity::frequencies() const {
  std::vector<double> out;
  out.reserve(indices_.size());
  for (std::size_t j : indices_) out.push_back(fourier_frequency(static_cast<std::int64_t>(j), n_));
  return out;
}

QSpecQuantity::Resolved QSpecQuantity::resolve(double omega) const {
  if (layout_ == FrequencyLayout::hermitian_half) {
    const FoldedFrequency f = fold_frequency(omega, n_);
    return {f.index, f.conjugate};
  }
  const std::int64_t s = grid_multiple(omega, n_);
  if (s >= 0) {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), static_cast<std::size_t>(s));
    if (it != indices_.end() && *it == static_cast<std::size_t>(s)) {
      return {static_cast<std::size_t>(it - indices_.begin()), false};
    }
  }
  throw Error(ErrorCode::non_fourier_frequency,
              "frequency " + std::to_string(omega) + " is not stored");
}

ComplexLattice4 QSpecQuantity::get_values(std::span<const double> frequencies,
                                          std::span<const double> levels1,
                                          std::span<const double> levels2) const {
  const auto k1 = level_indices(levels1_, levels1);
  const auto k2 = level_indices(levels2_, levels2);
  std::vector<Resolved> pos;
  pos.reserve(frequencies.size());
  for (double omega : frequencies) pos.push_back(resolve(omega));

  const std::size_t slabs = replicate_slabs();
  ComplexLattice4 out({frequencies.size(), k1.size(), k2.size(), slabs});
  for (std::size_t j = 0; j < pos.size(); ++j) {
    for (std::size_t a = 0; a < k1.size(); ++a) {
      for (std::size_t c = 0; c < k2.size(); ++c) {
        for (std::size_t b = 0; b < slabs; ++b) {
          const Complex v = values_(pos[j].position, k1[a], k2[c], b);
          out(j, a, c, b) = pos[j].conjugate ? std::conj(v) : v;
        }
      }
    }
  }
  return out;
}

ComplexLattice4 QSpecQuantity::get_values(std::span<const double> frequencies) const {
  return get_values(frequencies, levels1_, levels2_);
}

}  // namespace qspec
