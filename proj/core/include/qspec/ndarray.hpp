// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <type_traits>
#include <vector>

namespace qspec {

using Complex = std::complex<double>;

/// Dense row-major array with a fixed number of dimensions. The last index
/// varies fastest.
template <class T, std::size_t Rank>
class NdArray {
  static_assert(Rank >= 1);

 public:
  using value_type = T;
  using extents_type = std::array<std::size_t, Rank>;

  NdArray() = default;

  explicit NdArray(const extents_type& extents, const T& fill = T{})
      : extents_(extents), data_(element_count(extents), fill) {}

  [[nodiscard]] const extents_type& extents() const noexcept { return extents_; }
  [[nodiscard]] std::size_t extent(std::size_t dim) const { return extents_.at(dim); }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  template <class... Idx>
    requires(sizeof...(Idx) == Rank && (std::is_convertible_v<Idx, std::size_t> && ...))
  [[nodiscard]] T& operator()(Idx... idx) noexcept {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  template <class... Idx>
    requires(sizeof...(Idx) == Rank && (std::is_convertible_v<Idx, std::size_t> && ...))
  [[nodiscard]] const T& operator()(Idx... idx) const noexcept {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  [[nodiscard]] std::span<T> flat() noexcept { return data_; }
  [[nodiscard]] std::span<const T> flat() const noexcept { return data_; }

  /// Contiguous block of all elements sharing the leading index `i0`.
  [[nodiscard]] std::span<T> slab(std::size_t i0) noexcept {
    const std::size_t stride = slab_size();
    return std::span<T>(data_).subspan(i0 * stride, stride);
  }
  [[nodiscard]] std::span<const T> slab(std::size_t i0) const noexcept {
    const std::size_t stride = slab_size();
    return std::span<const T>(data_).subspan(i0 * stride, stride);
  }
  [[nodiscard]] std::size_t slab_size() const noexcept {
    return extents_[0] == 0 ? 0 : data_.size() / extents_[0];
  }

  friend bool operator==(const NdArray&, const NdArray&) = default;

 private:
  static std::size_t element_count(const extents_type& e) {
    return std::accumulate(e.begin(), e.end(), std::size_t{1}, std::multiplies<>{});
  }

  [[nodiscard]] std::size_t offset(const std::array<std::size_t, Rank>& idx) const noexcept {
    std::size_t off = 0;
    for (std::size_t d = 0; d < Rank; ++d) off = off * extents_[d] + idx[d];
    return off;
  }

  extents_type extents_{};
  std::vector<T> data_;
};

using ComplexLattice3 = NdArray<Complex, 3>;
using ComplexLattice4 = NdArray<Complex, 4>;

}  // namespace qspec
