// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

namespace qspec {

/// Mother kernels on [-pi, pi] with unit integral.
enum class Kernel {
  uniform,       ///< W0(u) = 1/(2 pi)
  epanechnikov,  ///< W1(u) = 3/(4 pi) (1 - (u/pi)^2)
};

[[nodiscard]] std::string_view to_string(Kernel kernel) noexcept;
[[nodiscard]] Kernel parse_kernel(std::string_view name);

[[nodiscard]] double kernel_value(Kernel kernel, double u) noexcept;
[[nodiscard]] double kernel_support_radius(Kernel kernel) noexcept;

/// W_n(u) = bw^{-1} sum_j W((u + 2 pi j) / bw). Throws InvalidBandwidth.
[[nodiscard]] double periodized_kernel(Kernel kernel, double bw, double u);

/// W_n(omega - 2 pi s / n) for s = 1..n-1 (element s - 1).
[[nodiscard]] std::vector<double> kernel_weights(Kernel kernel, double bw, std::size_t n,
                                                 double omega);

/// Periodized kernel cached on the offsets 2 pi m / n, m = 0..n-1.
class KernelWeight {
 public:
  KernelWeight(Kernel kernel, double bw, std::size_t n);

  [[nodiscard]] Kernel kernel() const noexcept { return kernel_; }
  [[nodiscard]] double bw() const noexcept { return bw_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  /// W_n(2 pi m / n) for any integer m.
  [[nodiscard]] double at_offset(std::int64_t m) const noexcept;
  [[nodiscard]] const std::vector<double>& offsets() const noexcept { return cache_; }

 private:
  Kernel kernel_;
  double bw_;
  std::size_t n_;
  std::vector<double> cache_;
};

/// Step weight used for cumulated spectra: the smoothed value at 2 pi j / n is
/// (2 pi / n) times the sum of periodogram values at s = 1..j.
class SpecDistrWeight {
 public:
  explicit SpecDistrWeight(std::size_t n);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }

 private:
  std::size_t n_;
};

using Weight = std::variant<KernelWeight, SpecDistrWeight>;

[[nodiscard]] std::size_t weight_grid_size(const Weight& weight) noexcept;

}  // namespace qspec
