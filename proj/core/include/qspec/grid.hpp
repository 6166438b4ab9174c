// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace qspec {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Tolerance, in units of the grid spacing 2*pi/n, within which a frequency is
/// considered to lie on the Fourier grid.
inline constexpr double frequency_tolerance = 1e-8;

/// Tolerance for matching a requested level against a stored one.
inline constexpr double level_tolerance = 1e-12;

/// 2*pi*s/n.
[[nodiscard]] double fourier_frequency(std::int64_t s, std::size_t n);

/// Position s in [0, n) of a Fourier frequency after reduction modulo 2*pi.
/// Throws NonFourierFrequency when omega is off the grid.
[[nodiscard]] std::size_t grid_position(double omega, std::size_t n);

/// Nearest grid multiple s of 2*pi/n without periodic reduction.
/// Throws NonFourierFrequency when omega is off the grid.
[[nodiscard]] std::int64_t grid_multiple(double omega, std::size_t n);

struct FoldedFrequency {
  std::size_t index = 0;   ///< position on the half grid 0..floor(n/2)
  bool conjugate = false;  ///< true when the value is the conjugate of the stored one
  friend bool operator==(const FoldedFrequency&, const FoldedFrequency&) = default;
};

/// Maps any Fourier frequency onto the stored half grid [0, pi] using
/// periodicity and the reflection omega -> 2*pi - omega.
[[nodiscard]] FoldedFrequency fold_frequency(double omega, std::size_t n);

/// The Fourier frequencies 2*pi*s/n for s = 0..floor(n/2).
class FourierGrid {
 public:
  explicit FourierGrid(std::size_t n);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return n_ / 2 + 1; }
  [[nodiscard]] double frequency(std::size_t j) const { return fourier_frequency(static_cast<std::int64_t>(j), n_); }
  [[nodiscard]] std::vector<double> frequencies() const;

 private:
  std::size_t n_;
};

enum class LevelDomain {
  open_unit,    ///< (0, 1), regression-based estimators
  closed_unit,  ///< [0, 1], rank-clipped transforms
  real_line,    ///< thresholds on the data scale
};

/// Checks that levels are finite, strictly increasing and inside `domain`.
/// Throws LevelOutOfRange or InvalidArgument.
void validate_levels(std::span<const double> levels, LevelDomain domain);

[[nodiscard]] std::optional<std::size_t> find_level(std::span<const double> stored, double level);

/// Index of each requested level inside `stored`; throws UnknownLevel.
[[nodiscard]] std::vector<std::size_t> level_indices(std::span<const double> stored,
                                                     std::span<const double> requested);

}  // namespace qspec
