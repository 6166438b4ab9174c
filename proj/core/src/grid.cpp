// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/grid.hpp"

#include <cmath>
#include <string>

#include "qspec/error.hpp"

namespace qspec {

double fourier_frequency(std::int64_t s, std::size_t n) {
  return two_pi * static_cast<double>(s) / static_cast<double>(n);
}

std::int64_t grid_multiple(double omega, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "grid size must be positive");
  if (!std::isfinite(omega)) {
    throw Error(ErrorCode::non_fourier_frequency, "frequency is not finite");
  }
  const double x = omega * static_cast<double>(n) / two_pi;
  const double r = std::round(x);
  if (std::abs(x - r) > frequency_tolerance) {
    throw Error(ErrorCode::non_fourier_frequency,
                "frequency " + std::to_string(omega) + " is not a multiple of 2*pi/" +
                    std::to_string(n));
  }
  return static_cast<std::int64_t>(r);
}

std::size_t grid_position(double omega, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t s = grid_multiple(omega, n) % nn;
  return static_cast<std::size_t>(s < 0 ? s + nn : s);
}

FoldedFrequency fold_frequency(double omega, std::size_t n) {
  const std::size_t s = grid_position(omega, n);
  if (2 * s <= n) return {s, false};
  return {n - s, true};
}

FourierGrid::FourierGrid(std::size_t n) : n_(n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "grid size must be positive");
}

std::vector<double> FourierGrid::frequencies() const {
  std::vector<double> out(size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = frequency(j);
  return out;
}

void validate_levels(std::span<const double> levels, LevelDomain domain) {
  if (levels.empty()) throw Error(ErrorCode::invalid_argument, "at least one level is required");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const double tau = levels[k];
    if (!std::isfinite(tau)) throw Error(ErrorCode::level_out_of_range, "level is not finite");
    const bool ok = domain == LevelDomain::open_unit     ? (tau > 0.0 && tau < 1.0)
                    : domain == LevelDomain::closed_unit ? (tau >= 0.0 && tau <= 1.0)
                                                         : true;
    if (!ok) {
      throw Error(ErrorCode::level_out_of_range,
                  "level " + std::to_string(tau) +
                      (domain == LevelDomain::open_unit ? " outside (0,1)" : " outside [0,1]"));
    }
    if (k > 0 && !(levels[k - 1] < tau)) {
      throw Error(ErrorCode::invalid_argument, "levels must be strictly increasing");
    }
  }
}

std::optional<std::size_t> find_level(std::span<const double> stored, double level) {
  for (std::size_t k = 0; k < stored.size(); ++k) {
    if (std::abs(stored[k] - level) <= level_tolerance) return k;
  }
  return std::nullopt;
}

std::vector<std::size_t> level_indices(std::span<const double> stored,
                                       std::span<const double> requested) {
  std::vector<std::size_t> out;
  out.reserve(requested.size());
  for (double level : requested) {
    auto k = find_level(stored, level);
    if (!k) throw Error(ErrorCode::unknown_level, "level " + std::to_string(level) + " not stored");
    out.push_back(*k);
  }
  return out;
}

}  // namespace qspec
