// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qspec/models.hpp"
#include "qspec/ndarray.hpp"
#include "qspec/qspec_quantity.hpp"

namespace qspec {

enum class SdType {
  copula,   ///< rank-clipped periodograms, levels in (0, 1)
  laplace,  ///< raw-level clipped periodograms, levels on the data scale
};

[[nodiscard]] std::string_view to_string(SdType type) noexcept;
[[nodiscard]] SdType parse_sd_type(std::string_view name);

/// Resumable Monte Carlo accumulator for a model's quantile spectral density.
/// Copy r of the simulation draws from RandomStream(seed).split(r); the
/// state holds copies first_copy .. first_copy + R - 1.
struct QuantileSDState {
  std::size_t N = 0;
  std::vector<double> levels;
  SdType type = SdType::copula;
  std::string model_name;
  std::vector<double> model_params;
  std::uint64_t seed = 0;
  std::size_t R = 0;
  std::size_t first_copy = 0;
  ComplexLattice3 mean;    ///< [j][k1][k2], running mean of the periodograms
  ComplexLattice3 m2;      ///< sums of squared deviations: Re part for Re, Im part for Im
  ComplexLattice3 values;  ///< frequency-smoothed mean

  [[nodiscard]] std::size_t next_copy() const noexcept { return first_copy + R; }
  /// sqrt(M2 / (R (R - 1))) per part; absent for R < 2.
  [[nodiscard]] std::optional<ComplexLattice3> std_error() const;
  /// Smoothed values as a half-grid quantity.
  [[nodiscard]] QSpecQuantity quantity() const;
  [[nodiscard]] QSpecQuantity mean_quantity() const;

  friend bool operator==(const QuantileSDState&, const QuantileSDState&) = default;
};

/// Half-width of the moving average applied to the mean periodogram.
[[nodiscard]] std::size_t sd_smoothing_halfwidth(std::size_t N) noexcept;

/// Centered moving average over 2m+1 Fourier frequencies, omitting multiples
/// of 2 pi, with values beyond [0, pi] taken from conjugate symmetry.
[[nodiscard]] ComplexLattice3 smooth_mean_lattice(const ComplexLattice3& mean, std::size_t N);

/// Simulates R copies from the first copy index first_copy.
[[nodiscard]] QuantileSDState quantile_sd(const ModelSpec& model, std::size_t N, std::vector<double> levels,
                                          std::size_t R, std::uint64_t seed, SdType type,
                                          std::size_t first_copy = 0);

/// Adds delta_R further copies; the result equals a fresh run with R + delta_R.
[[nodiscard]] QuantileSDState increase_precision(QuantileSDState state, std::size_t delta_R);
[[nodiscard]] QuantileSDState increase_precision(QuantileSDState state, const ModelSpec& model,
                                                 std::size_t delta_R);

/// Combines states over adjacent copy ranges (b starts where a ends).
[[nodiscard]] QuantileSDState merge(const QuantileSDState& a, const QuantileSDState& b);

/// F(2 pi j / N) = (2 pi / N) sum_{s=1}^{j} f(2 pi s / N) on the explicit grid j = 0..N.
[[nodiscard]] QSpecQuantity integr_quantile_sd(const QuantileSDState& state);

void save_state(const QuantileSDState& state, const std::filesystem::path& path);
/// Throws CorruptState on format, version or checksum failures.
[[nodiscard]] QuantileSDState load_state(const std::filesystem::path& path);

[[nodiscard]] std::string serialize_state(const QuantileSDState& state);
[[nodiscard]] QuantileSDState deserialize_state(std::string_view bytes);

}  // namespace qspec
