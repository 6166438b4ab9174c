// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qspec {

/// Observations X_0, ..., X_{n-1}; at least two, all finite.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> observations);

  [[nodiscard]] std::size_t size() const noexcept { return obs_.size(); }
  [[nodiscard]] double operator[](std::size_t t) const noexcept { return obs_[t]; }
  [[nodiscard]] std::span<const double> observations() const noexcept { return obs_; }
  [[nodiscard]] auto begin() const noexcept { return obs_.begin(); }
  [[nodiscard]] auto end() const noexcept { return obs_.end(); }

  /// Series (X_{p_0}, ..., X_{p_{n-1}}) for bootstrap positions p.
  [[nodiscard]] TimeSeries resample(std::span<const std::size_t> positions) const;

 private:
  std::vector<double> obs_;
};

}  // namespace qspec
