// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qspec/rng.hpp"
#include "qspec/time_series.hpp"

namespace qspec {

/// A time-series model: deterministic given (N, stream).
struct ModelSpec {
  std::string name;
  std::vector<double> params;
  std::function<TimeSeries(std::size_t, RandomStream&)> generate;
};

inline constexpr std::size_t qar1_burn_in = 1000;

/// X_t = scale (U_t - 1/2) X_{t-1} + Phi^{-1}(U_t), started at 0 and run
/// through a burn-in before the first kept value.
[[nodiscard]] TimeSeries qar1_generate(std::size_t N, RandomStream& stream, double scale = 1.9);

[[nodiscard]] ModelSpec qar1_model(double scale = 1.9);
[[nodiscard]] ModelSpec iid_gaussian_model();
[[nodiscard]] ModelSpec iid_uniform_model();

/// Registry lookup: "qar1" (params: optional scale), "iid-gaussian", "iid-uniform".
[[nodiscard]] ModelSpec make_model(std::string_view name, const std::vector<double>& params = {});

}  // namespace qspec
