// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace qspec {

/// Standard normal inverse CDF (Wichura's AS 241, PPND16). p must lie in (0, 1).
[[nodiscard]] double normal_quantile(double p);

[[nodiscard]] double normal_cdf(double x) noexcept;

}  // namespace qspec
