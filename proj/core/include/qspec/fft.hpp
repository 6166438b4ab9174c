// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "qspec/ndarray.hpp"

namespace qspec {

/// Forward transform X_s = sum_t x_t exp(-i 2 pi s t / n) for any n >= 1.
/// Powers of two use an iterative radix-2 kernel; other lengths go through
/// Bluestein's chirp-z reformulation.
[[nodiscard]] std::vector<Complex> fft(std::span<const Complex> input);

}  // namespace qspec
