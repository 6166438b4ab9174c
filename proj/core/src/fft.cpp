// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/fft.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "qspec/grid.hpp"

namespace qspec {
namespace {

// In-place radix-2 transform; data.size() must be a power of two.
void radix2(std::vector<Complex>& data, bool inverse) {
  const std::size_t n = data.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<Complex> tw(half);
    for (std::size_t k = 0; k < half; ++k) {
      tw[k] = std::polar(1.0, sign * two_pi * static_cast<double>(k) / static_cast<double>(len));
    }
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = data[start + k];
        const Complex v = data[start + k + half] * tw[k];
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

std::vector<Complex> bluestein(std::span<const Complex> x) {
  const std::size_t n = x.size();
  const std::size_t m = std::bit_ceil(2 * n - 1);
  // chirp[k] = exp(-i pi k^2 / n); k^2 reduced mod 2n keeps the angle small.
  std::vector<Complex> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto k2 = static_cast<std::uint64_t>(k) * k % (2 * static_cast<std::uint64_t>(n));
    chirp[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n));
  }
  std::vector<Complex> a(m), b(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);

  radix2(a, false);
  radix2(b, false);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  radix2(a, true);

  std::vector<Complex> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

}  // namespace

std::vector<Complex> fft(std::span<const Complex> input) {
  if (input.empty()) return {};
  if (std::has_single_bit(input.size())) {
    std::vector<Complex> data(input.begin(), input.end());
    radix2(data, false);
    return data;
  }
  return bluestein(input);
}

}  // namespace qspec
