// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/weight.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qspec/error.hpp"
#include "qspec/grid.hpp"

namespace qspec {
namespace {

constexpr double pi = std::numbers::pi;

// Simpson's rule for the mother kernel over its support.
double kernel_integral(Kernel kernel) {
  constexpr int intervals = 2048;
  const double h = 2.0 * pi / intervals;
  double sum = kernel_value(kernel, -pi) + kernel_value(kernel, pi);
  for (int i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * kernel_value(kernel, -pi + h * i);
  }
  return sum * h / 3.0;
}

void check_bandwidth(double bw) {
  if (!(bw > 0.0 && bw <= pi)) {
    throw Error(ErrorCode::invalid_bandwidth, "bandwidth must lie in (0, pi], got " + std::to_string(bw));
  }
}

}  // namespace

std::string_view to_string(Kernel kernel) noexcept {
  return kernel == Kernel::uniform ? "uniform" : "epanechnikov";
}

Kernel parse_kernel(std::string_view name) {
  if (name == "uniform" || name == "W0") return Kernel::uniform;
  if (name == "epanechnikov" || name == "W1") return Kernel::epanechnikov;
  throw Error(ErrorCode::invalid_argument, "unknown kernel '" + std::string(name) + "'");
}

double kernel_value(Kernel kernel, double u) noexcept {
  if (std::abs(u) > pi) return 0.0;
  switch (kernel) {
    case Kernel::uniform:
      return 1.0 / (2.0 * pi);
    case Kernel::epanechnikov: {
      const double r = u / pi;
      return 3.0 / (4.0 * pi) * (1.0 - r * r);
    }
  }
  return 0.0;
}

double kernel_support_radius(Kernel) noexcept { return pi; }

double periodized_kernel(Kernel kernel, double bw, double u) {
  check_bandwidth(bw);
  const auto reach = static_cast<long>(
      std::ceil((std::abs(u) + bw * kernel_support_radius(kernel)) / two_pi) + 1.0);
  double sum = 0.0;
  for (long j = -reach; j <= reach; ++j) {
    sum += kernel_value(kernel, (u + two_pi * static_cast<double>(j)) / bw);
  }
  return sum / bw;
}

std::vector<double> kernel_weights(Kernel kernel, double bw, std::size_t n, double omega) {
  check_bandwidth(bw);
  if (n < 2) throw Error(ErrorCode::invalid_argument, "grid size must be at least 2");
  std::vector<double> w(n - 1);
  for (std::size_t s = 1; s < n; ++s) {
    w[s - 1] = periodized_kernel(kernel, bw, omega - fourier_frequency(static_cast<std::int64_t>(s), n));
  }
  return w;
}

KernelWeight::KernelWeight(Kernel kernel, double bw, std::size_t n) : kernel_(kernel), bw_(bw), n_(n) {
  check_bandwidth(bw);
  if (n < 2) throw Error(ErrorCode::invalid_argument, "grid size must be at least 2");
  if (std::abs(kernel_integral(kernel) - 1.0) > 1e-6) {
    throw Error(ErrorCode::invalid_argument, "kernel does not integrate to one");
  }
  cache_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    // Use the representative of m closest to zero so the wrap count stays minimal.
    const auto centred = 2 * m <= n ? static_cast<std::int64_t>(m)
                                    : static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n);
    cache_[m] = periodized_kernel(kernel, bw, fourier_frequency(centred, n));
  }
}

double KernelWeight::at_offset(std::int64_t m) const noexcept {
  const auto nn = static_cast<std::int64_t>(n_);
  std::int64_t r = m % nn;
  if (r < 0) r += nn;
  return cache_[static_cast<std::size_t>(r)];
}

SpecDistrWeight::SpecDistrWeight(std::size_t n) : n_(n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "grid size must be at least 2");
}

std::size_t weight_grid_size(const Weight& weight) noexcept {
  return std::visit([](const auto& w) { return w.n(); }, weight);
}

}  // namespace qspec
