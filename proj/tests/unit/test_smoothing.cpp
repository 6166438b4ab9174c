// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qspec/error.hpp"
#include "qspec/smoothed_pg.hpp"

using namespace qspec;
using oracle::pi;

namespace {
std::vector<double> uniform_series(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u;
  std::vector<double> y(n);
  for (auto& v : y) v = u(gen);
  return y;
}
}  // namespace

TEST(KernelWeights, EpanechnikovAtZero) {
  EXPECT_NEAR(periodized_kernel(Kernel::epanechnikov, 1.0, 0.0), 3.0 / (4.0 * pi), 1e-15);
  EXPECT_NEAR(periodized_kernel(Kernel::epanechnikov, 0.5, 2 * pi), periodized_kernel(Kernel::epanechnikov, 0.5, 0.0),
              1e-15);
}

TEST(KernelWeights, MatchesWideOraclePeriodization) {
  for (Kernel k : {Kernel::uniform, Kernel::epanechnikov}) {
    const auto mother = k == Kernel::uniform ? oracle::uniform_kernel : oracle::epanechnikov;
    for (double bw : {0.07, 0.3, 1.0, pi}) {
      const auto w = kernel_weights(k, bw, 40, 2 * pi * 3 / 40);
      for (std::size_t s = 1; s < 40; ++s) {
        const double u = 2 * pi * 3 / 40 - 2 * pi * s / 40;
        EXPECT_NEAR(w[s - 1], oracle::periodized(mother, bw, u), 1e-12);
        EXPECT_GE(w[s - 1], 0.0);
      }
    }
  }
}

TEST(KernelWeights, UniformIntegratesToOne) {
  // Midpoint rule of the periodized uniform kernel over one period.
  for (double bw : {0.2, 1.0, 2.5}) {
    const int m = 200000;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += periodized_kernel(Kernel::uniform, bw, -pi + 2 * pi * (i + 0.5) / m);
    EXPECT_NEAR(sum * 2 * pi / m, 1.0, 1e-4);
  }
}

TEST(KernelWeights, RejectsBadBandwidth) {
  for (double bw : {0.0, -1.0, 3.2}) {
    try {
      const KernelWeight w(Kernel::epanechnikov, bw, 16);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::invalid_bandwidth);
    }
  }
}

TEST(KernelWeights, MassIsOneUpToGridError) {
  for (std::size_t n : {256u, 1024u}) {
    for (double bw : {8 * pi / n, 0.3, 0.9}) {
      const KernelWeight w(Kernel::epanechnikov, bw, n);
      for (std::size_t j = 1; j < n / 2; j += 7) {
        // Interior: the kernel support around omega_j does not reach s = 0.
        if (2 * pi * j / n <= bw * pi + 2 * pi / n) continue;
        double mass = 0.0;
        for (std::size_t s = 1; s < n; ++s) {
          mass += w.at_offset(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(s));
        }
        EXPECT_LE(std::abs(mass * 2 * pi / n - 1.0), 10.0 / n);
      }
    }
  }
}

TEST(SmoothPG, MatchesNaiveDoubleLoop) {
  for (std::size_t n : {9u, 64u, 128u}) {
    const auto y = uniform_series(n, n);
    const std::vector<double> lv{0.3, 0.6};
    const auto pg = quantile_pg(clipped_ft(TimeSeries(y), lv, true));
    for (Kernel k : {Kernel::uniform, Kernel::epanechnikov}) {
      const auto mother = k == Kernel::uniform ? oracle::uniform_kernel : oracle::epanechnikov;
      const double bw = 0.4;
      const auto spg = smooth_pg(pg, KernelWeight(k, bw, n));
      std::vector<Complex> got;
      std::vector<Complex> want;
      for (std::size_t j = 0; j <= n / 2; ++j) {
        for (std::size_t a = 0; a < 2; ++a) {
          for (std::size_t c = 0; c < 2; ++c) {
            got.push_back(spg.values()(j, a, c, 0));
            want.push_back(oracle::smoothed(
                [&](double w) { return oracle::periodogram(y, lv[a], lv[c], true, w); }, mother, bw, n, 2 * pi * j / n));
          }
        }
      }
      EXPECT_LT(oracle::relative_error(got, want), 1e-12) << "n=" << n;
    }
  }
}

TEST(SmoothPG, IsLinearAndPreservesSymmetry) {
  const std::size_t n = 60;
  const auto y = uniform_series(n, 4);
  const std::vector<double> lv{0.2, 0.5, 0.8};
  const auto pg = quantile_pg(clipped_ft(TimeSeries(y), lv, true, BootSpec{2, 6, 3}));
  const KernelWeight w(Kernel::epanechnikov, 0.5, n);
  const auto spg = smooth_pg(pg, w);

  ComplexLattice4 doubled = pg.values();
  for (auto& v : doubled.flat()) v *= 2.0;
  const auto pg2 = std::make_shared<QSpecQuantity>(QSpecQuantity::hermitian(n, lv, lv, doubled));
  const auto spg2 = smooth_pg(pg2, w);
  for (std::size_t i = 0; i < spg.values().size(); ++i) {
    EXPECT_NEAR(std::abs(spg2.values().flat()[i] - 2.0 * spg.values().flat()[i]), 0.0, 1e-15);
  }
  const auto& v = spg.values();
  for (std::size_t j = 0; j <= n / 2; ++j) {
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        EXPECT_EQ(v(j, a, a, b).imag(), 0.0);
        EXPECT_GE(v(j, a, a, b).real(), 0.0);
        for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(v(j, a, c, b), std::conj(v(j, c, a, b)));
      }
    }
  }
  // Smoothed values at n - j equal conj at j: check against the naive sum.
  const std::size_t j = 7;
  const auto at = [&](double omega) {
    return oracle::smoothed([&](double w2) { return oracle::periodogram(y, lv[0], lv[2], true, w2); },
                            oracle::epanechnikov, 0.5, n, omega);
  };
  EXPECT_NEAR(std::abs(at(2 * pi * (n - j) / n) - std::conj(v(j, 0, 2, 0))), 0.0, 1e-12);
}

TEST(SmoothPG, GridMismatch) {
  const auto pg = quantile_pg(clipped_ft(TimeSeries(uniform_series(16, 1)), {0.5}, true));
  try {
    (void)smooth_pg(pg, KernelWeight(Kernel::uniform, 0.5, 32));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::grid_mismatch);
  }
}

TEST(SmoothPG, SpecDistrIsCumulativeSum) {
  const std::size_t n = 24;
  const auto y = uniform_series(n, 8);
  const auto pg = quantile_pg(clipped_ft(TimeSeries(y), {0.5}, true));
  const auto spg = smooth_pg(pg, SpecDistrWeight(n));
  EXPECT_EQ(spg.layout(), FrequencyLayout::explicit_grid);
  EXPECT_EQ(spg.values()(0, 0, 0, 0), Complex(0.0, 0.0));
  Complex acc = 0.0;
  double prev = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    acc += oracle::periodogram(y, 0.5, 0.5, true, 2 * pi * j / n) * (2 * pi / n);
    EXPECT_NEAR(std::abs(spg.values()(j, 0, 0, 0) - acc), 0.0, 1e-12);
    EXPECT_GE(spg.values()(j, 0, 0, 0).real(), prev);
    prev = spg.values()(j, 0, 0, 0).real();
  }
}

TEST(SmoothPG, IidUniformFlatLevel) {
  // Average of Re G over (0, pi) at tau = 0.5 over 100 replications.
  const std::size_t n = 1024;
  const KernelWeight w(Kernel::epanechnikov, 0.3, n);
  double total = 0.0;
  double mass = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto y = uniform_series(n, 1000 + rep);
    const auto spg = smooth_pg(quantile_pg(clipped_ft(TimeSeries(y), {0.5}, true)), w);
    double avg = 0.0;
    for (std::size_t j = 1; j < n / 2; ++j) avg += spg.values()(j, 0, 0, 0).real();
    total += avg / (n / 2 - 1);
    const auto cum = smooth_pg(quantile_pg(clipped_ft(TimeSeries(y), {0.5}, true)), SpecDistrWeight(n));
    mass += cum.values()(n - 1, 0, 0, 0).real();
  }
  EXPECT_NEAR(total / 100, 0.25 / (2 * pi), 0.005);
  EXPECT_NEAR(mass / 100, 0.25, 0.03);
}
