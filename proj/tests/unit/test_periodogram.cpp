// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qspec/quantile_pg.hpp"

using namespace qspec;
using oracle::pi;

namespace {
std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  std::vector<double> y(n);
  for (auto& v : y) v = g(gen);
  return y;
}
}  // namespace

TEST(QuantilePG, HandExampleAtPi) {
  const auto pg = quantile_pg(clipped_ft(TimeSeries({3, 1, 2, 0}), {0.5}, true));
  EXPECT_NEAR(pg.values()(2, 0, 0, 0).real(), 1.0 / (2 * pi), 1e-15);
  EXPECT_EQ(pg.values()(2, 0, 0, 0).imag(), 0.0);
}

TEST(QuantilePG, MatchesNaiveOuterProduct) {
  for (std::size_t n : {7u, 32u, 64u, 128u}) {
    const auto y = gaussian(n, 100 + n);
    const std::vector<double> lv{0.25, 0.5, 0.75};
    const auto pg = quantile_pg(clipped_ft(TimeSeries(y), lv, true));
    std::vector<Complex> got;
    std::vector<Complex> want;
    for (std::size_t j = 0; j <= n / 2; ++j) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t c = 0; c < 3; ++c) {
          got.push_back(pg.values()(j, a, c, 0));
          want.push_back(oracle::periodogram(y, lv[a], lv[c], true, 2 * pi * j / n));
        }
      }
    }
    EXPECT_LT(oracle::relative_error(got, want), 1e-12) << "n=" << n;
  }
}

TEST(QuantilePG, EmptyIndicatorLevelGivesZeroRowAndColumn) {
  const auto pg = quantile_pg(clipped_ft(TimeSeries(gaussian(16, 1)), {-100.0, 0.0}, false));
  for (std::size_t j = 0; j <= 8; ++j) {
    EXPECT_EQ(pg.values()(j, 0, 1, 0), Complex(0.0, 0.0));
    EXPECT_EQ(pg.values()(j, 1, 0, 0), Complex(0.0, 0.0));
    EXPECT_EQ(pg.values()(j, 0, 0, 0), Complex(0.0, 0.0));
  }
}

TEST(QuantilePG, SymmetriesHoldExactly) {
  const std::size_t n = 50;
  const auto y = gaussian(n, 3);
  const std::vector<double> lv{0.1, 0.4, 0.6, 0.95};
  for (bool qr : {false, true}) {
    const auto pg = quantile_pg(qr ? qreg_estimator(TimeSeries(y), lv, true, BootSpec{3, 5, 1})
                                   : clipped_ft(TimeSeries(y), lv, true, BootSpec{3, 5, 1}));
    const auto& v = pg.values();
    for (std::size_t j = 0; j <= n / 2; ++j) {
      for (std::size_t a = 0; a < lv.size(); ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
          EXPECT_EQ(v(j, a, a, b).imag(), 0.0);
          EXPECT_GE(v(j, a, a, b).real(), 0.0);
          for (std::size_t c = 0; c < lv.size(); ++c) EXPECT_EQ(v(j, a, c, b), std::conj(v(j, c, a, b)));
        }
      }
    }
    std::vector<double> f;
    for (std::size_t s = 0; s <= 2 * n; ++s) f.push_back(2 * pi * s / n);
    const auto w = pg.get_values(f);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t a = 0; a < lv.size(); ++a) {
        for (std::size_t c = 0; c < lv.size(); ++c) {
          EXPECT_EQ(w(n - s, a, c, 0), std::conj(w(s, a, c, 0)));
          EXPECT_EQ(w(s + n, a, c, 0), w(s, a, c, 0));
        }
      }
    }
  }
}

TEST(QuantilePG, RetainsSource) {
  const auto pg = quantile_pg(qreg_estimator(TimeSeries(gaussian(12, 2)), {0.5}, false));
  EXPECT_EQ(pg.kind(), FreqRepKind::qreg);
  EXPECT_FALSE(pg.is_rank_based());
  EXPECT_EQ(pg.freq_rep().n(), 12u);
}
