// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "qspec/error.hpp"
#include "qspec/inference.hpp"
#include "qspec/normal.hpp"
#include "qspec/parallel.hpp"
#include "qspec/quantile_sd.hpp"
#include "qspec/rimse.hpp"

using namespace qspec;
using oracle::pi;

TEST(Qar1, ZeroCoefficientIsGaussianWhiteNoise) {
  const std::size_t N = 10000;
  RandomStream s(17);
  const auto y = qar1_generate(N, s, 0.0);
  std::vector<double> x(y.begin(), y.end());
  std::sort(x.begin(), x.end());
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double F = normal_cdf(x[i]);
    d = std::max({d, std::abs(F - static_cast<double>(i) / N), std::abs(F - static_cast<double>(i + 1) / N)});
  }
  EXPECT_LT(d * std::sqrt(static_cast<double>(N)), 1.628);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= N;
  double c0 = 0.0;
  double c1 = 0.0;
  for (std::size_t t = 0; t < N; ++t) {
    c0 += (y[t] - mean) * (y[t] - mean);
    if (t > 0) c1 += (y[t] - mean) * (y[t - 1] - mean);
  }
  EXPECT_LT(std::abs(c1 / c0), 2.576 / std::sqrt(static_cast<double>(N)));
}

TEST(Qar1, DeterministicAndBounded) {
  RandomStream a(5);
  RandomStream b(5);
  const auto ya = qar1_generate(1000, a);
  const auto yb = qar1_generate(1000, b);
  EXPECT_TRUE(std::equal(ya.begin(), ya.end(), yb.begin()));
  RandomStream c(6);
  const auto big = qar1_generate(1000000, c);
  double m = 0.0;
  for (double v : big) m = std::max(m, std::abs(v));
  EXPECT_LT(m, 50.0);
}

TEST(Models, Registry) {
  EXPECT_EQ(make_model("qar1").params, std::vector<double>{1.9});
  EXPECT_EQ(make_model("iid-gaussian").name, "iid-gaussian");
  EXPECT_THROW((void)make_model("garch"), Error);
}

TEST(QuantileSD, SingleCopyHasNoStdError) {
  const auto st = quantile_sd(iid_gaussian_model(), 16, {0.5}, 1, 3, SdType::copula);
  EXPECT_FALSE(st.std_error().has_value());
  RandomStream s = RandomStream(3).split(0);
  const auto y = iid_gaussian_model().generate(16, s);
  const auto pg = quantile_pg(clipped_ft(y, {0.5}, true));
  for (std::size_t j = 0; j <= 8; ++j) EXPECT_EQ(st.mean(j, 0, 0), pg.values()(j, 0, 0, 0));
}

TEST(QuantileSD, ResumeIsBitIdentical) {
  const std::vector<double> lv{0.25, 0.5, 0.75};
  const auto full = quantile_sd(qar1_model(), 32, lv, 100, 2581, SdType::copula);
  auto half = quantile_sd(qar1_model(), 32, lv, 50, 2581, SdType::copula);
  half = increase_precision(half, 50);
  EXPECT_EQ(half, full);
  EXPECT_EQ(increase_precision(full, 0), full);
}

TEST(QuantileSD, IndependentOfThreadCount) {
  set_max_threads(1);
  const auto a = quantile_sd(qar1_model(), 32, {0.5}, 70, 1, SdType::copula);
  set_max_threads(4);
  const auto b = quantile_sd(qar1_model(), 32, {0.5}, 70, 1, SdType::copula);
  set_max_threads(0);
  EXPECT_EQ(a, b);
}

TEST(QuantileSD, MergeMatchesSequentialAccumulation) {
  const std::vector<double> lv{0.3, 0.7};
  const auto whole = quantile_sd(qar1_model(), 32, lv, 50, 9, SdType::copula);
  const auto a = quantile_sd(qar1_model(), 32, lv, 30, 9, SdType::copula);
  const auto b = quantile_sd(qar1_model(), 32, lv, 20, 9, SdType::copula, 30);
  const auto m = merge(a, b);
  EXPECT_EQ(m.R, 50u);
  for (std::size_t i = 0; i < m.mean.size(); ++i) {
    EXPECT_NEAR(std::abs(m.mean.flat()[i] - whole.mean.flat()[i]), 0.0, 1e-12);
    EXPECT_NEAR(m.m2.flat()[i].real(), whole.m2.flat()[i].real(), 1e-12 * (1 + whole.m2.flat()[i].real()));
    EXPECT_NEAR(m.m2.flat()[i].imag(), whole.m2.flat()[i].imag(), 1e-12 * (1 + whole.m2.flat()[i].imag()));
  }
  EXPECT_THROW((void)merge(b, a), Error);
}

TEST(QuantileSD, StdErrorShrinksLikeRootR) {
  const auto median_se = [](const QuantileSDState& st) {
    const auto se = *st.std_error();
    std::vector<double> v;
    for (std::size_t j = 1; j < se.extent(0); ++j) v.push_back(se(j, 0, 0).real());
    return linear_quantile(v, 0.5);
  };
  const auto st100 = quantile_sd(iid_gaussian_model(), 64, {0.5}, 100, 4, SdType::copula);
  const auto st400 = increase_precision(st100, 300);
  const double ratio = median_se(st400) / median_se(st100);
  EXPECT_GE(ratio, 0.4);
  EXPECT_LE(ratio, 0.6);
}

TEST(QuantileSD, SymmetriesAndIntegral) {
  const std::vector<double> lv{0.2, 0.5, 0.9};
  const auto st = quantile_sd(qar1_model(), 64, lv, 40, 8, SdType::copula);
  const auto& v = st.values;
  for (std::size_t j = 0; j < v.extent(0); ++j) {
    for (std::size_t a = 0; a < 3; ++a) {
      EXPECT_EQ(v(j, a, a).imag(), 0.0);
      EXPECT_GE(v(j, a, a).real(), 0.0);
      for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(std::abs(v(j, a, c) - std::conj(v(j, c, a))), 0.0, 1e-15);
    }
  }
  const auto F = integr_quantile_sd(st);
  EXPECT_EQ(F.values()(0, 1, 1, 0), Complex(0.0, 0.0));
  for (std::size_t j = 1; j <= 64; ++j) {
    for (std::size_t a = 0; a < 3; ++a) EXPECT_GE(F.values()(j, a, a, 0).real(), F.values()(j - 1, a, a, 0).real());
  }
  const std::vector<double> at{2 * pi * 70 / 64};
  EXPECT_THROW((void)F.get_values(at), Error);
}

TEST(QuantileSD, MovingAverageUsesConjugateFolding) {
  const std::size_t N = 16;
  ComplexLattice3 mean({N / 2 + 1, 1, 1});
  for (std::size_t j = 0; j <= N / 2; ++j) mean(j, 0, 0) = Complex(1.0 * j, 0.5 * j);
  const auto m = sd_smoothing_halfwidth(N);
  ASSERT_EQ(m, 2u);
  const auto out = smooth_mean_lattice(mean, N);
  // j = 1 averages s = -1, 1, 2, 3 (s = 0 excluded); s = -1 is conj of s = 1.
  const Complex want = (std::conj(mean(1, 0, 0)) + mean(1, 0, 0) + mean(2, 0, 0) + mean(3, 0, 0)) / 4.0;
  EXPECT_NEAR(std::abs(out(1, 0, 0) - want), 0.0, 1e-15);
  const Complex top = (mean(6, 0, 0) + mean(7, 0, 0) + mean(8, 0, 0) + std::conj(mean(7, 0, 0)) +
                       std::conj(mean(6, 0, 0))) / 5.0;
  EXPECT_NEAR(std::abs(out(8, 0, 0) - top), 0.0, 1e-15);
}

TEST(QuantileSD, LaplaceTypeAcceptsDataScaleLevels) {
  EXPECT_NO_THROW((void)quantile_sd(iid_gaussian_model(), 16, {-1.0, 0.0, 2.0}, 2, 1, SdType::laplace));
  EXPECT_THROW((void)quantile_sd(iid_gaussian_model(), 16, {-1.0, 0.0}, 2, 1, SdType::copula), Error);
}

TEST(StateFile, RoundTripAndCorruption) {
  const auto st = quantile_sd(qar1_model(), 16, {0.25, 0.75}, 5, 77, SdType::copula);
  const auto path = std::filesystem::temp_directory_path() / "qspec_state_roundtrip.bin";
  save_state(st, path);
  EXPECT_EQ(load_state(path), st);
  std::filesystem::remove(path);

  const std::string bytes = serialize_state(st);
  const auto expect_corrupt = [](const std::string& b) {
    try {
      (void)deserialize_state(b);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::corrupt_state);
    }
  };
  std::string flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x01;
  expect_corrupt(flipped);
  expect_corrupt(bytes.substr(0, bytes.size() - 9));
  std::string magic = bytes;
  magic[0] = 'X';
  expect_corrupt(magic);
  expect_corrupt("");
}

TEST(Rimse, TrivialCases) {
  ComplexLattice3 truth({2, 1, 1});
  truth(0, 0, 0) = Complex(1.0, 2.0);
  truth(1, 0, 0) = Complex(-1.0, 0.5);
  NdArray<Complex, 5> est({2, 3, 2, 1, 1});
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t j = 0; j < 2; ++j) {
      est(0, r, j, 0, 0) = truth(j, 0, 0);
      est(1, r, j, 0, 0) = truth(j, 0, 0) + 0.25;
    }
  }
  const auto out = rimse(est, truth);
  EXPECT_EQ(out(0, 0, 0), 0.0);
  EXPECT_NEAR(out(0, 0, 1), 0.25, 1e-15);
  try {
    (void)rimse(est, ComplexLattice3({3, 1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::grid_mismatch);
  }
}

TEST(RimseStudy, OverrideWithTruthGivesZero) {
  const std::vector<double> lv{0.25, 0.5, 0.75};
  const auto truth_state = quantile_sd(qar1_model(), 64, lv, 4, 1, SdType::copula);
  const auto truth = truth_state.quantity();
  RimseStudyConfig cfg;
  cfg.model = qar1_model();
  cfg.N = 64;
  cfg.R = 1;
  cfg.levels = lv;
  const auto freqs = default_study_frequencies();
  const auto tv = truth.get_values(freqs, lv, lv);
  cfg.estimate_override = [&](std::size_t, NdArray<Complex, 4>& est) {
    for (std::size_t e = 0; e < 4; ++e) {
      for (std::size_t j = 0; j < freqs.size(); ++j) {
        for (std::size_t a = 0; a < 3; ++a) {
          for (std::size_t c = 0; c < 3; ++c) est(e, j, a, c) = tv(j, a, c, 0);
        }
      }
    }
  };
  const auto res = run_rimse_study(cfg, truth);
  for (double v : res.rimse.flat()) EXPECT_EQ(v, 0.0);
}

TEST(RimseStudy, TruthMustCoverFrequencies) {
  const auto truth = quantile_sd(qar1_model(), 48, {0.5}, 2, 1, SdType::copula).quantity();
  RimseStudyConfig cfg;
  cfg.model = qar1_model();
  cfg.N = 64;
  cfg.R = 1;
  cfg.levels = {0.5};
  EXPECT_THROW((void)run_rimse_study(cfg, truth), Error);
}
