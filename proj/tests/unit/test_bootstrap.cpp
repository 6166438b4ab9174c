// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "qspec/bootstrap.hpp"
#include "qspec/error.hpp"
#include "qspec/parallel.hpp"
#include "qspec/rng.hpp"

using namespace qspec;

TEST(Philox, KnownAnswers) {
  using C = Philox4x32::Counter;
  EXPECT_EQ(Philox4x32::generate(C{0, 0, 0, 0}, {0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, PositionResumesSequence) {
  RandomStream a(7);
  std::vector<std::uint64_t> first(9);
  for (auto& v : first) v = a();
  RandomStream b(7, 0, 5);
  for (std::size_t i = 5; i < first.size(); ++i) EXPECT_EQ(b(), first[i]);
  EXPECT_EQ(b.position(), 9u);
}

TEST(RandomStream, SplitsAreDistinctAndStable) {
  const RandomStream master(2581);
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 200; ++i) {
    RandomStream s = master.split(i);
    RandomStream again = master.split(i);
    const auto v = s();
    EXPECT_EQ(v, again());
    firsts.insert(v);
  }
  EXPECT_EQ(firsts.size(), 200u);
  EXPECT_NE(RandomStream(1).split(0)(), RandomStream(2).split(0)());
}

TEST(RandomStream, UniformInOpenInterval) {
  RandomStream s(3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(MovingBlocks, FullLengthBlockIsIdentity) {
  const auto pos = mbb_positions(10, 10, 5, RandomStream(1));
  std::vector<std::size_t> id(10);
  std::iota(id.begin(), id.end(), std::size_t{0});
  for (const auto& p : pos) EXPECT_EQ(p, id);
}

TEST(MovingBlocks, BlocksAreConsecutiveAndTruncated) {
  const auto pos = mbb_positions(5, 2, 50, RandomStream(9));
  for (const auto& p : pos) {
    ASSERT_EQ(p.size(), 5u);
    for (std::size_t k = 0; k + 1 < p.size(); k += 2) EXPECT_EQ(p[k + 1], p[k] + 1);
    for (auto v : p) EXPECT_LT(v, 5u);
  }
}

TEST(MovingBlocks, UnitBlocksAreUniform) {
  // Chi-square goodness of fit over 10^5 draws, 9 degrees of freedom,
  // critical value 21.666 at level 0.01.
  const std::size_t n = 10;
  const auto pos = mbb_positions(n, 1, 10000, RandomStream(123));
  std::vector<double> counts(n);
  for (const auto& p : pos) {
    for (auto v : p) counts[v] += 1.0;
  }
  const double expected = 1e5 / static_cast<double>(n);
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 21.666);
}

TEST(MovingBlocks, IndependentOfThreadCount) {
  set_max_threads(1);
  const auto a = mbb_positions(100, 7, 40, RandomStream(5));
  set_max_threads(4);
  const auto b = mbb_positions(100, 7, 40, RandomStream(5));
  set_max_threads(0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[3], mbb_replicate(100, 7, RandomStream(5).split(3)));
}

TEST(MovingBlocks, ValidatesSpec) {
  try {
    validate_boot_spec({10, 0, 1}, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_block_length);
  }
  EXPECT_THROW(validate_boot_spec({10, 9, 1}, 8), Error);
  EXPECT_THROW(validate_boot_spec({0, 2, 1}, 8), Error);
  EXPECT_NO_THROW(validate_boot_spec({1, 8, 1}, 8));
}
