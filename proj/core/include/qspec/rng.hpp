// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace qspec {

/// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: the output
/// is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  [[nodiscard]] static Counter generate(Counter counter, Key key) noexcept;
};

/// Splittable stream over Philox4x32-10.
///
/// A stream is the triple (seed, stream id, position). The seed is the Philox
/// key; the stream id occupies the high half of the counter and the draw
/// position the low half, so `split(i)` yields a substream that is a pure
/// function of (seed, parent id, i). Substreams never depend on how many draws
/// the parent has made, which is what keeps parallel and resumed runs
/// bit-identical.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0,
                        std::uint64_t position = 0) noexcept
      : seed_(seed), id_(stream_id), pos_(position) {}

  [[nodiscard]] RandomStream split(std::uint64_t index) const noexcept;

  std::uint64_t next_u64() noexcept;
  result_type operator()() noexcept { return next_u64(); }
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  /// Unbiased draw from {0, ..., bound - 1}; bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound) noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const noexcept { return id_; }
  [[nodiscard]] std::uint64_t position() const noexcept { return pos_; }

 private:
  std::uint64_t seed_;
  std::uint64_t id_;
  std::uint64_t pos_;
  std::uint64_t cached_block_ = std::numeric_limits<std::uint64_t>::max();
  Philox4x32::Counter cached_{};
};

}  // namespace qspec
