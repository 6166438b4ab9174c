// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qspec/rng.hpp"

namespace qspec {

/// Moving-blocks bootstrap settings.
struct BootSpec {
  std::size_t replicates = 0;    ///< B >= 1
  std::size_t block_length = 1;  ///< 1 <= l <= n
  std::uint64_t seed = 0;

  friend bool operator==(const BootSpec&, const BootSpec&) = default;
};

/// Throws InvalidBlockLength or InvalidArgument.
void validate_boot_spec(const BootSpec& spec, std::size_t n);

/// One moving-blocks replicate: ceil(n/l) blocks of l consecutive positions,
/// each starting uniformly in {0, ..., n-l}, concatenated and cut to length n.
[[nodiscard]] std::vector<std::size_t> mbb_replicate(std::size_t n, std::size_t block_length,
                                                     RandomStream stream);

/// B replicates; replicate b draws from master.split(b).
[[nodiscard]] std::vector<std::vector<std::size_t>> mbb_positions(std::size_t n,
                                                                  std::size_t block_length,
                                                                  std::size_t replicates,
                                                                  const RandomStream& master);

}  // namespace qspec
