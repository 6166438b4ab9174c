// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/bootstrap.hpp"

#include <string>

#include "qspec/error.hpp"
#include "qspec/parallel.hpp"

namespace qspec {

void validate_boot_spec(const BootSpec& spec, std::size_t n) {
  if (spec.replicates == 0) {
    throw Error(ErrorCode::invalid_argument, "bootstrap needs at least one replicate");
  }
  if (spec.block_length == 0 || spec.block_length > n) {
    throw Error(ErrorCode::invalid_block_length,
                "block length " + std::to_string(spec.block_length) + " outside [1, " +
                    std::to_string(n) + "]");
  }
}

std::vector<std::size_t> mbb_replicate(std::size_t n, std::size_t block_length,
                                       RandomStream stream) {
  if (block_length == 0 || block_length > n) {
    throw Error(ErrorCode::invalid_block_length, "block length outside [1, n]");
  }
  const std::size_t starts = n - block_length + 1;
  std::vector<std::size_t> out;
  out.reserve(n);
  while (out.size() < n) {
    const auto start = static_cast<std::size_t>(stream.uniform_index(starts));
    for (std::size_t i = 0; i < block_length && out.size() < n; ++i) out.push_back(start + i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> mbb_positions(std::size_t n, std::size_t block_length,
                                                    std::size_t replicates,
                                                    const RandomStream& master) {
  std::vector<std::vector<std::size_t>> out(replicates);
  parallel_for(replicates, [&](std::size_t b) { out[b] = mbb_replicate(n, block_length, master.split(b)); });
  return out;
}

}  // namespace qspec
