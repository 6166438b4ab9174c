// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace qspec {

/// Caps the number of worker threads used by the library; 0 restores the
/// default (hardware concurrency).
void set_max_threads(std::size_t threads) noexcept;
[[nodiscard]] std::size_t max_threads() noexcept;

/// Runs body(i) for i in [0, count). Callers write results into
/// position-addressed slots, so output never depends on the thread count.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qspec
