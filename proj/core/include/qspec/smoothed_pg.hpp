// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "qspec/qspec_quantity.hpp"
#include "qspec/quantile_pg.hpp"
#include "qspec/weight.hpp"

namespace qspec {

/// Periodogram convolved with a weight function.
///
/// Kernel weights give a half-grid quantity. The step weight gives cumulated
/// values on the explicit grid j = 0..n-1, which is not conjugate-symmetric.
class SmoothedPG : public QSpecQuantity {
 public:
  SmoothedPG(std::shared_ptr<const QSpecQuantity> source, Weight weight, QSpecQuantity values);

  [[nodiscard]] const QSpecQuantity& source() const noexcept { return *source_; }
  [[nodiscard]] std::shared_ptr<const QSpecQuantity> source_ptr() const noexcept { return source_; }
  [[nodiscard]] const Weight& weight() const noexcept { return weight_; }
  [[nodiscard]] bool is_kernel_smoothed() const noexcept {
    return std::holds_alternative<KernelWeight>(weight_);
  }

 private:
  std::shared_ptr<const QSpecQuantity> source_;
  Weight weight_;
};

/// Smooths a half-grid periodogram lattice covering j = 0..floor(n/2).
/// Throws GridMismatch when the weight was built for another n.
[[nodiscard]] SmoothedPG smooth_pg(std::shared_ptr<const QSpecQuantity> pg, const Weight& weight);
[[nodiscard]] SmoothedPG smooth_pg(const QuantilePG& pg, const Weight& weight);

}  // namespace qspec
