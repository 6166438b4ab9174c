// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "qspec/freq_rep.hpp"
#include "qspec/qspec_quantity.hpp"

namespace qspec {

/// Quantile periodogram (2 pi n)^{-1} d(omega, tau1) conj(d(omega, tau2)) on the
/// half grid, for every level pair of the source representation.
class QuantilePG : public QSpecQuantity {
 public:
  QuantilePG(std::shared_ptr<const FreqRep> source, QSpecQuantity values);

  [[nodiscard]] const FreqRep& freq_rep() const noexcept { return *source_; }
  [[nodiscard]] std::shared_ptr<const FreqRep> freq_rep_ptr() const noexcept { return source_; }
  [[nodiscard]] FreqRepKind kind() const noexcept { return source_->kind(); }
  [[nodiscard]] bool is_rank_based() const noexcept { return source_->is_rank_based(); }

 private:
  std::shared_ptr<const FreqRep> source_;
};

[[nodiscard]] QuantilePG quantile_pg(std::shared_ptr<const FreqRep> fr);
[[nodiscard]] QuantilePG quantile_pg(FreqRep fr);

}  // namespace qspec
