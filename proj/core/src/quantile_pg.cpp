// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/quantile_pg.hpp"

#include <numbers>
#include <vector>

#include "qspec/error.hpp"
#include "qspec/parallel.hpp"

namespace qspec {

QuantilePG::QuantilePG(std::shared_ptr<const FreqRep> source, QSpecQuantity values)
    : QSpecQuantity(std::move(values)), source_(std::move(source)) {}

QuantilePG quantile_pg(std::shared_ptr<const FreqRep> fr) {
  if (!fr) throw Error(ErrorCode::invalid_argument, "null frequency representation");
  const std::size_t n = fr->n();
  const std::size_t J = n / 2 + 1;
  const std::size_t K = fr->levels().size();
  const std::size_t B1 = fr->replicate_slabs();
  const double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
  const auto& d = fr->values();

  ComplexLattice4 values({J, K, K, B1});
  parallel_for(J, [&](std::size_t j) {
    for (std::size_t k1 = 0; k1 < K; ++k1) {
      for (std::size_t k2 = k1; k2 < K; ++k2) {
        for (std::size_t b = 0; b < B1; ++b) {
          const Complex v = scale * d(j, k1, b) * std::conj(d(j, k2, b));
          values(j, k1, k2, b) = v;
          values(j, k2, k1, b) = std::conj(v);
        }
      }
      for (std::size_t b = 0; b < B1; ++b) {
        values(j, k1, k1, b) = Complex(values(j, k1, k1, b).real(), 0.0);
      }
    }
  });
  std::vector<double> levels(fr->levels().begin(), fr->levels().end());
  auto q = QSpecQuantity::hermitian(n, levels, levels, std::move(values));
  return QuantilePG(std::move(fr), std::move(q));
}

QuantilePG quantile_pg(FreqRep fr) {
  return quantile_pg(std::make_shared<const FreqRep>(std::move(fr)));
}

}  // namespace qspec
