// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/smoothed_pg.hpp"

#include <numbers>
#include <numeric>
#include <vector>

#include "qspec/error.hpp"
#include "qspec/parallel.hpp"

namespace qspec {
namespace {

// Periodogram slab at grid position s in 1..n-1, folded onto the half grid.
struct SourceSlab {
  const Complex* data;
  bool conjugate;
};

SourceSlab source_slab(const ComplexLattice4& values, std::size_t s, std::size_t n) {
  const std::size_t slab = values.slab_size();
  if (2 * s <= n) return {values.flat().data() + s * slab, false};
  return {values.flat().data() + (n - s) * slab, true};
}

void check_source(const QSpecQuantity& pg, std::size_t weight_n) {
  if (pg.layout() != FrequencyLayout::hermitian_half || pg.grid_indices().size() != pg.n() / 2 + 1) {
    throw Error(ErrorCode::invalid_argument, "smoothing needs the periodogram on the full half grid");
  }
  if (weight_n != pg.n()) {
    throw Error(ErrorCode::grid_mismatch, "weight grid size " + std::to_string(weight_n) +
                                              " differs from periodogram size " + std::to_string(pg.n()));
  }
}

ComplexLattice4 kernel_smooth(const QSpecQuantity& pg, const KernelWeight& w) {
  const std::size_t n = pg.n();
  const std::size_t J = n / 2 + 1;
  const auto& src = pg.values();
  const auto& e = src.extents();
  const std::size_t slab = src.slab_size();
  const double step = two_pi / static_cast<double>(n);
  ComplexLattice4 out({J, e[1], e[2], e[3]});

  parallel_for(J, [&](std::size_t j) {
    std::vector<Complex> acc(slab);
    for (std::size_t s = 1; s < n; ++s) {
      const double weight = w.at_offset(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(s));
      if (weight == 0.0) continue;
      const SourceSlab in = source_slab(src, s, n);
      if (in.conjugate) {
        for (std::size_t i = 0; i < slab; ++i) acc[i] += weight * std::conj(in.data[i]);
      } else {
        for (std::size_t i = 0; i < slab; ++i) acc[i] += weight * in.data[i];
      }
    }
    Complex* dst = out.flat().data() + j * slab;
    for (std::size_t i = 0; i < slab; ++i) dst[i] = step * acc[i];
  });
  return out;
}

ComplexLattice4 cumulative_sum(const QSpecQuantity& pg) {
  const std::size_t n = pg.n();
  const auto& src = pg.values();
  const auto& e = src.extents();
  const std::size_t slab = src.slab_size();
  const double step = two_pi / static_cast<double>(n);
  ComplexLattice4 out({n, e[1], e[2], e[3]});
  std::vector<Complex> acc(slab);
  for (std::size_t j = 1; j < n; ++j) {
    const SourceSlab in = source_slab(src, j, n);
    Complex* dst = out.flat().data() + j * slab;
    for (std::size_t i = 0; i < slab; ++i) {
      acc[i] += in.conjugate ? std::conj(in.data[i]) : in.data[i];
      dst[i] = step * acc[i];
    }
  }
  return out;
}

}  // namespace

SmoothedPG::SmoothedPG(std::shared_ptr<const QSpecQuantity> source, Weight weight, QSpecQuantity values)
    : QSpecQuantity(std::move(values)), source_(std::move(source)), weight_(std::move(weight)) {}

SmoothedPG smooth_pg(std::shared_ptr<const QSpecQuantity> pg, const Weight& weight) {
  if (!pg) throw Error(ErrorCode::invalid_argument, "null periodogram");
  check_source(*pg, weight_grid_size(weight));
  const std::size_t n = pg->n();
  std::vector<double> l1(pg->levels1().begin(), pg->levels1().end());
  std::vector<double> l2(pg->levels2().begin(), pg->levels2().end());
  if (const auto* kw = std::get_if<KernelWeight>(&weight)) {
    auto q = QSpecQuantity::hermitian(n, std::move(l1), std::move(l2), kernel_smooth(*pg, *kw));
    return SmoothedPG(std::move(pg), weight, std::move(q));
  }
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  QSpecQuantity q(n, FrequencyLayout::explicit_grid, std::move(indices), std::move(l1), std::move(l2),
                  cumulative_sum(*pg));
  return SmoothedPG(std::move(pg), weight, std::move(q));
}

SmoothedPG smooth_pg(const QuantilePG& pg, const Weight& weight) {
  return smooth_pg(std::make_shared<const QuantilePG>(pg), weight);
}

}  // namespace qspec
