// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cli/result_document.hpp"

namespace qspec::cli {

struct PlotOptions {
  std::vector<double> levels;  ///< empty: all levels of the document
  double freq_min = 0.0;       ///< exclusive
  double freq_max = 3.141592653589793;
};

/// K x K panel figure of the point estimate: real parts on and below the
/// diagonal, imaginary parts above it, with confidence ribbons when the
/// document carries a band. Frequencies in (freq_min, freq_max] are drawn.
/// Throws qspec::Error(UnknownLevel) for levels not in the document.
[[nodiscard]] std::string render_svg(const ResultDocument& doc, const PlotOptions& options);

}  // namespace qspec::cli
