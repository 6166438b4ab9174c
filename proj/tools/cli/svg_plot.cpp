// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "qspec/error.hpp"
#include "qspec/grid.hpp"

namespace qspec::cli {
namespace {

constexpr double kPanelW = 220.0;
constexpr double kPanelH = 150.0;
constexpr double kGap = 28.0;
constexpr double kLeft = 80.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 56.0;

double part(const Complex& c, bool real) { return real ? c.real() : c.imag(); }

}  // namespace

std::string render_svg(const ResultDocument& doc, const PlotOptions& options) {
  const auto& q = doc.quantity;
  const std::vector<double> requested =
      options.levels.empty() ? std::vector<double>(q.levels1().begin(), q.levels1().end()) : options.levels;
  const auto rows = level_indices(q.levels1(), requested);
  const auto cols = level_indices(q.levels2(), requested);
  if (!(options.freq_max > options.freq_min)) {
    throw Error(ErrorCode::invalid_argument, "freq-max must exceed freq-min");
  }

  const auto freqs = q.frequencies();
  std::vector<std::size_t> js;
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    if (freqs[j] > options.freq_min && freqs[j] <= options.freq_max + frequency_tolerance) js.push_back(j);
  }
  if (js.empty()) throw Error(ErrorCode::invalid_argument, "no stored frequency in the requested range");

  const std::size_t K = requested.size();
  const double width = kLeft + static_cast<double>(K) * (kPanelW + kGap);
  const double height = kTop + static_cast<double>(K) * (kPanelH + kGap) + kBottom;
  const auto& v = q.values();

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n",
      width, height, width, height);
  svg += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width, height);
  svg += fmt::format("<text x=\"{:.1f}\" y=\"20\" font-size=\"14\">{}</text>\n", kLeft, doc.kind);

  for (std::size_t a = 0; a < K; ++a) {
    for (std::size_t c = 0; c < K; ++c) {
      const bool real = a >= c;
      const double x0 = kLeft + static_cast<double>(c) * (kPanelW + kGap);
      const double y0 = kTop + static_cast<double>(a) * (kPanelH + kGap);

      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t j : js) {
        const double y = part(v(j, rows[a], cols[c], 0), real);
        lo = std::min(lo, y);
        hi = std::max(hi, y);
        if (doc.ci) {
          lo = std::min(lo, part(doc.ci->lower(j, rows[a], cols[c]), real));
          hi = std::max(hi, part(doc.ci->upper(j, rows[a], cols[c]), real));
        }
      }
      if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
        const double pad = std::max(1e-3, 0.1 * std::abs(hi));
        lo -= pad;
        hi += pad;
      }
      const auto sx = [&](double w) {
        return x0 + (w - options.freq_min) / (options.freq_max - options.freq_min) * kPanelW;
      };
      const auto sy = [&](double y) { return y0 + kPanelH - (y - lo) / (hi - lo) * kPanelH; };

      svg += fmt::format(
          "<g class=\"panel\" data-row=\"{}\" data-col=\"{}\" data-part=\"{}\" data-xmin=\"{:.10g}\" "
          "data-xmax=\"{:.10g}\">\n",
          a, c, real ? "re" : "im", options.freq_min, options.freq_max);
      svg += fmt::format(
          "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"#444\"/>\n", x0,
          y0, kPanelW, kPanelH);
      if (doc.ci) {
        std::string pts;
        for (std::size_t j : js) {
          pts += fmt::format("{:.2f},{:.2f} ", sx(freqs[j]), sy(part(doc.ci->upper(j, rows[a], cols[c]), real)));
        }
        for (auto it = js.rbegin(); it != js.rend(); ++it) {
          pts += fmt::format("{:.2f},{:.2f} ", sx(freqs[*it]), sy(part(doc.ci->lower(*it, rows[a], cols[c]), real)));
        }
        pts.pop_back();
        svg += fmt::format("<polygon class=\"ci\" points=\"{}\" fill=\"#9ecae1\" fill-opacity=\"0.6\"/>\n", pts);
      }
      std::string line;
      for (std::size_t j : js) {
        line += fmt::format("{:.2f},{:.2f} ", sx(freqs[j]), sy(part(v(j, rows[a], cols[c], 0), real)));
      }
      line.pop_back();
      svg += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#08306b\" stroke-width=\"1.2\"/>\n", line);
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"9\">{}</text>\n", x0 + 4, y0 + 11,
                         real ? "Re" : "Im");
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"9\" text-anchor=\"end\">{:.3g}</text>\n",
                         x0 - 3, y0 + 9, hi);
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"9\" text-anchor=\"end\">{:.3g}</text>\n",
                         x0 - 3, y0 + kPanelH, lo);
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"9\">{:.3g}</text>\n", x0,
                         y0 + kPanelH + 11, options.freq_min);
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"9\" text-anchor=\"end\">{:.3g}</text>\n",
                         x0 + kPanelW, y0 + kPanelH + 11, options.freq_max);
      svg += "</g>\n";
    }
    svg += fmt::format(
        "<text class=\"row-label\" x=\"12\" y=\"{:.2f}\" transform=\"rotate(-90 12 {:.2f})\" "
        "text-anchor=\"middle\">τ1 = {:g}</text>\n",
        kTop + static_cast<double>(a) * (kPanelH + kGap) + kPanelH / 2,
        kTop + static_cast<double>(a) * (kPanelH + kGap) + kPanelH / 2, requested[a]);
  }
  for (std::size_t c = 0; c < K; ++c) {
    svg += fmt::format("<text class=\"col-label\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">τ2 = {:g}</text>\n",
                       kLeft + static_cast<double>(c) * (kPanelW + kGap) + kPanelW / 2, height - 14, requested[c]);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace qspec::cli
