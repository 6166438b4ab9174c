// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace qspec::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<double> parse_series_csv(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<double> out;
  std::size_t line_no = 0;
  bool first_row = true;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string_view field = line.substr(0, line.find(','));
    const auto v = parse_number(field);
    if (!v) {
      if (first_row) {
        first_row = false;
        continue;
      }
      throw CsvError("line " + std::to_string(line_no) + ": '" + std::string(trim(field)) + "' is not a number");
    }
    if (!std::isfinite(*v)) throw CsvError("line " + std::to_string(line_no) + ": value is not finite");
    first_row = false;
    out.push_back(*v);
  }
  if (out.size() < 2) throw CsvError("need at least two observations, found " + std::to_string(out.size()));
  return out;
}

std::vector<double> read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_series_csv(ss.str());
}

}  // namespace qspec::cli
