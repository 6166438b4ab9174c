// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace qspec::cli {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First column of a CSV text. A first row whose first field is not a number
/// is treated as a header. Throws CsvError.
[[nodiscard]] std::vector<double> parse_series_csv(std::string_view text);
[[nodiscard]] std::vector<double> read_series_csv(const std::filesystem::path& path);

}  // namespace qspec::cli
