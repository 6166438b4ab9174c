// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qspec/inference.hpp"
#include "qspec/qspec_quantity.hpp"

namespace qspec::cli {

inline constexpr int schema_version = 1;

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON form of a QSpecQuantity: values are nested [b][j][k1][k2] lists of
/// [re, im] pairs.
struct ResultDocument {
  std::string kind;
  nlohmann::json metadata = nlohmann::json::object();
  QSpecQuantity quantity;
  std::optional<ConfidenceBand> ci;
};

/// Metadata common to every document: command line, seed and creation time
/// (SOURCE_DATE_EPOCH when set).
[[nodiscard]] nlohmann::json base_metadata(const std::vector<std::string>& command_line,
                                           std::optional<std::uint64_t> seed);
[[nodiscard]] std::string creation_timestamp();

[[nodiscard]] nlohmann::json to_json(const ResultDocument& doc);
/// Throws DocumentError on schema or shape problems.
[[nodiscard]] ResultDocument document_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json lattice_to_json(const ComplexLattice3& lattice);

/// Writes to the file `out`, or to standard_output when out is empty or "-".
void write_text(const std::string& text, const std::string& out, std::ostream& standard_output);
[[nodiscard]] ResultDocument read_document(const std::filesystem::path& path);

}  // namespace qspec::cli
