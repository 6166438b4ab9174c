// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "cli/result_document.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>

#include "qspec/error.hpp"
#include "qspec/grid.hpp"

namespace qspec::cli {
namespace {

using nlohmann::json;

json pair(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex unpair(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw DocumentError("value entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* name) {
  if (!j.contains(name)) throw DocumentError(std::string("document lacks '") + name + "'");
  return j.at(name);
}

void expect_size(const json& j, std::size_t size, const char* what) {
  if (!j.is_array() || j.size() != size) throw DocumentError(std::string("wrong extent in ") + what);
}

ComplexLattice3 lattice_from_json(const json& j, std::size_t J, std::size_t K1, std::size_t K2) {
  ComplexLattice3 out({J, K1, K2});
  expect_size(j, J, "confidence band");
  for (std::size_t a = 0; a < J; ++a) {
    expect_size(j[a], K1, "confidence band");
    for (std::size_t b = 0; b < K1; ++b) {
      expect_size(j[a][b], K2, "confidence band");
      for (std::size_t c = 0; c < K2; ++c) out(a, b, c) = unpair(j[a][b][c]);
    }
  }
  return out;
}

}  // namespace

std::string creation_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json base_metadata(const std::vector<std::string>& command_line, std::optional<std::uint64_t> seed) {
  json m = json::object();
  m["command_line"] = command_line;
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["created"] = creation_timestamp();
  return m;
}

json lattice_to_json(const ComplexLattice3& lattice) {
  json out = json::array();
  for (std::size_t a = 0; a < lattice.extent(0); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < lattice.extent(1); ++b) {
      json cell = json::array();
      for (std::size_t c = 0; c < lattice.extent(2); ++c) cell.push_back(pair(lattice(a, b, c)));
      row.push_back(std::move(cell));
    }
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const ResultDocument& doc) {
  const auto& q = doc.quantity;
  const auto& v = q.values();
  json j = json::object();
  j["schema_version"] = schema_version;
  j["kind"] = doc.kind;
  json meta = doc.metadata;
  meta["n"] = q.n();
  meta["layout"] = q.layout() == FrequencyLayout::hermitian_half ? "hermitian_half" : "explicit_grid";
  meta["frequency_indices"] = std::vector<std::size_t>(q.grid_indices().begin(), q.grid_indices().end());
  j["metadata"] = std::move(meta);
  j["frequencies"] = q.frequencies();
  j["levels1"] = std::vector<double>(q.levels1().begin(), q.levels1().end());
  j["levels2"] = std::vector<double>(q.levels2().begin(), q.levels2().end());
  json values = json::array();
  for (std::size_t b = 0; b < q.replicate_slabs(); ++b) {
    json slab = json::array();
    for (std::size_t jj = 0; jj < v.extent(0); ++jj) {
      json rows = json::array();
      for (std::size_t k1 = 0; k1 < v.extent(1); ++k1) {
        json cols = json::array();
        for (std::size_t k2 = 0; k2 < v.extent(2); ++k2) cols.push_back(pair(v(jj, k1, k2, b)));
        rows.push_back(std::move(cols));
      }
      slab.push_back(std::move(rows));
    }
    values.push_back(std::move(slab));
  }
  j["values"] = std::move(values);
  if (doc.ci) {
    j["ci"] = {{"method", std::string(to_string(doc.ci->method))},
               {"alpha", doc.ci->alpha},
               {"lower", lattice_to_json(doc.ci->lower)},
               {"upper", lattice_to_json(doc.ci->upper)}};
  }
  return j;
}

ResultDocument document_from_json(const json& j) {
  try {
    if (!j.is_object()) throw DocumentError("document is not a JSON object");
    const int version = field(j, "schema_version").get<int>();
    if (version != schema_version) {
      throw DocumentError("unsupported schema version " + std::to_string(version));
    }
    ResultDocument doc;
    doc.kind = field(j, "kind").get<std::string>();
    doc.metadata = field(j, "metadata");
    const auto n = field(doc.metadata, "n").get<std::size_t>();
    const auto layout_name = field(doc.metadata, "layout").get<std::string>();
    auto indices = field(doc.metadata, "frequency_indices").get<std::vector<std::size_t>>();
    auto l1 = field(j, "levels1").get<std::vector<double>>();
    auto l2 = field(j, "levels2").get<std::vector<double>>();
    const json& values = field(j, "values");
    if (!values.is_array() || values.empty()) throw DocumentError("document has no value slabs");
    const std::size_t B1 = values.size();
    const std::size_t J = indices.size();
    ComplexLattice4 lattice({J, l1.size(), l2.size(), B1});
    for (std::size_t b = 0; b < B1; ++b) {
      expect_size(values[b], J, "values");
      for (std::size_t jj = 0; jj < J; ++jj) {
        expect_size(values[b][jj], l1.size(), "values");
        for (std::size_t k1 = 0; k1 < l1.size(); ++k1) {
          expect_size(values[b][jj][k1], l2.size(), "values");
          for (std::size_t k2 = 0; k2 < l2.size(); ++k2) lattice(jj, k1, k2, b) = unpair(values[b][jj][k1][k2]);
        }
      }
    }
    FrequencyLayout layout;
    if (layout_name == "hermitian_half") {
      layout = FrequencyLayout::hermitian_half;
    } else if (layout_name == "explicit_grid") {
      layout = FrequencyLayout::explicit_grid;
    } else {
      throw DocumentError("unknown layout '" + layout_name + "'");
    }
    const std::size_t K1 = l1.size();
    const std::size_t K2 = l2.size();
    doc.quantity = QSpecQuantity(n, layout, std::move(indices), std::move(l1), std::move(l2), std::move(lattice));
    if (j.contains("ci")) {
      const json& c = j.at("ci");
      ConfidenceBand band;
      band.method = parse_ci_method(field(c, "method").get<std::string>());
      band.alpha = field(c, "alpha").get<double>();
      band.lower = lattice_from_json(field(c, "lower"), J, K1, K2);
      band.upper = lattice_from_json(field(c, "upper"), J, K1, K2);
      doc.ci = std::move(band);
    }
    return doc;
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  } catch (const qspec::Error& e) {
    throw DocumentError(std::string("inconsistent document: ") + e.what());
  }
}

void write_text(const std::string& text, const std::string& out, std::ostream& standard_output) {
  if (out.empty() || out == "-") {
    standard_output << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
  f << text;
}

ResultDocument read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j);
}

}  // namespace qspec::cli
