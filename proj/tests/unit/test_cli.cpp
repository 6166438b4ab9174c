// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/csv.hpp"
#include "cli/result_document.hpp"
#include "json.hpp"
#include "qspec/quantile_sd.hpp"
#include "qspec/smoothed_pg.hpp"

using namespace qspec;
namespace fs = std::filesystem;
using nlohmann::json;
constexpr double pi = std::numbers::pi;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qspec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_series(const std::string& name, const std::vector<double>& y, bool header = true) const {
    std::ofstream f(path(name));
    if (header) f << "value,other\n";
    for (double v : y) f << v << ",1\n";
    return path(name);
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "qspec");
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  json read_json(const std::string& p) const {
    std::ifstream f(p);
    return json::parse(f);
  }

  static std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g;
    std::vector<double> y(n);
    for (auto& v : y) v = g(gen);
    return y;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::string slurp(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Csv, HeaderDetectionAndFirstColumn) {
  EXPECT_EQ(cli::parse_series_csv("price,volume\n1.5,3\n-2,4\n"), (std::vector<double>{1.5, -2.0}));
  EXPECT_EQ(cli::parse_series_csv("1\n2\r\n\n3e1\n"), (std::vector<double>{1.0, 2.0, 30.0}));
  EXPECT_THROW((void)cli::parse_series_csv("a\nb\n"), cli::CsvError);
  EXPECT_THROW((void)cli::parse_series_csv("1\n"), cli::CsvError);
  EXPECT_THROW((void)cli::parse_series_csv("1\n2,5\nx\n"), cli::CsvError);
}

TEST_F(CliTest, HandExamplePeriodogram) {
  const auto in = write_series("s.csv", {3, 1, 2, 0});
  ASSERT_EQ(run({"pg", in, "--type", "clipped", "--rank", "true", "--levels", "0.5", "--out", path("pg.json")}), 0);
  const auto j = read_json(path("pg.json"));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_NEAR(j["values"][0][2][0][0][0].get<double>(), 1.0 / (2 * pi), 1e-15);
  EXPECT_EQ(j["values"][0][2][0][0][1].get<double>(), 0.0);
}

TEST_F(CliTest, ExitCodes) {
  const auto in = write_series("s.csv", gaussian(32, 1));
  EXPECT_EQ(run({"pg", in, "--type", "qr", "--levels", "0", "0.5"}), 3);
  EXPECT_EQ(run({"pg", in, "--type", "qr", "--levels", "0.5", "1.2"}), 3);
  EXPECT_EQ(run({"pg", in, "--levels", "0.6", "0.5"}), 3);
  std::ofstream(path("bad.csv")) << "1\n2\nabc\n";
  EXPECT_EQ(run({"pg", path("bad.csv")}), 2);
  EXPECT_EQ(run({"pg", path("missing.csv")}), 2);
  EXPECT_NE(run({"pg"}), 0);
}

TEST_F(CliTest, BootstrapSlabs) {
  const auto in = write_series("s.csv", gaussian(64, 2));
  ASSERT_EQ(run({"pg", in, "--boot-B", "250", "--boot-l", "32", "--seed", "3", "--levels", "0.5", "--out",
                 path("pg.json")}),
            0);
  const auto doc = cli::read_document(path("pg.json"));
  EXPECT_EQ(doc.quantity.replicate_slabs(), 251u);
}

TEST_F(CliTest, DocumentRoundTripIsLossless) {
  const auto in = write_series("s.csv", gaussian(37, 4));
  ASSERT_EQ(run({"pg", in, "--boot-B", "3", "--boot-l", "5", "--out", path("pg.json")}), 0);
  const auto doc = cli::read_document(path("pg.json"));
  const auto again = cli::document_from_json(cli::to_json(doc));
  EXPECT_EQ(again.quantity.values(), doc.quantity.values());
  EXPECT_EQ(cli::to_json(again).dump(), read_json(path("pg.json")).dump());
  json j = read_json(path("pg.json"));
  j["schema_version"] = 99;
  EXPECT_THROW((void)cli::document_from_json(j), cli::DocumentError);
}

TEST_F(CliTest, SmoothingDocumentMatchesLibrary) {
  const auto y = gaussian(200, 5);
  const auto in = write_series("s.csv", y);
  ASSERT_EQ(run({"pg", in, "--levels", "0.1", "0.5", "--out", path("pg.json")}), 0);
  ASSERT_EQ(run({"smooth", path("pg.json"), "--kernel", "epanechnikov", "--bw", "0.07", "--out", path("s.json")}), 0);
  const auto got = cli::read_document(path("s.json"));
  const auto lib = smooth_pg(quantile_pg(clipped_ft(TimeSeries(y), {0.1, 0.5}, true)),
                             KernelWeight(Kernel::epanechnikov, 0.07, 200));
  EXPECT_EQ(got.quantity.values(), lib.values());
  ASSERT_EQ(run({"smooth", in, "--levels", "0.1", "0.5", "--bw", "0.07", "--out", path("s2.json")}), 0);
  EXPECT_EQ(cli::read_document(path("s2.json")).quantity.values(), lib.values());
}

TEST_F(CliTest, WeightAndBandCompatibility) {
  const auto in = write_series("s.csv", gaussian(64, 6));
  ASSERT_EQ(run({"pg", in, "--levels", "0.5", "--out", path("pg.json")}), 0);
  EXPECT_EQ(run({"smooth", path("pg.json"), "--bw", "0.3", "--ci", "boot.full"}), 4);
  EXPECT_EQ(run({"smooth", path("pg.json"), "--weight", "specdistr", "--ci", "normal"}), 4);
  ASSERT_EQ(run({"smooth", path("pg.json"), "--bw", "0.3", "--ci", "normal", "--out", path("n.json")}), 0);
  const auto doc = cli::read_document(path("n.json"));
  ASSERT_TRUE(doc.ci.has_value());
  EXPECT_EQ(doc.ci->method, CiMethod::normal);
  ASSERT_EQ(run({"pg", in, "--levels", "0.5", "--boot-B", "30", "--boot-l", "8", "--out", path("b.json")}), 0);
  EXPECT_EQ(run({"smooth", path("b.json"), "--bw", "0.3", "--ci", "boot.full", "--out", path("bb.json")}), 0);
}

TEST_F(CliTest, SpecDistrIsMonotoneOnDiagonal) {
  const auto in = write_series("s.csv", gaussian(100, 7));
  ASSERT_EQ(run({"smooth", in, "--levels", "0.3", "0.7", "--weight", "specdistr", "--out", path("c.json")}), 0);
  const auto doc = cli::read_document(path("c.json"));
  const auto& v = doc.quantity.values();
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t j = 1; j < v.extent(0); ++j) EXPECT_GE(v(j, k, k, 0).real(), v(j - 1, k, k, 0).real());
  }
}

TEST_F(CliTest, ResumeEqualsFreshRun) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> common{"--model", "qar1", "--N", "512", "--levels", "0.25", "0.5", "0.75", "--seed", "2581"};
  auto args = std::vector<std::string>{"sd", "new", "--R", "100", "--state", path("a.state"), "--out", path("a.json")};
  args.insert(args.end(), common.begin(), common.end());
  ASSERT_EQ(run(args), 0);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 60.0);
  ASSERT_EQ(run({"sd", "resume", "--state", path("a.state"), "--add-R", "100", "--out", path("a2.json")}), 0);
  args = {"sd", "new", "--R", "200", "--state", path("b.state"), "--out", path("b.json")};
  args.insert(args.end(), common.begin(), common.end());
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(slurp(path("a.state")), slurp(path("b.state")));
  EXPECT_EQ(read_json(path("a2.json"))["values"], read_json(path("b.json"))["values"]);
  EXPECT_EQ(run({"sd", "resume", "--state", path("a.state"), "--add-R", "1", "--levels", "0.25", "0.5"}), 5);
  EXPECT_EQ(run({"sd", "resume", "--state", path("a.state"), "--add-R", "1", "--N", "256"}), 5);
  ASSERT_EQ(run({"isd", "--state", path("a.state"), "--out", path("i.json")}), 0);
  const auto isd = cli::read_document(path("i.json"));
  EXPECT_EQ(isd.quantity.layout(), FrequencyLayout::explicit_grid);
  EXPECT_EQ(isd.quantity.grid_indices().size(), 513u);
  std::string bytes = slurp(path("a.state"));
  bytes[bytes.size() / 2] ^= 0x10;
  std::ofstream(path("c.state"), std::ios::binary) << bytes;
  EXPECT_EQ(run({"sd", "resume", "--state", path("c.state"), "--add-R", "1"}), 5);
}

TEST_F(CliTest, OutputsIndependentOfThreads) {
  const auto in = write_series("s.csv", gaussian(128, 8));
  ASSERT_EQ(run({"--threads", "1", "pg", in, "--type", "qr", "--boot-B", "4", "--boot-l", "8", "--out", path("a.json")}), 0);
  ASSERT_EQ(run({"--threads", "3", "pg", in, "--type", "qr", "--boot-B", "4", "--boot-l", "8", "--out", path("b.json")}), 0);
  EXPECT_EQ(read_json(path("a.json"))["values"], read_json(path("b.json"))["values"]);
}

TEST_F(CliTest, PlotPanels) {
  const auto in = write_series("s.csv", gaussian(128, 9));
  ASSERT_EQ(run({"smooth", in, "--bw", "0.3", "--ci", "normal", "--out", path("s.json")}), 0);
  ASSERT_EQ(run({"plot", path("s.json"), "--out", path("p.svg")}), 0);
  const std::string svg = slurp(path("p.svg"));
  const auto count = [&](const std::string& needle) {
    std::size_t c = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++c;
    return c;
  };
  EXPECT_EQ(count("class=\"panel\""), 9u);
  EXPECT_EQ(count("data-part=\"im\""), 3u);
  EXPECT_EQ(count("class=\"ci\""), 9u);
  ASSERT_EQ(run({"plot", path("s.json"), "--out", path("p2.svg")}), 0);
  EXPECT_EQ(slurp(path("p2.svg")), svg);

  ASSERT_EQ(run({"plot", path("s.json"), "--levels", "0.5", "--freq-max", std::to_string(pi / 5)}), 0);
  const std::string one = out_.str();
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n') > 0, true);
  std::smatch m;
  ASSERT_TRUE(std::regex_search(one, m, std::regex("data-xmax=\"([^\"]+)\"")));
  EXPECT_NEAR(std::stod(m[1]), pi / 5, 1e-6);
  EXPECT_EQ(one.find("data-part=\"im\""), std::string::npos);
  EXPECT_EQ(run({"plot", path("s.json"), "--levels", "0.4"}), 2);
}

TEST_F(CliTest, StudyNeedsCoveringTruth) {
  const auto st = quantile_sd(qar1_model(), 48, {0.25, 0.5, 0.75}, 2, 1, SdType::copula);
  save_state(st, path("t.state"));
  EXPECT_EQ(run({"study-rimse", "--N", "128", "--R", "2", "--truth-state", path("t.state")}), 5);
  const auto st2 = quantile_sd(qar1_model(), 64, {0.5}, 2, 1, SdType::copula);
  save_state(st2, path("t2.state"));
  EXPECT_EQ(run({"study-rimse", "--N", "64", "--R", "2", "--truth-state", path("t2.state")}), 5);
  const auto st3 = quantile_sd(qar1_model(), 64, {0.25, 0.5, 0.75}, 3, 1, SdType::copula);
  save_state(st3, path("t3.state"));
  ASSERT_EQ(run({"study-rimse", "--N", "64", "--R", "3", "--truth-state", path("t3.state"), "--out", path("r.csv"),
                 "--errors-out", path("e.json")}),
            0);
  const std::string csv = slurp(path("r.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "tau1,tau2,CR,LP,sCR,sLP");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  const auto e = read_json(path("e.json"));
  EXPECT_EQ(e["errors"]["sLP"].size(), 3u);
  EXPECT_EQ(e["errors"]["CR"][0].size(), 16u);
}

TEST_F(CliTest, CreationTimeHonoursSourceDateEpoch) {
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  EXPECT_EQ(cli::creation_timestamp(), "1970-01-01T00:00:00Z");
  unsetenv("SOURCE_DATE_EPOCH");
}
