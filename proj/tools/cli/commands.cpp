// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cli/csv.hpp"
#include "cli/result_document.hpp"
#include "cli/svg_plot.hpp"
#include "qspec/error.hpp"
#include "qspec/freq_rep.hpp"
#include "qspec/inference.hpp"
#include "qspec/parallel.hpp"
#include "qspec/quantile_pg.hpp"
#include "qspec/quantile_sd.hpp"
#include "qspec/rimse.hpp"
#include "qspec/smoothed_pg.hpp"

namespace qspec::cli {
namespace {

using nlohmann::json;

struct ExitError {
  int code;
  std::string message;
};

struct PgOptions {
  std::string input;
  std::string type = "clipped";
  std::vector<double> levels{0.25, 0.5, 0.75};
  bool rank = true;
  std::size_t boot_B = 0;
  std::size_t boot_l = 1;
  std::uint64_t seed = 0;
};

struct SmoothOptions {
  std::string kernel = "epanechnikov";
  double bw = 0.07;
  std::string weight = "kernel";
  std::string ci = "none";
  double alpha = 0.1;
};

struct SdOptions {
  std::string model = "qar1";
  std::size_t N = 512;
  std::size_t R = 100;
  std::vector<double> levels{0.25, 0.5, 0.75};
  std::uint64_t seed = 0;
  std::string type = "copula";
  std::string state;
  std::size_t add_R = 0;
};

struct PlotArgs {
  std::string input;
  std::vector<double> levels;
  double freq_min = 0.0;
  double freq_max = 3.141592653589793;
};

struct StudyOptions {
  std::string model = "qar1";
  std::size_t N = 128;
  std::size_t R = 500;
  double bw = 0.3;
  std::string kernel = "epanechnikov";
  std::vector<double> levels{0.25, 0.5, 0.75};
  std::string truth_state;
  std::uint64_t seed = 0;
  std::string errors_out;
};

void add_pg_options(CLI::App* cmd, PgOptions& o) {
  cmd->add_option("--type", o.type, "Frequency representation: clipped or qr")
      ->check(CLI::IsMember({"clipped", "qr"}));
  cmd->add_option("--levels", o.levels, "Quantile levels (or thresholds with --rank false)");
  cmd->add_option("--rank", o.rank, "Use ranks (copula) instead of raw values");
  cmd->add_option("--boot-B", o.boot_B, "Moving-blocks bootstrap replicates");
  cmd->add_option("--boot-l", o.boot_l, "Bootstrap block length");
  cmd->add_option("--seed", o.seed, "Random seed");
}

bool looks_like_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open '" + path + "'");
  char c = 0;
  while (in.get(c)) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    return c == '{';
  }
  return false;
}

// Level sets are checked up front so that any problem with them maps to one exit code.
void check_levels(const std::vector<double>& levels, LevelDomain domain) {
  try {
    validate_levels(levels, domain);
  } catch (const Error& e) {
    throw ExitError{exit_invalid_levels, e.what()};
  }
}

QuantilePG compute_pg(const PgOptions& o) {
  const bool qr = o.type == "qr";
  check_levels(o.levels, qr ? LevelDomain::open_unit : (o.rank ? LevelDomain::closed_unit : LevelDomain::real_line));
  const TimeSeries y(read_series_csv(o.input));
  std::optional<BootSpec> boot;
  if (o.boot_B > 0) boot = BootSpec{o.boot_B, o.boot_l, o.seed};
  return quantile_pg(qr ? qreg_estimator(y, o.levels, o.rank, boot) : clipped_ft(y, o.levels, o.rank, boot));
}

json pg_metadata(const PgOptions& o) {
  json m = json::object();
  m["type"] = o.type;
  m["rank_based"] = o.rank;
  m["boot"] = o.boot_B > 0 ? json{{"method", "moving-blocks"}, {"B", o.boot_B}, {"l", o.boot_l}, {"seed", o.seed}}
                           : json(nullptr);
  return m;
}

std::string dump(const json& j) { return j.dump() + "\n"; }

int cmd_pg(const PgOptions& o, const std::string& out_path, const std::vector<std::string>& argv, std::ostream& out) {
  const auto pg = compute_pg(o);
  ResultDocument doc{"quantile_pg", base_metadata(argv, o.seed), pg, std::nullopt};
  doc.metadata["source"] = pg_metadata(o);
  write_text(dump(to_json(doc)), out_path, out);
  return exit_ok;
}

int cmd_smooth(const PgOptions& po, const SmoothOptions& so, const std::string& out_path,
               const std::vector<std::string>& argv, std::ostream& out) {
  const bool specdistr = so.weight == "specdistr";
  if (specdistr && so.ci != "none") {
    throw ExitError{exit_weight_mismatch, "confidence bands are not available for the specdistr weight"};
  }
  std::shared_ptr<const QSpecQuantity> pg;
  json source = json::object();
  if (looks_like_json(po.input)) {
    auto doc = read_document(po.input);
    source = doc.metadata.contains("source") ? doc.metadata["source"] : json(nullptr);
    pg = std::make_shared<const QSpecQuantity>(std::move(doc.quantity));
  } else {
    pg = std::make_shared<const QuantilePG>(compute_pg(po));
    source = pg_metadata(po);
  }
  const Weight weight = specdistr ? Weight(SpecDistrWeight(pg->n()))
                                  : Weight(KernelWeight(parse_kernel(so.kernel), so.bw, pg->n()));
  const auto spg = smooth_pg(pg, weight);
  std::optional<ConfidenceBand> band;
  if (so.ci != "none") band = confidence_band(spg, so.alpha, parse_ci_method(so.ci));

  ResultDocument doc{"smoothed_pg", base_metadata(argv, po.seed), spg, std::move(band)};
  doc.metadata["source"] = source;
  doc.metadata["weight"] = specdistr ? json{{"kind", "specdistr"}}
                                     : json{{"kind", "kernel"}, {"kernel", so.kernel}, {"bw", so.bw}};
  write_text(dump(to_json(doc)), out_path, out);
  return exit_ok;
}

json sd_metadata(const QuantileSDState& st) {
  return {{"R", st.R},
          {"first_copy", st.first_copy},
          {"model", {{"name", st.model_name}, {"params", st.model_params}}},
          {"type", std::string(to_string(st.type))},
          {"smoothing_halfwidth", sd_smoothing_halfwidth(st.N)}};
}

void emit_sd(const QuantileSDState& st, const std::string& out_path, const std::vector<std::string>& argv,
             std::ostream& out) {
  ResultDocument doc{"quantile_sd", base_metadata(argv, st.seed), st.quantity(), std::nullopt};
  doc.metadata["simulation"] = sd_metadata(st);
  json j = to_json(doc);
  if (const auto se = st.std_error()) j["std_error"] = lattice_to_json(*se);
  write_text(dump(j), out_path, out);
}

int cmd_sd_new(const SdOptions& o, const std::string& out_path, const std::vector<std::string>& argv,
               std::ostream& out) {
  const SdType type = parse_sd_type(o.type);
  check_levels(o.levels, type == SdType::copula ? LevelDomain::open_unit : LevelDomain::real_line);
  const auto st = quantile_sd(make_model(o.model), o.N, o.levels, o.R, o.seed, type);
  save_state(st, o.state);
  emit_sd(st, out_path, argv, out);
  return exit_ok;
}

int cmd_sd_resume(const SdOptions& o, const CLI::App& cmd, const std::string& out_path,
                  const std::vector<std::string>& argv, std::ostream& out) {
  QuantileSDState st = load_state(o.state);
  const auto mismatch = [](const std::string& what) {
    throw ExitError{exit_state_mismatch, "state was created with a different " + what};
  };
  if (cmd.count("--N") > 0 && o.N != st.N) mismatch("N");
  if (cmd.count("--levels") > 0 && o.levels != st.levels) mismatch("level set");
  if (cmd.count("--model") > 0 && o.model != st.model_name) mismatch("model");
  if (cmd.count("--type") > 0 && o.type != to_string(st.type)) mismatch("spectrum type");
  if (cmd.count("--seed") > 0 && o.seed != st.seed) mismatch("seed");
  st = increase_precision(std::move(st), o.add_R);
  save_state(st, o.state);
  emit_sd(st, out_path, argv, out);
  return exit_ok;
}

int cmd_isd(const std::string& state_path, const std::string& out_path, const std::vector<std::string>& argv,
            std::ostream& out) {
  const auto st = load_state(state_path);
  ResultDocument doc{"integr_quantile_sd", base_metadata(argv, st.seed), integr_quantile_sd(st), std::nullopt};
  doc.metadata["simulation"] = sd_metadata(st);
  write_text(dump(to_json(doc)), out_path, out);
  return exit_ok;
}

int cmd_plot(const PlotArgs& o, const std::string& out_path, std::ostream& out) {
  const auto doc = read_document(o.input);
  std::string svg;
  try {
    svg = render_svg(doc, {o.levels, o.freq_min, o.freq_max});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::unknown_level) throw ExitError{exit_malformed_input, e.what()};
    throw;
  }
  write_text(svg, out_path, out);
  return exit_ok;
}

bool level_cover(const QSpecQuantity& q, const std::vector<double>& levels) {
  for (const double l : levels) {
    if (!find_level(q.levels1(), l) || !find_level(q.levels2(), l)) return false;
  }
  return true;
}

int cmd_study(const StudyOptions& o, const std::string& out_path, const std::vector<std::string>& argv,
              std::ostream& out) {
  check_levels(o.levels, LevelDomain::open_unit);
  const auto truth_state = load_state(o.truth_state);
  const QSpecQuantity truth = truth_state.quantity();
  RimseStudyConfig cfg;
  cfg.model = make_model(o.model);
  cfg.N = o.N;
  cfg.R = o.R;
  cfg.kernel = parse_kernel(o.kernel);
  cfg.bw = o.bw;
  cfg.levels = o.levels;
  cfg.seed = o.seed;
  for (const double w : default_study_frequencies()) {
    try {
      (void)grid_multiple(w, truth.n());
    } catch (const Error& e) {
      throw ExitError{exit_state_mismatch, std::string("truth state does not cover the study frequencies: ") + e.what()};
    }
  }
  if (!level_cover(truth, o.levels)) {
    throw ExitError{exit_state_mismatch, "truth state does not contain every requested level"};
  }
  const auto res = run_rimse_study(cfg, truth);

  std::string csv = "tau1,tau2";
  for (const auto name : study_estimator_names) csv += fmt::format(",{}", name);
  csv += "\n";
  for (std::size_t a = 0; a < o.levels.size(); ++a) {
    for (std::size_t c = 0; c < o.levels.size(); ++c) {
      csv += fmt::format("{},{}", o.levels[a], o.levels[c]);
      for (std::size_t e = 0; e < study_estimator_names.size(); ++e) csv += fmt::format(",{:.10g}", res.rimse(a, c, e));
      csv += "\n";
    }
  }
  write_text(csv, out_path, out);

  if (!o.errors_out.empty()) {
    json j = json::object();
    j["schema_version"] = schema_version;
    j["kind"] = "rimse_errors";
    j["metadata"] = base_metadata(argv, o.seed);
    j["metadata"]["N"] = o.N;
    j["metadata"]["R"] = o.R;
    j["metadata"]["bw"] = o.bw;
    j["metadata"]["kernel"] = o.kernel;
    j["metadata"]["truth"] = {{"N", truth_state.N}, {"R", truth_state.R}, {"seed", truth_state.seed}};
    j["frequencies"] = res.frequencies;
    j["levels1"] = res.levels;
    j["levels2"] = res.levels;
    json est = json::object();
    const auto& err = res.errors;
    for (std::size_t e = 0; e < study_estimator_names.size(); ++e) {
      json reps = json::array();
      for (std::size_t r = 0; r < err.extent(1); ++r) {
        ComplexLattice3 slab({err.extent(2), err.extent(3), err.extent(4)});
        for (std::size_t jj = 0; jj < err.extent(2); ++jj) {
          for (std::size_t a = 0; a < err.extent(3); ++a) {
            for (std::size_t c = 0; c < err.extent(4); ++c) slab(jj, a, c) = err(e, r, jj, a, c);
          }
        }
        reps.push_back(lattice_to_json(slab));
      }
      est[std::string(study_estimator_names[e])] = std::move(reps);
    }
    j["errors"] = std::move(est);
    write_text(dump(j), o.errors_out, out);
  }
  return exit_ok;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::level_out_of_range:
      return exit_invalid_levels;
    case ErrorCode::weight_kind_mismatch:
    case ErrorCode::insufficient_replicates:
      return exit_weight_mismatch;
    case ErrorCode::corrupt_state:
      return exit_state_mismatch;
    default:
      return exit_failure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantile spectral analysis of time series"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  if (const char* env = std::getenv("QSPEC_THREADS"); env != nullptr && *env != '\0') {
    threads = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }
  app.add_option("--threads", threads, "Worker threads (0: all cores; default QSPEC_THREADS)");
  std::string out_path = "-";

  PgOptions pg;
  auto* pg_cmd = app.add_subcommand("pg", "Quantile periodogram of a CSV series");
  pg_cmd->add_option("input", pg.input, "CSV file")->required();
  add_pg_options(pg_cmd, pg);
  pg_cmd->add_option("--out", out_path, "Output document (default stdout)");

  PgOptions spg;
  SmoothOptions so;
  auto* smooth_cmd = app.add_subcommand("smooth", "Smoothed quantile periodogram");
  smooth_cmd->add_option("input", spg.input, "Periodogram document or CSV file")->required();
  add_pg_options(smooth_cmd, spg);
  smooth_cmd->add_option("--kernel", so.kernel, "epanechnikov or uniform")
      ->check(CLI::IsMember({"epanechnikov", "uniform", "W0", "W1"}));
  smooth_cmd->add_option("--bw", so.bw, "Kernel bandwidth in (0, pi]");
  smooth_cmd->add_option("--weight", so.weight, "kernel or specdistr")->check(CLI::IsMember({"kernel", "specdistr"}));
  smooth_cmd->add_option("--ci", so.ci, "none, normal or boot.full")
      ->check(CLI::IsMember({"none", "normal", "boot.full"}));
  smooth_cmd->add_option("--alpha", so.alpha, "1 - nominal coverage");
  smooth_cmd->add_option("--out", out_path, "Output document (default stdout)");

  SdOptions sd;
  auto* sd_cmd = app.add_subcommand("sd", "Simulated quantile spectral density of a model");
  sd_cmd->require_subcommand(1);
  auto* sd_new = sd_cmd->add_subcommand("new", "Start a simulation and write its state file");
  auto* sd_resume = sd_cmd->add_subcommand("resume", "Add copies to an existing state file");
  for (auto* c : {sd_new, sd_resume}) {
    c->add_option("--model", sd.model, "qar1, iid-gaussian or iid-uniform");
    c->add_option("--N", sd.N, "Series length");
    c->add_option("--levels", sd.levels, "Levels");
    c->add_option("--seed", sd.seed, "Random seed");
    c->add_option("--type", sd.type, "copula or laplace")->check(CLI::IsMember({"copula", "laplace"}));
    c->add_option("--state", sd.state, "State file")->required();
    c->add_option("--out", out_path, "Output document (default stdout)");
  }
  sd_new->add_option("--R", sd.R, "Number of simulated copies");
  sd_resume->add_option("--add-R", sd.add_R, "Additional copies")->required();

  std::string isd_state;
  auto* isd_cmd = app.add_subcommand("isd", "Integrated spectrum from a state file");
  isd_cmd->add_option("--state", isd_state, "State file")->required();
  isd_cmd->add_option("--out", out_path, "Output document (default stdout)");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "SVG panel plot of a result document");
  plot_cmd->add_option("input", plot.input, "Result document")->required();
  plot_cmd->add_option("--levels", plot.levels, "Levels to show (default all)");
  plot_cmd->add_option("--freq-min", plot.freq_min, "Lower frequency bound (exclusive)");
  plot_cmd->add_option("--freq-max", plot.freq_max, "Upper frequency bound");
  plot_cmd->add_option("--out", out_path, "SVG file (default stdout)");

  StudyOptions st;
  auto* study_cmd = app.add_subcommand("study-rimse", "RIMSE simulation study of raw and smoothed estimators");
  study_cmd->add_option("--model", st.model, "Model");
  study_cmd->add_option("--N", st.N, "Series length");
  study_cmd->add_option("--R", st.R, "Replications");
  study_cmd->add_option("--bw", st.bw, "Kernel bandwidth");
  study_cmd->add_option("--kernel", st.kernel, "Kernel")->check(CLI::IsMember({"epanechnikov", "uniform"}));
  study_cmd->add_option("--levels", st.levels, "Levels");
  study_cmd->add_option("--truth-state", st.truth_state, "QuantileSD state used as truth")->required();
  study_cmd->add_option("--seed", st.seed, "Random seed");
  study_cmd->add_option("--out", out_path, "RIMSE table CSV (default stdout)");
  study_cmd->add_option("--errors-out", st.errors_out, "Per-replication error document");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  set_max_threads(threads);

  try {
    if (*pg_cmd) return cmd_pg(pg, out_path, args, out);
    if (*smooth_cmd) return cmd_smooth(spg, so, out_path, args, out);
    if (*sd_new) return cmd_sd_new(sd, out_path, args, out);
    if (*sd_resume) return cmd_sd_resume(sd, *sd_resume, out_path, args, out);
    if (*isd_cmd) return cmd_isd(isd_state, out_path, args, out);
    if (*plot_cmd) return cmd_plot(plot, out_path, out);
    if (*study_cmd) return cmd_study(st, out_path, args, out);
  } catch (const ExitError& e) {
    err << "qspec: " << e.message << "\n";
    return e.code;
  } catch (const CsvError& e) {
    err << "qspec: malformed CSV: " << e.what() << "\n";
    return exit_malformed_input;
  } catch (const DocumentError& e) {
    err << "qspec: " << e.what() << "\n";
    return exit_malformed_input;
  } catch (const Error& e) {
    err << "qspec: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "qspec: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_failure;
}

}  // namespace qspec::cli
