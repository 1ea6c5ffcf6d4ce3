#include "circsym/app/app.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "circsym/bootstrap.hpp"
#include "circsym/error.hpp"
#include "circsym/io.hpp"
#include "circsym/numerics/parallel.hpp"
#include "circsym/simulate.hpp"
#include "circsym/statistic.hpp"
#include "circsym/study.hpp"

namespace circsym::app {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string fmt(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string lambda_key(double lambda) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, lambda);
  return std::string(buf, res.ptr);
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Writes through a temporary file so a failed run never leaves partial output.
void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << contents;
    if (!f) throw ParseError("cannot write '" + path + "'");
  }
  std::filesystem::rename(tmp, target);
}

struct InputOptions {
  std::string path;
  std::string layout = "reim";
  std::optional<double> cutoff;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-i,--input", in.path, "input CSV")->required();
  cmd->add_option("--layout", in.layout, "reim, polar (modulus, degrees) or wind (speed mph, degrees from North)")
      ->check(CLI::IsMember({"reim", "polar", "wind"}));
  cmd->add_option("--cutoff", in.cutoff, "wind only: keep rows with speed strictly below this value");
}

ComplexSample load_input(const InputOptions& in) {
  if (in.layout == "wind") return ingest_wind(in.path, in.cutoff);
  if (in.cutoff) throw CLI::ValidationError("--cutoff", "only valid with --layout wind");
  return ingest_complex_csv(in.path, in.layout == "polar" ? CsvLayout::PolarDeg : CsvLayout::ReIm);
}

json input_json(const InputOptions& in) {
  json j{{"path", in.path}, {"layout", in.layout}};
  j["cutoff"] = in.cutoff ? json(*in.cutoff) : json(nullptr);
  return j;
}

// ---- test ----

struct TestOptions {
  InputOptions input;
  std::vector<double> lambdas;
  double mu = 2.0;
  std::size_t b = kDefaultBootstrapReplicates;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  std::string output;
  bool keep_replicates = false;
  unsigned threads = 1;
};

int cmd_test(const TestOptions& o, std::ostream& out) {
  const auto start = Clock::now();
  const ComplexSample x = load_input(o.input);
  const std::vector<double> lambdas = o.lambdas.empty() ? std::vector<double>{1.0} : o.lambdas;
  const PairwiseSummaries ps = pairwise_summaries(x);

  BootstrapConfig cfg;
  cfg.b = o.b;
  cfg.seed = o.seed;
  cfg.keep_replicates = o.keep_replicates;
  cfg.threads = o.threads;

  json stats = json::object(), pvals = json::object(), shown = json::object(), counts = json::object(),
       reps = json::object();
  for (double lambda : lambdas) {
    const KernelSpec k = KernelSpec::stable(lambda, o.mu);
    const TestResult r = bootstrap_test(ps, k, cfg);
    const std::string key = lambda_key(lambda);
    const std::string p = format_p_value(r.p_value, r.exceed_count, r.b);
    stats[key] = r.statistic;
    pvals[key] = r.p_value;
    shown[key] = p;
    counts[key] = r.exceed_count;
    if (o.keep_replicates) reps[key] = r.replicates;
    out << "lambda=" << fmt("%g", lambda) << " mu=" << fmt("%g", o.mu) << " n=" << r.n << " d=" << r.d
        << " T=" << fmt("%.6g", r.statistic) << " p=" << p << " B=" << r.b
        << (r.p_value <= o.alpha ? " reject" : " retain") << " at alpha=" << fmt("%g", o.alpha) << '\n';
  }

  if (!o.output.empty()) {
    json report;
    report["version"] = kVersion;
    report["command"] = "test";
    report["config"] = {{"input", input_json(o.input)}, {"lambda", lambdas},          {"mu", o.mu},
                        {"b", o.b},                     {"seed", o.seed},             {"alpha", o.alpha},
                        {"keep_replicates", o.keep_replicates}};
    report["input"] = {{"rows", x.n()}, {"d", x.d()}, {"fnv1a64", file_digest(o.input.path)}};
    report["statistic_per_lambda"] = stats;
    report["p_value_per_lambda"] = pvals;
    report["p_value_display_per_lambda"] = shown;
    report["exceed_count_per_lambda"] = counts;
    if (o.keep_replicates) report["replicates"] = reps;
    report["runtime_ms"] = elapsed_ms(start);
    write_file(o.output, report.dump(2) + "\n");
  }
  return kExitOk;
}

// ---- profile ----

struct ProfileOptions {
  InputOptions input;
  double lambda = 1.0;
  double mu = 2.0;
  std::size_t grid = 361;
  std::string convention = "section2";
  std::size_t b = kDefaultBootstrapReplicates;
  double quantile = 0.95;
  std::uint64_t seed = 0;
  std::string csv;
  std::string svg;
  unsigned threads = 1;
};

int cmd_profile(const ProfileOptions& o, std::ostream& out) {
  const ComplexSample x = load_input(o.input);
  const PairwiseSummaries ps = pairwise_summaries(x);
  const KernelSpec k = KernelSpec::stable(o.lambda, o.mu);
  const ThetaConvention conv = o.convention == "section3" ? ThetaConvention::Section3 : ThetaConvention::Section2;
  const std::vector<double> grid = profile_grid(o.grid);
  const ThetaProfile profile = theta_profile(ps, k, grid, conv);
  BootstrapConfig cfg;
  cfg.b = o.b;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  const std::vector<double> band = null_band(ps, k, grid, cfg, o.quantile, conv);

  std::ostringstream csv;
  csv << "theta,d_observed,null_q\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << fmt("%.17g", grid[i]) << ',' << fmt("%.17g", profile.values[i]) << ',' << fmt("%.17g", band[i]) << '\n';
  }
  if (o.csv.empty()) {
    out << csv.str();
  } else {
    write_file(o.csv, csv.str());
  }
  if (!o.svg.empty()) {
    std::ostringstream svg;
    write_svg_plot(svg,
                   {PlotSeries{"observed", grid, profile.values, false},
                    PlotSeries{"null " + fmt("%g", o.quantile) + "-quantile", grid, band, true}},
                   "theta", "D(theta)");
    write_file(o.svg, svg.str());
  }
  return kExitOk;
}

// ---- power ----

struct PowerOptions {
  std::string config;
  std::string outdir = ".";
  unsigned threads = 1;
};

json study_json(const StudySpec& s) {
  json params = json::object();
  for (const auto& [key, value] : s.parameters) params[key] = value;
  return {{"distribution", s.distribution}, {"parameters", params}, {"columns", s.column_key},
          {"column_values", s.column_values}, {"n", s.ns},        {"m", s.m},
          {"b", s.b},                         {"alpha", s.alpha},   {"seed", s.seed}};
}

int cmd_power(const PowerOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const StudySpec spec = load_study(o.config);
  const PowerTable table = run_table(spec, o.threads, [&](std::size_t done, std::size_t total) {
    err << "cell " << done << "/" << total << " done\n";
  });

  std::ostringstream csv;
  write_table_csv(csv, table);
  json cells = json::array();
  for (std::size_t r = 0; r < spec.ns.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < spec.column_values.size(); ++c) {
      const CellResult& cell = table.cells[r][c];
      row.push_back({{"n", spec.ns[r]},
                     {spec.column_key, spec.column_values[c]},
                     {"rate", cell.rate},
                     {"standard_error", cell.standard_error},
                     {"rejections", cell.rejections},
                     {"m", cell.m},
                     {"seed", spec.seed},
                     {"stream_id", table.cell_streams[r][c]}});
    }
    cells.push_back(row);
  }
  json sidecar{{"version", kVersion},
               {"command", "power"},
               {"config", study_json(spec)},
               {"config_path", o.config},
               {"cells", cells},
               {"runtime_ms", elapsed_ms(start)}};

  const std::filesystem::path dir(o.outdir);
  write_file((dir / "power.csv").string(), csv.str());
  write_file((dir / "power.json").string(), sidecar.dump(2) + "\n");
  out << csv.str();
  return kExitOk;
}

// ---- gen ----

struct GenOptions {
  std::string distribution;
  double rho_re = 0.0, rho_im = 0.0, czz = 1.0, u = 0.0;
  std::size_t d = 2;
  std::uint64_t a_seed = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  DistributionSpec spec;
  if (o.distribution == "scalar_gaussian") {
    spec = ScalarGaussianRho{{o.rho_re, o.rho_im}, o.czz};
  } else if (o.distribution == "shifted_cn2") {
    spec = ShiftedCN2{o.u};
  } else if (o.distribution == "discrete4") {
    spec = Discrete4{};
  } else if (o.distribution == "circle_uniform") {
    spec = CircleUniform{};
  } else if (o.distribution == "contaminated") {
    spec = Contaminated{};
  } else {
    spec = HighDimCN{o.d, o.a_seed};
  }
  const ComplexSample x = sample(spec, o.n, RngStream(o.seed, 0));
  std::ostringstream csv;
  write_sample_csv(csv, x);
  if (o.output.empty()) {
    out << csv.str();
  } else {
    write_file(o.output, csv.str());
  }
  return kExitOk;
}

CLI::Option* add_threads(CLI::App* cmd, unsigned& threads) {
  threads = default_thread_count();
  return cmd->add_option("--threads", threads, "worker threads (default: CIRCSYM_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

std::string format_p_value(double p_value, std::size_t exceed_count, std::size_t b) {
  if (exceed_count == 0) return "< 1/" + std::to_string(b + 1);
  return fmt("%.4f", p_value);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Tests circular symmetry of complex-valued data", "circsym");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  TestOptions test;
  auto* test_cmd = app.add_subcommand("test", "rotation-bootstrap test of circular symmetry");
  add_input_options(test_cmd, test.input);
  test_cmd->add_option("-l,--lambda", test.lambdas, "kernel weight parameter, repeatable (default 1)")
      ->check(CLI::PositiveNumber);
  test_cmd->add_option("--mu", test.mu, "stability index in (0, 2]; 2 is the Gaussian kernel");
  test_cmd->add_option("-B,--b", test.b, "bootstrap replicates")->check(CLI::PositiveNumber);
  test_cmd->add_option("--seed", test.seed, "random seed");
  test_cmd->add_option("--alpha", test.alpha, "significance level")->check(CLI::Range(0.0, 1.0));
  test_cmd->add_option("-o,--output", test.output, "JSON report path");
  test_cmd->add_flag("--keep-replicates", test.keep_replicates, "include T* values in the report");
  add_threads(test_cmd, test.threads);

  ProfileOptions profile;
  auto* profile_cmd = app.add_subcommand("profile", "D(theta) profile with a rotation-bootstrap null band");
  add_input_options(profile_cmd, profile.input);
  profile_cmd->add_option("-l,--lambda", profile.lambda, "kernel weight parameter")->check(CLI::PositiveNumber);
  profile_cmd->add_option("--mu", profile.mu, "stability index in (0, 2]");
  profile_cmd->add_option("--grid", profile.grid, "number of theta values in [-pi, pi)")
      ->check(CLI::PositiveNumber);
  profile_cmd->add_option("--convention", profile.convention, "section2 (integrates to T) or section3")
      ->check(CLI::IsMember({"section2", "section3"}));
  profile_cmd->add_option("-B,--b", profile.b, "bootstrap replicates for the null band")
      ->check(CLI::PositiveNumber);
  profile_cmd->add_option("--quantile", profile.quantile, "null band quantile")->check(CLI::Range(0.0, 1.0));
  profile_cmd->add_option("--seed", profile.seed, "random seed");
  profile_cmd->add_option("--csv", profile.csv, "CSV output path (default: standard output)");
  profile_cmd->add_option("--svg", profile.svg, "SVG plot path");
  add_threads(profile_cmd, profile.threads);

  PowerOptions power;
  auto* power_cmd = app.add_subcommand("power", "Monte Carlo level/power table from a study config");
  power_cmd->add_option("-c,--config", power.config, "study config file")->required();
  power_cmd->add_option("-d,--outdir", power.outdir, "output directory for power.csv and power.json");
  add_threads(power_cmd, power.threads);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "draw a sample from one of the built-in distributions");
  gen_cmd->add_option("--distribution", gen.distribution, "distribution kind")
      ->required()
      ->check(CLI::IsMember(
          {"scalar_gaussian", "shifted_cn2", "discrete4", "circle_uniform", "contaminated", "highdim_cn"}));
  gen_cmd->add_option("--rho-re", gen.rho_re, "scalar_gaussian: Re rho");
  gen_cmd->add_option("--rho-im", gen.rho_im, "scalar_gaussian: Im rho");
  gen_cmd->add_option("--czz", gen.czz, "scalar_gaussian: variance");
  gen_cmd->add_option("--u", gen.u, "shifted_cn2: mean shift");
  gen_cmd->add_option("--d", gen.d, "highdim_cn: dimension");
  gen_cmd->add_option("--a-seed", gen.a_seed, "highdim_cn: seed of the mixing matrix");
  gen_cmd->add_option("-n,--n", gen.n, "sample size")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("-o,--output", gen.output, "CSV output path (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (test_cmd->parsed()) return cmd_test(test, out);
    if (profile_cmd->parsed()) return cmd_profile(profile, out);
    if (power_cmd->parsed()) return cmd_power(power, out, err);
    return cmd_gen(gen, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace circsym::app
