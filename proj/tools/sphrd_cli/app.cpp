#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sphrd/errors.hpp"
#include "sphrd_cli/cli.hpp"

namespace sphrd::cli {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buffer;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << contents;
  if (!file) throw std::runtime_error("failed writing " + path);
}

struct Run {
  std::string command;
  json config;
  json seeds = json::array();
  json disagreement = json::object();
  std::string out;
  std::string svg;
  bool log_x = false;
};

Run make_run(std::string command, json config) {
  Run run;
  run.command = std::move(command);
  run.config = std::move(config);
  return run;
}

// Writes the CSV (to stdout when no path is given), its manifest and the
// optional SVG.
void emit(const Run& run, const Table& table, Clock::time_point started, const std::string& stamp,
          std::ostream& out) {
  const std::string csv = to_csv(table);
  if (run.out.empty()) {
    out << csv;
  } else {
    write_file(run.out, csv);
    const double seconds = std::chrono::duration<double>(Clock::now() - started).count();
    const json manifest = {{"tool_version", kToolVersion},
                           {"command", run.command},
                           {"config", run.config},
                           {"seeds", run.seeds},
                           {"started_at", stamp},
                           {"wall_clock_seconds", seconds},
                           {"max_disagreement", run.disagreement},
                           {"columns", table.columns},
                           {"rows", table.rows.size()}};
    write_file(run.out + ".manifest.json", manifest.dump(2) + "\n");
    out << "wrote " << run.out << " (" << table.rows.size() << " rows) and "
        << run.out << ".manifest.json\n";
  }
  if (!run.svg.empty()) write_file(run.svg, to_svg(table, run.log_x));
}

int do_curve(const CurveConfig& config, std::ostream& out, std::ostream& err) {
  const auto started = Clock::now();
  const std::string stamp = utc_timestamp();
  const CurveResult result = compute_curve(config);
  Run run = make_run("curve", to_json(config));
  run.disagreement = result.disagreement;
  run.out = config.out;
  run.svg = config.svg;
  run.log_x = config.log_grid && config.d_list.empty();
  emit(run, result.table, started, stamp, out);
  if (result.max_spread > config.tolerance) {
    err << "route disagreement " << format_double(result.max_spread) << " exceeds tolerance "
        << format_double(config.tolerance) << "\n";
    return 1;
  }
  return 0;
}

int do_mc(const McConfig& config, std::ostream& out) {
  const auto started = Clock::now();
  const std::string stamp = utc_timestamp();
  Run run = make_run("mc", to_json(config));
  run.seeds.push_back(config.seed);
  run.out = config.out;
  emit(run, compute_mc(config), started, stamp, out);
  return 0;
}

int do_dim(const DimConfig& config, std::ostream& out) {
  const auto started = Clock::now();
  const std::string stamp = utc_timestamp();
  Run run = make_run("dim", to_json(config));
  run.out = config.out;
  emit(run, compute_dim(config), started, stamp, out);
  return 0;
}

int do_highdim(const HighDimConfig& config, std::ostream& out) {
  const auto started = Clock::now();
  const std::string stamp = utc_timestamp();
  Run run = make_run("highdim", to_json(config));
  run.out = config.out;
  emit(run, compute_highdim(config), started, stamp, out);
  return 0;
}

int do_verify(const std::string& suite, std::ostream& out) {
  bool all_pass = true;
  for (const VerifyLine& line : run_verify(suite)) {
    out << line.anchor << ": " << (line.pass ? "PASS" : "FAIL") << "  (" << line.detail << ")\n";
    all_pass = all_pass && line.pass;
  }
  return all_pass ? 0 : 1;
}

int do_replay(const std::string& manifest_path, const std::string& out_override,
              std::ostream& out, std::ostream& err) {
  std::ifstream file(manifest_path);
  if (!file) throw std::runtime_error("cannot open " + manifest_path);
  const json manifest = json::parse(file);
  const std::string command = manifest.at("command").get<std::string>();
  json config = manifest.at("config");
  if (!out_override.empty()) {
    config["out"] = out_override;
    if (config.contains("svg")) config["svg"] = "";
  }
  if (command == "curve") return do_curve(config.get<CurveConfig>(), out, err);
  if (command == "mc") return do_mc(config.get<McConfig>(), out);
  if (command == "dim") return do_dim(config.get<DimConfig>(), out);
  if (command == "highdim") return do_highdim(config.get<HighDimConfig>(), out);
  throw std::runtime_error("replay: unknown command " + command);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate-distortion function of the uniform spherical source"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CurveConfig curve;
  std::vector<std::string> routes = {"closed_form"};
  auto* curve_cmd = app.add_subcommand("curve", "Rate-distortion curve as CSV");
  curve_cmd->add_option("--n", curve.n, "Dimension")->check(CLI::PositiveNumber);
  curve_cmd->add_option("--radius", curve.radius, "Sphere radius R")->check(CLI::PositiveNumber);
  curve_cmd->add_option("--dmin", curve.dmin, "Smallest distortion");
  curve_cmd->add_option("--dmax", curve.dmax, "Largest distortion");
  curve_cmd->add_option("--points", curve.points, "Grid size");
  curve_cmd->add_flag("--log-grid", curve.log_grid, "Geometric instead of linear grid");
  curve_cmd->add_option("--d-list", curve.d_list, "Explicit distortions, comma separated")
      ->delimiter(',');
  curve_cmd
      ->add_option("--routes", routes,
                   "closed_form, integral, dual, sandwich or all (comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember({"closed_form", "integral", "dual", "sandwich", "all"}));
  curve_cmd->add_flag("--bits", curve.bits, "Report rates in bits");
  curve_cmd->add_option("--tolerance", curve.tolerance, "Allowed spread between routes, nats");
  curve_cmd->add_option("--dual-grid", curve.dual_grid, "Radius grid of the dual search");
  curve_cmd->add_option("--out", curve.out, "CSV path (stdout when omitted)");
  curve_cmd->add_option("--svg", curve.svg, "Optional SVG plot path");

  McConfig mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo MMSE or mutual information");
  mc_cmd->add_option("--task", mc.task, "mmse or mi")->check(CLI::IsMember({"mmse", "mi"}));
  mc_cmd->add_option("--n", mc.n, "Dimension")->check(CLI::PositiveNumber);
  mc_cmd->add_option("--sigma2", mc.sigma2, "Per-coordinate signal power")
      ->check(CLI::PositiveNumber);
  mc_cmd->add_option("--samples", mc.samples, "Samples (per node for mi)");
  mc_cmd->add_option("--nodes", mc.nodes, "Gauss-Legendre nodes for mi");
  mc_cmd->add_option("--seed", mc.seed, "64-bit seed");
  mc_cmd->add_option("--threads", mc.threads, "Worker threads (0 = hardware)");
  mc_cmd->add_option("--out", mc.out, "CSV path (stdout when omitted)");

  DimConfig dim;
  auto* dim_cmd = app.add_subcommand("dim", "Fitted information dimension");
  dim_cmd->add_option("--n", dim.dims, "Dimensions, comma separated")->delimiter(',');
  dim_cmd->add_option("--radius", dim.radius, "Sphere radius R")->check(CLI::PositiveNumber);
  dim_cmd->add_option("--decades", dim.decades, "Decades of distortion in the fit");
  dim_cmd->add_option("--out", dim.out, "CSV path (stdout when omitted)");

  HighDimConfig high;
  auto* high_cmd = app.add_subcommand("highdim", "Ratio to the Gaussian rate for n = 2^k");
  high_cmd->add_option("--alpha", high.alpha, "constant, linear (alpha_n = n) or log")
      ->check(CLI::IsMember({"constant", "linear", "log"}));
  high_cmd->add_option("--alpha-value", high.alpha_value, "alpha_n for the constant schedule");
  high_cmd->add_option("--sigma2", high.sigma2, "Gaussian reference variance");
  high_cmd->add_option("--distortion", high.distortion, "Distortion D");
  high_cmd->add_option("--kmin", high.kmin, "Smallest exponent k");
  high_cmd->add_option("--kmax", high.kmax, "Largest exponent k");
  high_cmd->add_option("--out", high.out, "CSV path (stdout when omitted)");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run property suites and print a report");
  verify_cmd->add_option("suite", suite, "bessel, rd, dual, asymptotics or all")
      ->check(CLI::IsMember({"bessel", "rd", "dual", "asymptotics", "all"}));

  std::string manifest_path;
  std::string replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", manifest_path, "Path to a .manifest.json")->required();
  replay_cmd->add_option("--out", replay_out, "Write here instead of the recorded path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*curve_cmd) {
      for (const std::string& route : routes) {
        const bool every = route == "all";
        curve.integral = curve.integral || every || route == "integral";
        curve.dual = curve.dual || every || route == "dual";
        curve.sandwich = curve.sandwich || every || route == "sandwich";
      }
      return do_curve(curve, out, err);
    }
    if (*mc_cmd) return do_mc(mc, out);
    if (*dim_cmd) return do_dim(dim, out);
    if (*high_cmd) return do_highdim(high, out);
    if (*verify_cmd) return do_verify(suite, out);
    if (*replay_cmd) return do_replay(manifest_path, replay_out, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace sphrd::cli
