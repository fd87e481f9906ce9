#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sphrd/asymptotics.hpp"
#include "sphrd/policy.hpp"

namespace sphrd::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct CurveConfig {
  int n = 1;
  double radius = 1.0;
  double dmin = 0.01;
  double dmax = 1.0;
  int points = 20;
  bool log_grid = false;
  std::vector<double> d_list;  // overrides the generated grid when non-empty
  bool integral = false;
  bool dual = false;
  bool sandwich = false;
  bool bits = false;
  double tolerance = 1e-6;  // largest allowed spread between routes
  int dual_grid = 32;
  std::string out;
  std::string svg;
};

struct McConfig {
  std::string task = "mmse";  // mmse or mi
  int n = 256;
  double sigma2 = 1.0;
  std::int64_t samples = 100000;  // per node for mi
  int nodes = 16;
  std::uint64_t seed = 42;
  int threads = 0;
  std::string out;
};

struct DimConfig {
  std::vector<int> dims = {2, 4, 8};
  double radius = 1.0;
  int decades = 7;
  std::string out;
};

struct HighDimConfig {
  std::string alpha = "constant";  // constant, linear or log
  double alpha_value = 1.0;
  double sigma2 = 1.0;
  double distortion = 1.0;
  int kmin = 4;
  int kmax = 14;
  std::string out;
};

/// Integers (counts, seeds, dimensions) are kept exact.
using Cell = std::variant<double, std::uint64_t>;

double as_double(const Cell& cell);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CurveResult {
  Table table;
  double max_spread = 0.0;  // largest pairwise route disagreement over all rows, nats
  nlohmann::json disagreement = nlohmann::json::object();
};

std::vector<double> build_d_grid(const CurveConfig& config);
CurveResult compute_curve(const CurveConfig& config, const EvalPolicy& policy = {});

Table compute_mc(const McConfig& config, const EvalPolicy& policy = {});
Table compute_dim(const DimConfig& config, const EvalPolicy& policy = {});
Table compute_highdim(const HighDimConfig& config, const EvalPolicy& policy = {});

/// Locale-independent rendering with 17 significant digits;
/// infinities print as inf.
std::string format_double(double value);
std::string to_csv(const Table& table);

/// Polyline plot of every column against the first one.
std::string to_svg(const Table& table, bool log_x);

nlohmann::json to_json(const CurveConfig& config);
nlohmann::json to_json(const McConfig& config);
nlohmann::json to_json(const DimConfig& config);
nlohmann::json to_json(const HighDimConfig& config);
void from_json(const nlohmann::json& j, CurveConfig& config);
void from_json(const nlohmann::json& j, McConfig& config);
void from_json(const nlohmann::json& j, DimConfig& config);
void from_json(const nlohmann::json& j, HighDimConfig& config);

struct VerifyLine {
  std::string anchor;  // e.g. "Lemma 7 r* location"
  bool pass = false;
  std::string detail;
};

/// Runs the named property suite (bessel, rd, dual, asymptotics or all) at
/// desk scale.
std::vector<VerifyLine> run_verify(const std::string& suite, const EvalPolicy& policy = {});

/// Entry point shared by the executable and the tests. Returns the process
/// exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sphrd::cli
