#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sphrd/dual.hpp"
#include "sphrd/errors.hpp"
#include "sphrd/rate_distortion.hpp"
#include "sphrd_cli/cli.hpp"

namespace sphrd::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rates from the three routes at one distortion. D = 0 reports the limit on
// every route.
struct CurveRow {
  double closed = 0.0;
  double integral = 0.0;
  double dual = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

CurveRow evaluate_row(const CurveConfig& config, const SphereSource& src, double D,
                      const EvalPolicy& policy) {
  CurveRow row;
  row.closed = rate_distortion_limit(src, D, policy).rate;
  if (D == 0.0) {
    row.integral = row.dual = row.closed;
    row.lo = src.n == 1 ? 0.0 : kInf;
    row.hi = kInf;
    return row;
  }
  const bool interior = D < src.R * src.R;
  if (config.integral) row.integral = rate_distortion_integral(src, D, policy).rate;
  if (config.dual) row.dual = interior ? dual_rate(src, D, config.dual_grid, policy).value : 0.0;
  if (config.sandwich) {
    const GaussianSandwich s = gaussian_sandwich(src, D, policy);
    row.lo = s.lo;
    row.hi = s.hi;
  }
  return row;
}

double spread(double a, double b) {
  if (a == b) return 0.0;  // also covers matching infinities
  return std::abs(a - b);
}

}  // namespace

std::vector<double> build_d_grid(const CurveConfig& config) {
  const double r2 = config.radius * config.radius;
  std::vector<double> grid;
  if (!config.d_list.empty()) {
    grid = config.d_list;
  } else {
    if (config.points < 2) throw DomainError("curve: --points must be at least 2");
    if (!(config.dmin > 0.0) || !(config.dmax > config.dmin)) {
      throw DomainError("curve: need 0 < dmin < dmax");
    }
    for (int i = 0; i < config.points; ++i) {
      const double s = static_cast<double>(i) / (config.points - 1);
      double D = config.log_grid
                     ? config.dmin * std::pow(config.dmax / config.dmin, s)
                     : config.dmin + s * (config.dmax - config.dmin);
      if (i + 1 == config.points) D = config.dmax;
      grid.push_back(D);
    }
  }
  for (const double D : grid) {
    if (!(D >= 0.0) || D > r2) throw DomainError("curve: distortions must lie in [0, R^2]");
  }
  return grid;
}

CurveResult compute_curve(const CurveConfig& config, const EvalPolicy& policy) {
  const SphereSource src(config.n, config.radius);
  const std::vector<double> grid = build_d_grid(config);
  const double unit = config.bits ? 1.0 / std::numbers::ln2 : 1.0;

  CurveResult result;
  Table& table = result.table;
  table.columns = {"D", config.bits ? "rate_bits" : "rate_nats"};
  if (config.integral) table.columns.push_back("rate_integral");
  if (config.dual) table.columns.push_back("rate_dual");
  if (config.sandwich) {
    table.columns.push_back("sandwich_lo");
    table.columns.push_back("sandwich_hi");
  }

  double closed_integral = 0.0;
  double closed_dual = 0.0;
  double integral_dual = 0.0;
  for (const double D : grid) {
    const CurveRow row = evaluate_row(config, src, D, policy);
    std::vector<Cell> values = {D, row.closed * unit};
    if (config.integral) {
      values.push_back(row.integral * unit);
      closed_integral = std::max(closed_integral, spread(row.closed, row.integral));
    }
    if (config.dual) {
      values.push_back(row.dual * unit);
      closed_dual = std::max(closed_dual, spread(row.closed, row.dual));
    }
    if (config.integral && config.dual) {
      integral_dual = std::max(integral_dual, spread(row.integral, row.dual));
    }
    if (config.sandwich) {
      values.push_back(row.lo * unit);
      values.push_back(row.hi * unit);
    }
    table.rows.push_back(std::move(values));
  }

  if (config.integral) result.disagreement["closed_form_vs_integral"] = closed_integral;
  if (config.dual) result.disagreement["closed_form_vs_dual"] = closed_dual;
  if (config.integral && config.dual) result.disagreement["integral_vs_dual"] = integral_dual;
  result.max_spread = std::max({closed_integral, closed_dual, integral_dual});
  return result;
}

Table compute_mc(const McConfig& config, const EvalPolicy& policy) {
  Table table;
  table.columns = {"estimate", "stderr", "samples", "seed", "reference", "gaussian_reference"};
  if (config.task == "mmse") {
    const double radius = std::sqrt(config.sigma2 * config.n);
    const McEstimate e = mc_mmse(config.n, radius, config.samples, config.seed, policy,
                                 config.threads);
    const double reference = gaussian_mmse(config.n, config.sigma2);
    table.rows.push_back({e.mean, e.std_error, static_cast<std::uint64_t>(e.samples), e.seed,
                          reference, reference});
  } else if (config.task == "mi") {
    const MiEstimate e = mc_mutual_information(config.n, config.sigma2, config.samples,
                                               config.nodes, config.seed, policy, config.threads);
    table.rows.push_back({e.estimate.mean, e.estimate.std_error,
                          static_cast<std::uint64_t>(e.estimate.samples), e.estimate.seed,
                          e.reference, e.reference * config.n});
  } else {
    throw DomainError("mc: task must be mmse or mi");
  }
  return table;
}

Table compute_dim(const DimConfig& config, const EvalPolicy& policy) {
  Table table;
  table.columns = {"n", "fitted_dim", "expected_dim"};
  for (const int n : config.dims) {
    const DimensionProbe probe = information_dimension(n, config.radius, config.decades, policy);
    table.rows.push_back({static_cast<std::uint64_t>(n), probe.fitted_dim, 1.0 - 1.0 / n});
  }
  return table;
}

Table compute_highdim(const HighDimConfig& config, const EvalPolicy& policy) {
  AlphaSchedule schedule;
  if (config.alpha == "constant") {
    schedule = AlphaSchedule::kConstant;
  } else if (config.alpha == "linear") {
    schedule = AlphaSchedule::kLinear;
  } else if (config.alpha == "log") {
    schedule = AlphaSchedule::kLog;
  } else {
    throw DomainError("highdim: alpha must be constant, linear or log");
  }
  Table table;
  table.columns = {"n", "alpha_n", "ratio", "ratio_lo", "ratio_hi", "trend_target", "exact"};
  const auto sweep = high_dim_sweep(schedule, config.alpha_value, config.sigma2,
                                    config.distortion, config.kmin, config.kmax, policy);
  for (const HighDimSweepPoint& p : sweep) {
    table.rows.push_back({static_cast<std::uint64_t>(p.probe.n), p.probe.alpha_n, p.probe.ratio,
                          p.probe.ratio_lo, p.probe.ratio_hi, p.trend_target,
                          std::uint64_t{p.probe.exact ? 1u : 0u}});
  }
  return table;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double: buffer too small");
  return std::string(buffer, end);
}

double as_double(const Cell& cell) {
  return std::visit([](auto v) { return static_cast<double>(v); }, cell);
}

std::string to_csv(const Table& table) {
  std::string csv;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) csv += ',';
    csv += table.columns[i];
  }
  csv += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) csv += ',';
      if (const auto* count = std::get_if<std::uint64_t>(&row[i])) {
        csv += std::to_string(*count);
      } else {
        csv += format_double(std::get<double>(row[i]));
      }
    }
    csv += '\n';
  }
  return csv;
}

std::string to_svg(const Table& table, bool log_x) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 400.0;
  constexpr double kMargin = 48.0;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e", "#8c564b"};

  const auto x_of = [&](double x) { return log_x ? std::log10(x) : x; };
  double x_min = kInf, x_max = -kInf, y_min = kInf, y_max = -kInf;
  for (const auto& row : table.rows) {
    const double x = as_double(row[0]);
    if (log_x && !(x > 0.0)) continue;
    x_min = std::min(x_min, x_of(x));
    x_max = std::max(x_max, x_of(x));
    for (std::size_t c = 1; c < row.size(); ++c) {
      const double y = as_double(row[c]);
      if (!std::isfinite(y)) continue;
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  if (!(y_max > y_min)) y_max = y_min + 1.0;
  const auto px = [&](double x) {
    return kMargin + (x_of(x) - x_min) / (x_max - x_min) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double y) {
    return kHeight - kMargin - (y - y_min) / (y_max - y_min) * (kHeight - 2 * kMargin);
  };

  std::ostringstream svg;
  svg.imbue(std::locale::classic());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << table.columns[0] << (log_x ? " (log10)" : "") << "</text>\n";
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    const char* color = kColors[(c - 1) % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (const auto& row : table.rows) {
      const double x = as_double(row[0]);
      const double y = as_double(row[c]);
      if (!std::isfinite(y) || (log_x && !(x > 0.0))) continue;
      svg << px(x) << ',' << py(y) << ' ';
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 16.0 * c
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << table.columns[c] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

nlohmann::json to_json(const CurveConfig& c) {
  return {{"n", c.n},           {"radius", c.radius},       {"dmin", c.dmin},
          {"dmax", c.dmax},     {"points", c.points},       {"log_grid", c.log_grid},
          {"d_list", c.d_list}, {"integral", c.integral},   {"dual", c.dual},
          {"sandwich", c.sandwich}, {"bits", c.bits},       {"tolerance", c.tolerance},
          {"dual_grid", c.dual_grid}, {"out", c.out},       {"svg", c.svg}};
}

nlohmann::json to_json(const McConfig& c) {
  return {{"task", c.task},   {"n", c.n},         {"sigma2", c.sigma2},
          {"samples", c.samples}, {"nodes", c.nodes}, {"seed", c.seed},
          {"threads", c.threads}, {"out", c.out}};
}

nlohmann::json to_json(const DimConfig& c) {
  return {{"dims", c.dims}, {"radius", c.radius}, {"decades", c.decades}, {"out", c.out}};
}

nlohmann::json to_json(const HighDimConfig& c) {
  return {{"alpha", c.alpha}, {"alpha_value", c.alpha_value}, {"sigma2", c.sigma2},
          {"distortion", c.distortion}, {"kmin", c.kmin}, {"kmax", c.kmax}, {"out", c.out}};
}

void from_json(const nlohmann::json& j, CurveConfig& c) {
  j.at("n").get_to(c.n);
  j.at("radius").get_to(c.radius);
  j.at("dmin").get_to(c.dmin);
  j.at("dmax").get_to(c.dmax);
  j.at("points").get_to(c.points);
  j.at("log_grid").get_to(c.log_grid);
  j.at("d_list").get_to(c.d_list);
  j.at("integral").get_to(c.integral);
  j.at("dual").get_to(c.dual);
  j.at("sandwich").get_to(c.sandwich);
  j.at("bits").get_to(c.bits);
  j.at("tolerance").get_to(c.tolerance);
  j.at("dual_grid").get_to(c.dual_grid);
  j.at("out").get_to(c.out);
  j.at("svg").get_to(c.svg);
}

void from_json(const nlohmann::json& j, McConfig& c) {
  j.at("task").get_to(c.task);
  j.at("n").get_to(c.n);
  j.at("sigma2").get_to(c.sigma2);
  j.at("samples").get_to(c.samples);
  j.at("nodes").get_to(c.nodes);
  j.at("seed").get_to(c.seed);
  j.at("threads").get_to(c.threads);
  j.at("out").get_to(c.out);
}

void from_json(const nlohmann::json& j, DimConfig& c) {
  j.at("dims").get_to(c.dims);
  j.at("radius").get_to(c.radius);
  j.at("decades").get_to(c.decades);
  j.at("out").get_to(c.out);
}

void from_json(const nlohmann::json& j, HighDimConfig& c) {
  j.at("alpha").get_to(c.alpha);
  j.at("alpha_value").get_to(c.alpha_value);
  j.at("sigma2").get_to(c.sigma2);
  j.at("distortion").get_to(c.distortion);
  j.at("kmin").get_to(c.kmin);
  j.at("kmax").get_to(c.kmax);
  j.at("out").get_to(c.out);
}

}  // namespace sphrd::cli
