#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "sphrd/asymptotics.hpp"
#include "sphrd/bessel.hpp"
#include "sphrd/dual.hpp"
#include "sphrd/errors.hpp"
#include "sphrd/rate_distortion.hpp"
#include "sphrd/rng.hpp"
#include "sphrd_cli/cli.hpp"

namespace sphrd::cli {
namespace {

std::string sci(const char* label, double value) {
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%s = %.3g", label, value);
  return buffer;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  }
  return grid;
}

std::vector<double> fractions(double lo, double step, double hi) {
  std::vector<double> values;
  for (int k = 0; lo + k * step <= hi + 1e-12; ++k) values.push_back(lo + k * step);
  return values;
}

double binary_entropy(double p) { return -p * std::log(p) - (1.0 - p) * std::log1p(-p); }

void bessel_suite(const EvalPolicy& policy, std::vector<VerifyLine>& lines) {
  const std::vector<double> orders = {0.5, 1.0, 2.5, 10.0, 500.0};
  const std::vector<double> ts = log_grid(1e-6, 1e6, 40);

  int violations = 0;
  for (const double nu : orders) {
    for (const double t : ts) {
      const double f = bessel_ratio(Order(nu), t, policy);
      const double lo = ratio_bound_g(nu, t);
      const double hi = ratio_bound_g(nu - 0.5, t);
      if (!(lo <= f && f <= hi && hi <= 1.0)) ++violations;
    }
  }
  lines.push_back({"Lemma 1 sandwich", violations == 0,
                   std::to_string(violations) + " violations on 5x40 grid"});

  Xoshiro256 engine(20240601);
  int inversions = 0;
  for (int i = 0; i < 500; ++i) {
    const double nu = 0.5 + 50.0 * engine.uniform_open_closed();
    double t1 = std::pow(10.0, -4.0 + 9.0 * engine.uniform_open_closed());
    double t2 = std::pow(10.0, -4.0 + 9.0 * engine.uniform_open_closed());
    if (t1 == t2) continue;
    if (t1 > t2) std::swap(t1, t2);
    if (!(bessel_ratio(Order(nu), t1, policy) < bessel_ratio(Order(nu), t2, policy))) {
      ++inversions;
    }
  }
  lines.push_back({"Lemma 1 monotonicity", inversions == 0,
                   std::to_string(inversions) + " order inversions in 500 random pairs"});

  double round_trip = 0.0;
  bool bracketed = true;
  for (const double nu : orders) {
    for (const double y : fractions(0.001, 0.0185, 0.999)) {
      const double t = inverse_ratio(Order(nu), y, policy);
      const InverseBracket b = inverse_bracket(Order(nu), y);
      bracketed = bracketed && b.lo <= t && t <= b.hi;
      round_trip =
          std::max(round_trip, std::abs(bessel_ratio(Order(nu), t, policy) - y) / y);
    }
  }
  lines.push_back({"Lemma 2 inverse round trip", bracketed && round_trip <= policy.root_tol,
                   sci("max relative residual", round_trip)});

  double tanh_error = 0.0;
  for (const double t : log_grid(1e-3, 50.0, 200)) {
    tanh_error = std::max(tanh_error, std::abs(bessel_ratio(Order(0.5), t, policy) - std::tanh(t)));
  }
  lines.push_back({"nu = 1/2 ratio is tanh", tanh_error <= 1e-12, sci("max error", tanh_error)});

  double tail = 0.0;
  for (const double nu : {1.0, 2.5, 10.0}) {
    const RatioValue f = bessel_ratio_pair(Order(nu), 1e6, policy);
    const double target = nu - 0.5;
    tail = std::max(tail, std::abs(1e6 * f.complement - target) / target);
  }
  lines.push_back({"large-t tail t(1 - f) -> nu - 1/2", tail <= 0.01,
                   sci("max relative gap at t = 1e6", tail)});

  double regime_gap = 0.0;
  for (const double nu : {0.5, 3.0, 40.0}) {
    const double t = policy.small_t_threshold * (nu + 1.0);
    const RatioValue a = detail::bessel_ratio(BesselRegime::kSeries, nu, t, policy);
    const RatioValue b = detail::bessel_ratio(BesselRegime::kContinuedFraction, nu, t, policy);
    regime_gap = std::max(regime_gap, std::abs(a.value - b.value) / b.value);
  }
  for (const double t : {10.0, 1e3, 1e5}) {
    const double nu = policy.large_order_threshold + 1.0;
    const RatioValue a = detail::bessel_ratio(BesselRegime::kUniform, nu, t, policy);
    const RatioValue b = detail::bessel_ratio(BesselRegime::kContinuedFraction, nu, t, policy);
    regime_gap = std::max(regime_gap, std::abs(a.value - b.value) / b.value);
    const double la = detail::log_bessel_i_scaled(BesselRegime::kUniform, nu, t, policy) + t;
    const double lb = detail::log_bessel_i_scaled(BesselRegime::kPeakSeries, nu, t, policy) + t;
    regime_gap = std::max(regime_gap, std::abs(la - lb) / std::abs(lb));
  }
  lines.push_back({"regime switch consistency", regime_gap <= 100.0 * policy.cf_tol,
                   sci("max relative gap", regime_gap)});
}

void rd_suite(const EvalPolicy& policy, std::vector<VerifyLine>& lines) {
  std::vector<double> ratios = {0.01};
  for (const double x : fractions(0.05, 0.05, 0.95)) ratios.push_back(x);
  ratios.push_back(0.99);

  double route_gap = 0.0;
  double derivative_gap = 0.0;
  double sandwich_slack = 0.0;
  for (const int n : {1, 2, 3, 8, 64}) {
    const SphereSource src(n, 1.0);
    for (const double x : ratios) {
      const double closed = rate_distortion(src, x, policy).rate;
      route_gap = std::max(route_gap,
                           std::abs(closed - rate_distortion_integral(src, x, policy).rate));
      const double step = 1e-6;
      const double fd = (rate_distortion(src, x + step, policy).rate -
                         rate_distortion(src, x - step, policy).rate) /
                        (2.0 * step);
      const double exact = rate_derivative(src, x, policy);
      derivative_gap = std::max(derivative_gap, std::abs(exact - fd) / std::abs(exact));
      const GaussianSandwich s = gaussian_sandwich(src, x, policy);
      sandwich_slack = std::max({sandwich_slack, s.lo - s.mid, s.mid - s.hi});
    }
  }
  lines.push_back({"Theorem 1 vs Theorem 2", route_gap <= 10.0 * policy.quad_tol,
                   sci("max gap", route_gap)});
  lines.push_back({"Lemma 3 derivative", derivative_gap <= 1e-5,
                   sci("max relative gap to central differences", derivative_gap)});
  lines.push_back({"Prop. 3 sandwich", sandwich_slack <= 1e-9,
                   sci("max violation", std::max(0.0, sandwich_slack))});

  double corollary = 0.0;
  for (const double x : fractions(0.02, 0.02, 0.98)) {
    const double y = std::sqrt(1.0 - x);
    const double expected = std::numbers::ln2 - binary_entropy(0.5 * (1.0 + y));
    corollary =
        std::max(corollary, std::abs(rate_distortion({1, 1.0}, x, policy).rate - expected));
  }
  lines.push_back({"Corollary 1 n = 1", corollary <= 1e-12, sci("max error", corollary)});

  bool monotone = true;
  for (const double nu : {0.5, 1.0, 4.0, 32.0}) {
    double previous = xi(Order(nu), 1e-4, policy);
    for (const double t : log_grid(1e-4, 1e6, 120)) {
      const double value = xi(Order(nu), t, policy);
      monotone = monotone && value <= previous;
      previous = value;
    }
  }
  lines.push_back({"Lemma 2 xi decreasing", monotone, "increasing t grid, 4 orders"});

  double scale = 0.0;
  for (const int n : {1, 4, 16}) {
    for (const double c : {0.3, 2.0, 9.0}) {
      const double a = rate_distortion({n, 1.0}, 0.4, policy).rate;
      const double b = rate_distortion({n, c}, 0.4 * c * c, policy).rate;
      scale = std::max(scale, std::abs(a - b) / a);
    }
  }
  lines.push_back({"Theorem 1 scale covariance", scale <= 1e-12, sci("max relative gap", scale)});

  double limit_gap = 0.0;
  for (const double nu : {0.5, 1.0, 2.5, 8.0}) {
    limit_gap = std::max(limit_gap,
                         std::abs(h(Order(nu), 1e-6, policy) - h_limit_at_zero(Order(nu))));
  }
  const double top_half = h(Order(0.5), 1.0 - 1e-9, 1e-9, policy);
  const double top_five = h(Order(5.0), 0.999999, policy);
  lines.push_back({"Lemma 2 limits", limit_gap <= 1e-6 && std::abs(top_half) < 1e-6 &&
                                         top_five < -10.0,
                   sci("gap at y = 1e-6", limit_gap) + ", " + sci("h_1/2(1-1e-9)", top_half) +
                       ", " + sci("h_5(0.999999)", top_five)});
}

void dual_suite(const EvalPolicy& policy, std::vector<VerifyLine>& lines) {
  double value_gap = 0.0;
  double location_gap = 0.0;
  for (const int n : {1, 2, 4, 16}) {
    for (const double R : {0.5, 1.0, 7.0}) {
      const SphereSource src(n, R);
      for (const double x : fractions(0.05, 0.05, 0.95)) {
        const double D = x * R * R;
        const DualSolution s = dual_rate(src, D, 32, policy);
        value_gap = std::max(value_gap, std::abs(s.value - rate_distortion(src, D, policy).rate));
        location_gap = std::max(location_gap, std::abs(s.r_star - std::sqrt(R * R - D)) / R);
      }
    }
  }
  lines.push_back({"Lemma 5 oracle equivalence", value_gap <= 1e-6, sci("max gap", value_gap)});
  lines.push_back({"Lemma 7 r* location", location_gap <= 1e-6,
                   sci("max |r* - sqrt(R^2 - D)| / R", location_gap)});

  bool convex = true;
  double stationarity = 0.0;
  for (const int n : {1, 3, 8}) {
    const SphereSource src(n, 1.0);
    for (const double x : {0.1, 0.5, 0.9}) {
      for (const double r : {std::sqrt(1.0 - x), 1.0}) {
        const double lambda = lambda_star(src, r, x, policy);
        const double eps = 1e-3 * lambda;
        const double centre = dual_inner(src, r, x, lambda, policy);
        convex = convex && dual_inner(src, r, x, lambda + eps, policy) >= centre &&
                 dual_inner(src, r, x, lambda - eps, policy) >= centre;
        stationarity = std::max(
            stationarity, std::abs(lambda_star_direct(src, r, x, policy) - lambda) / lambda);
      }
    }
  }
  lines.push_back({"Lemma 6 inner convexity", convex && stationarity <= 1e-5,
                   sci("direct search vs closed form, relative", stationarity)});

  bool unimodal = true;
  for (const int n : {1, 2, 8}) {
    for (const double x : {0.1, 0.5, 0.9}) {
      const auto profile = dual_profile({n, 1.0}, x, 64, policy);
      const auto peak = std::max_element(profile.begin(), profile.end(),
                                         [](const auto& a, const auto& b) {
                                           return a.objective < b.objective;
                                         });
      for (auto it = profile.begin(); it + 1 != profile.end(); ++it) {
        const bool rising = it + 1 <= peak;
        if (rising ? (it + 1)->objective < it->objective : (it + 1)->objective > it->objective) {
          unimodal = false;
        }
      }
    }
  }
  lines.push_back({"Lemma 7 unimodality", unimodal, "64-point profiles"});
}

void asymptotics_suite(const EvalPolicy& policy, std::vector<VerifyLine>& lines) {
  double dim_gap = 0.0;
  for (const int n : {2, 4, 8}) {
    const double target = 1.0 - 1.0 / n;
    dim_gap = std::max(dim_gap,
                       std::abs(information_dimension(n, 1.0, 7, policy).fitted_dim - target) /
                           target);
  }
  const bool discrete = information_dimension(1, 1.0, 7, policy).fitted_dim == 0.0;
  lines.push_back({"Prop. 4 information dimension", dim_gap <= 0.01 && discrete,
                   sci("max relative gap", dim_gap)});

  bool inside = true;
  for (const int n : {16, 256, 4096}) {
    const HighDimProbe p = high_dim_probe(n, 1.0, 1.0, 1.0, policy);
    inside = inside && p.ratio_lo - 1e-12 <= p.ratio && p.ratio <= p.ratio_hi + 1e-12;
  }
  const double small = high_dim_probe(100, 1.0, 1.0, 1.0, policy).ratio;
  const double large = high_dim_probe(10000, 1.0, 1.0, 1.0, policy).ratio;
  const double linear = high_dim_probe(10000, 10000.0, 1.0, 1.0, policy).ratio;
  const bool trend = std::abs(large - 1.0) <= 0.05 && std::abs(large - 1.0) < std::abs(small - 1.0) &&
                     std::abs(linear - 2.0) <= 0.1;
  lines.push_back({"Prop. 5 high-dimensional ratio", inside && trend,
                   sci("ratio(1e4)", large) + ", " + sci("alpha = n ratio(1e4)", linear)});

  double residual = 0.0;
  for (const double sigma : log_grid(1e-2, 1e2, 81)) {
    residual = std::max(residual, std::abs(mmse_limit_constant(sigma) - 1.0));
  }
  lines.push_back({"MMSE limit constant", residual <= 1e-10, sci("max residual", residual)});

  const McEstimate first = mc_mmse(256, 16.0, 20000, 7, policy);
  const McEstimate second = mc_mmse(256, 16.0, 20000, 7, policy);
  const double ratio = first.mean / gaussian_mmse(256, 1.0);
  lines.push_back({"MMSE Monte Carlo", first.mean == second.mean && first.mean <= 256.0 &&
                                           std::abs(ratio - 1.0) <= 0.05,
                   sci("mmse ratio at n = 256", ratio) + ", bit-identical rerun"});

  const MiEstimate mi = mc_mutual_information(256, 1.0, 2000, 16, 7, policy);
  lines.push_back({"I-MMSE mutual information", std::abs(mi.estimate.mean - mi.reference) <= 0.05,
                   sci("per-dimension estimate", mi.estimate.mean) + " vs " +
                       sci("log(2)/2", mi.reference)});
}

}  // namespace

std::vector<VerifyLine> run_verify(const std::string& suite, const EvalPolicy& policy) {
  const bool all = suite == "all";
  if (!all && suite != "bessel" && suite != "rd" && suite != "dual" && suite != "asymptotics") {
    throw DomainError("verify: unknown suite " + suite);
  }
  std::vector<VerifyLine> lines;
  const auto guarded = [&](const char* name, auto&& body) {
    try {
      body(policy, lines);
    } catch (const std::exception& e) {
      lines.push_back({std::string(name) + " suite", false, e.what()});
    }
  };
  if (all || suite == "bessel") guarded("bessel", bessel_suite);
  if (all || suite == "rd") guarded("rd", rd_suite);
  if (all || suite == "dual") guarded("dual", dual_suite);
  if (all || suite == "asymptotics") guarded("asymptotics", asymptotics_suite);
  return lines;
}

}  // namespace sphrd::cli
