// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria, exit 1 if any fails
//   acceptance --criterion N   run criterion N only
//   acceptance --report        run all criteria, always exit 0

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "sphrd/asymptotics.hpp"
#include "sphrd/bessel.hpp"
#include "sphrd/dual.hpp"
#include "sphrd/rate_distortion.hpp"

using namespace sphrd;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0 when no runtime bound is stated
  std::function<Outcome()> check;
};

std::string fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  }
  return grid;
}

long double binary_entropy(long double p) {
  return -p * std::log(p) - (1.0L - p) * std::log1p(-p);
}

// Shared grid of criteria 4 to 7.
const std::vector<int> kGridDims = {1, 2, 4, 16, 64};
const std::vector<double> kGridRadii = {0.5, 1.0, 7.0};

std::vector<double> grid_fractions() {
  std::vector<double> x;
  for (int k = 1; k <= 19; ++k) x.push_back(0.05 * k);
  return x;
}

Outcome closed_form_n1() {
  const std::vector<double> radii = {0.1, 0.5, 1.0, 3.0, 20.0};
  const std::vector<double> fractions = {1e-3, 0.01, 0.1, 0.25, 0.4, 0.5, 0.7, 0.9, 0.99, 0.999};
  double worst = 0.0;
  int pairs = 0;
  for (const double R : radii) {
    for (const double x : fractions) {
      const double D = x * R * R;
      const long double ratio = static_cast<long double>(D) / (static_cast<long double>(R) * R);
      const long double y = std::sqrt(1.0L - ratio);
      const long double expected = std::log(2.0L) - binary_entropy((1.0L + y) / 2.0L);
      const double got = rate_distortion({1, R}, D).rate;
      worst = std::max(worst, static_cast<double>(std::abs(got - expected)));
      ++pairs;
    }
  }
  return {worst <= 1e-12 && pairs == 50, fmt("max abs error %.2e over %d pairs", worst, pairs)};
}

Outcome half_order_identities() {
  double tanh_error = 0.0;
  double forced_error = 0.0;
  const EvalPolicy policy;
  for (const double t : log_grid(1e-3, 50.0, 2000)) {
    tanh_error = std::max(tanh_error, std::abs(bessel_ratio(Order(0.5), t) - std::tanh(t)));
    if (t >= policy.small_t_threshold * 1.5) {
      const RatioValue cf =
          detail::bessel_ratio(BesselRegime::kContinuedFraction, 0.5, t, policy);
      forced_error = std::max(forced_error, std::abs(cf.value - std::tanh(t)));
    }
  }
  double entropy_error = 0.0;
  for (int k = 0; k <= 980; ++k) {
    const double y = 0.01 + 0.001 * k;
    const double expected = static_cast<double>(binary_entropy((1.0L + y) / 2.0L));
    entropy_error = std::max(entropy_error, std::abs(h(Order(0.5), y) - expected));
  }
  const bool pass = tanh_error <= 1e-12 && forced_error <= 1e-12 && entropy_error <= 1e-10;
  return {pass, fmt("tanh %.2e (continued fraction %.2e), entropy %.2e", tanh_error,
                    forced_error, entropy_error)};
}

Outcome ratio_sandwich_margin() {
  const std::vector<double> orders = {0.5, 1.0, 2.5, 10.0, 500.0};
  const std::vector<double> ts = log_grid(1e-6, 1e6, 40);
  constexpr double kMargin = 1e-15;
  int weak = 0;
  int strict = 0;
  double smallest = 1.0;
  for (const double nu : orders) {
    for (const double t : ts) {
      const double f = bessel_ratio(Order(nu), t);
      const double lo = ratio_bound_g(nu, t);
      const double hi = ratio_bound_g(nu - 0.5, t);
      if (!(lo <= f && f <= hi && hi <= 1.0)) ++weak;
      const double margin = std::min({f - lo, hi - f, 1.0 - hi});
      smallest = std::min(smallest, margin);
      if (!(margin >= kMargin)) ++strict;
    }
  }
  return {weak == 0 && strict == 0,
          fmt("%d of 200 points below margin 1e-15 (smallest %.2e), %d weak violations", strict,
              smallest, weak)};
}

Outcome route_equivalence() {
  double worst = 0.0;
  for (const int n : kGridDims) {
    for (const double R : kGridRadii) {
      const SphereSource src(n, R);
      for (const double x : grid_fractions()) {
        const double D = x * R * R;
        const double a = rate_distortion(src, D).rate;
        const double b = rate_distortion_integral(src, D).rate;
        const double c = dual_rate(src, D).value;
        worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
      }
    }
  }
  return {worst <= 1e-6, fmt("max pairwise disagreement %.2e nats over 285 points", worst)};
}

Outcome derivative_check() {
  double worst = 0.0;
  for (const int n : kGridDims) {
    for (const double R : kGridRadii) {
      const SphereSource src(n, R);
      for (const double x : grid_fractions()) {
        const double D = x * R * R;
        const double step = 1e-6 * R * R;
        const double fd =
            (rate_distortion(src, D + step).rate - rate_distortion(src, D - step).rate) /
            (2.0 * step);
        const double exact = rate_derivative(src, D);
        worst = std::max(worst, std::abs(exact - fd) / std::abs(exact));
      }
    }
  }
  return {worst <= 1e-5, fmt("max relative error %.2e", worst)};
}

Outcome optimizer_location() {
  double worst = 0.0;
  for (const int n : kGridDims) {
    for (const double R : kGridRadii) {
      const SphereSource src(n, R);
      for (const double x : grid_fractions()) {
        const double D = x * R * R;
        const DualSolution s = dual_rate(src, D);
        worst = std::max(worst, std::abs(s.r_star - std::sqrt(R * R - D)) / R);
      }
    }
  }
  return {worst <= 1e-6, fmt("max |r - sqrt(R^2 - D)| / R = %.2e", worst)};
}

Outcome gaussian_sandwich_check() {
  double slack = 0.0;
  for (const int n : kGridDims) {
    for (const double R : kGridRadii) {
      for (const double x : grid_fractions()) {
        const GaussianSandwich s = gaussian_sandwich({n, R}, x * R * R);
        slack = std::max({slack, s.lo - s.mid, s.mid - s.hi});
      }
    }
  }
  return {slack <= 1e-9, fmt("largest ordering violation %.2e", slack)};
}

Outcome dimension_fit() {
  bool pass = information_dimension(1, 1.0).fitted_dim == 0.0;
  std::string detail = "n=1: 0";
  for (const int n : {2, 4, 8}) {
    const double fitted = information_dimension(n, 1.0).fitted_dim;
    const double expected = 1.0 - 1.0 / n;
    const double rel = std::abs(fitted - expected) / expected;
    pass = pass && rel <= 0.01;
    detail += fmt(", n=%d: %.6f (rel %.1e)", n, fitted, rel);
  }
  return {pass, detail};
}

Outcome high_dim_trend() {
  const HighDimProbe large = high_dim_probe(10000, 1.0, 1.0, 1.0);
  const HighDimProbe small = high_dim_probe(100, 1.0, 1.0, 1.0);
  const HighDimProbe linear = high_dim_probe(10000, 10000.0, 1.0, 1.0);
  const double gap_large = std::abs(large.ratio - 1.0);
  const double gap_small = std::abs(small.ratio - 1.0);
  const double gap_linear = std::abs(linear.ratio - 2.0);
  const bool pass = large.exact && linear.exact && gap_large <= 0.05 && gap_large < gap_small &&
                    gap_linear <= 0.1;
  return {pass, fmt("ratio %.6f at n=1e4, %.6f at n=1e2; alpha_n = n: %.6f", large.ratio,
                    small.ratio, linear.ratio)};
}

Outcome limit_constant() {
  double worst = 0.0;
  for (const double sigma : log_grid(1e-2, 1e2, 401)) {
    worst = std::max(worst, std::abs(mmse_limit_constant(sigma) - 1.0));
  }
  return {worst <= 1e-10, fmt("max |c(sigma) - 1| = %.2e on 401 points", worst)};
}

Outcome monte_carlo() {
  constexpr int n = 256;
  constexpr double sigma2 = 1.0;
  constexpr std::uint64_t seed = 42;
  const double R = std::sqrt(sigma2 * n);
  const McEstimate mmse = mc_mmse(n, R, 100000, seed);
  const McEstimate mmse_again = mc_mmse(n, R, 100000, seed);
  const double ratio = mmse.mean / gaussian_mmse(n, sigma2);
  const MiEstimate mi = mc_mutual_information(n, sigma2, 10000, 16, seed);
  const MiEstimate mi_again = mc_mutual_information(n, sigma2, 10000, 16, seed);
  const double target = gaussian_mi_per_dim(sigma2);
  const bool deterministic = mmse.mean == mmse_again.mean && mmse.std_error == mmse_again.std_error &&
                             mi.estimate.mean == mi_again.estimate.mean;
  const bool pass =
      deterministic && std::abs(ratio - 1.0) <= 0.05 && std::abs(mi.estimate.mean - target) <= 0.05;
  return {pass, fmt("mmse ratio %.5f (se %.1e), MI/n %.6f vs %.6f (se %.1e), %s", ratio,
                    mmse.std_error / gaussian_mmse(n, sigma2), mi.estimate.mean, target,
                    mi.estimate.std_error, deterministic ? "bit-identical reruns" : "NOT deterministic")};
}

Outcome h_limits() {
  double worst_zero = 0.0;
  for (const double nu : {0.5, 1.0, 1.5, 2.0, 5.0, 10.0, 50.0}) {
    worst_zero = std::max(worst_zero, std::abs(h(Order(nu), 1e-6) - h_limit_at_zero(Order(nu))));
  }
  const double half_near_one = h(Order(0.5), 1.0 - 1e-6, 1e-6);
  const double half_closer = h(Order(0.5), 1.0 - 1e-12, 1e-12);
  const double five = h(Order(5.0), 0.999999);
  const bool pass = worst_zero <= 1e-6 && std::abs(half_near_one) < 1e-4 &&
                    std::abs(half_closer) < std::abs(half_near_one) && std::abs(half_closer) < 1e-10 &&
                    five < -10.0;
  return {pass, fmt("|h(1e-6) - log S| <= %.2e; h_1/2 at 1-1e-6: %.2e, at 1-1e-12: %.2e; "
                    "h_5(0.999999) = %.4f",
                    worst_zero, half_near_one, half_closer, five)};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "closed form n = 1", 1.0, closed_form_n1},
      {2, "order 1/2 kernel identities", 1.0, half_order_identities},
      {3, "ratio bounds with strict margin", 1.0, ratio_sandwich_margin},
      {4, "three routes agree", 30.0, route_equivalence},
      {5, "derivative vs finite differences", 10.0, derivative_check},
      {6, "dual optimizer radius", 0.0, optimizer_location},
      {7, "Gaussian sandwich ordering", 0.0, gaussian_sandwich_check},
      {8, "information dimension", 10.0, dimension_fit},
      {9, "high-dimensional ratio trend", 60.0, high_dim_trend},
      {10, "MMSE limit constant", 0.0, limit_constant},
      {11, "Monte Carlo MMSE and mutual information", 120.0, monte_carlo},
      {12, "h limits at the endpoints", 0.0, h_limits},
  };
  return list;
}

bool run_one(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = c.check();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = outcome.pass;
  std::string timing = fmt("%.3f s", seconds);
  if (c.budget_seconds > 0.0) {
    timing += fmt(" of %.0f s", c.budget_seconds);
    pass = pass && seconds < c.budget_seconds;
  }
  std::printf("criterion %2d %-42s %s  %s [%s]\n", c.id, c.title, pass ? "PASS" : "FAIL",
              outcome.detail.c_str(), timing.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  bool report = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--report") == 0) {
      report = true;
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--report]\n");
      return 2;
    }
  }
  int failures = 0;
  int ran = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    if (!run_one(c)) ++failures;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  std::printf("%d of %d criteria passed\n", ran - failures, ran);
  return report || failures == 0 ? 0 : 1;
}
