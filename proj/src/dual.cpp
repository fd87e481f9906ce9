#include "sphrd/dual.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sphrd/bessel.hpp"
#include "sphrd/errors.hpp"

namespace sphrd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
constexpr double kBoundaryShrink = 1e-12;
constexpr int kMaxGoldenIterations = 300;

// 1 - delta(r) written without cancellation.
double delta_complement(const SphereSource& src, double r, double D) {
  const double gap = r - src.R;
  return (D - gap * gap) / (2.0 * r * src.R);
}

template <typename F>
double golden_section_max(F&& objective, double a, double b, double width_tol) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int iter = 0; iter < kMaxGoldenIterations && b - a > width_tol; ++iter) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = objective(x2);
    }
  }
  return f1 >= f2 ? x1 : x2;
}

}  // namespace

double log_q_lambda(const SphereSource& src, double r, double lambda, const EvalPolicy& policy) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("log_q_lambda: radius must be >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("log_q_lambda: multiplier must be >= 0");
  }
  const double R = src.R;
  const double order = 0.5 * src.n - 1.0;
  const double x = 2.0 * lambda * r * R;
  if (x <= order + 1.0) {
    return -lambda * (r * r + R * R) + log_bessel_i_normalized(order, x, policy);
  }
  const double gap = r - R;
  return -lambda * gap * gap + log_bessel_i_scaled(order, x, policy) +
         order * std::numbers::ln2 + std::lgamma(order + 1.0) - order * std::log(x);
}

double dual_delta(const SphereSource& src, double r, double D) {
  if (!(r > 0.0)) throw DomainError("dual_delta: radius must be positive");
  return (r * r + src.R * src.R - D) / (2.0 * r * src.R);
}

double dual_inner(const SphereSource& src, double r, double D, double lambda,
                  const EvalPolicy& policy) {
  return log_q_lambda(src, r, lambda, policy) + D * lambda;
}

double lambda_star(const SphereSource& src, double r, double D, const EvalPolicy& policy) {
  const double delta = dual_delta(src, r, D);
  const double complement = delta_complement(src, r, D);
  if (!(delta > 0.0)) throw DomainError("lambda_star: delta(r) must be positive");
  if (complement <= 0.0) {
    if (complement >= -8.0 * std::numeric_limits<double>::epsilon()) return kInf;
    throw DomainError("lambda_star: radius outside [R - sqrt(D), R + sqrt(D)]");
  }
  return inverse_ratio(src.order(), delta, complement, policy) / (2.0 * r * src.R);
}

double lambda_star_direct(const SphereSource& src, double r, double D, const EvalPolicy& policy) {
  const double delta = dual_delta(src, r, D);
  const double complement = delta_complement(src, r, D);
  if (!(delta > 0.0) || !(complement > 0.0)) {
    throw DomainError("lambda_star_direct: delta(r) must lie in (0, 1)");
  }
  const double scale = 2.0 * r * src.R;
  const InverseBracket bracket = inverse_bracket(src.order(), delta);
  const double hi = 1.5 * bracket.hi / scale + 1.0;
  const auto negated = [&](double lambda) { return -dual_inner(src, r, D, lambda, policy); };
  return golden_section_max(negated, 0.0, hi, 1e-10 * hi);
}

double dual_objective(const SphereSource& src, double r, double D, const EvalPolicy& policy) {
  const double lambda = lambda_star(src, r, D, policy);
  if (std::isinf(lambda)) {
    return h_limit_at_one(src.order()) - log_surface_area(src.n);
  }
  return dual_inner(src, r, D, lambda, policy);
}

std::vector<DualProfilePoint> dual_profile(const SphereSource& src, double D, int points,
                                           const EvalPolicy& policy) {
  if (!(D > 0.0 && D < src.R * src.R)) {
    throw DomainError("dual_profile: distortion must lie strictly inside (0, R^2)");
  }
  if (points < 2) throw DomainError("dual_profile: need at least two points");
  const double half_width = std::sqrt(D) - kBoundaryShrink * src.R;
  const double a = src.R - half_width;
  const double step = 2.0 * half_width / (points - 1);
  std::vector<DualProfilePoint> profile(points);
  for (int i = 0; i < points; ++i) {
    const double r = i + 1 == points ? src.R + half_width : a + i * step;
    profile[i] = {r, dual_objective(src, r, D, policy)};
  }
  return profile;
}

DualSolution dual_rate(const SphereSource& src, double D, int grid_points,
                       const EvalPolicy& policy) {
  if (grid_points < 16) throw DomainError("dual_rate: need at least 16 grid points");
  const std::vector<DualProfilePoint> grid = dual_profile(src, D, grid_points, policy);

  int best = 0;
  for (int i = 1; i < grid_points; ++i) {
    if (grid[i].objective > grid[best].objective) best = i;
  }
  const double lo = grid[best > 0 ? best - 1 : 0].r;
  const double hi = grid[best + 1 < grid_points ? best + 1 : best].r;
  const auto objective = [&](double r) { return dual_objective(src, r, D, policy); };
  const double r_star = golden_section_max(objective, lo, hi, 1e-11 * src.R);
  const double best_value = objective(r_star);
  if (!std::isfinite(best_value)) {
    throw ConvergenceError("dual_rate: objective is not finite at the located radius", NAN);
  }

  DualSolution solution;
  solution.r_star = r_star;
  solution.lambda_star = lambda_star(src, r_star, D, policy);
  solution.delta = dual_delta(src, r_star, D);
  solution.value = -best_value;
  return solution;
}

}  // namespace sphrd
