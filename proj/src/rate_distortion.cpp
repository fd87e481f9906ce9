#include "sphrd/rate_distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphrd/errors.hpp"
#include "sphrd/quadrature.hpp"

namespace sphrd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// xi_nu(t) - log S_{2nu-1}, with f standing in for f_nu(t). Passing the exact
// target y of an inversion makes the result stationary in t, so root-finding
// noise in t enters only at second order.
double xi_shifted(double nu, double t, const RatioValue& f, const EvalPolicy& policy) {
  if (t <= nu + 1.0) return log_bessel_i_normalized(nu - 1.0, t, policy) - t * f.value;
  return t * f.complement + log_bessel_i_scaled(nu - 1.0, t, policy) + std::lgamma(nu) -
         (nu - 1.0) * std::log(0.5 * t);
}

// xi_nu(t) itself. For large t it is assembled from terms that each vanish
// or stay bounded, so the nu = 1/2 limit xi -> 0 is approached without
// cancellation.
double xi_value(double nu, double t, const RatioValue& f, const EvalPolicy& policy) {
  if (t <= nu + 1.0) return log_surface_area(2.0 * nu) + xi_shifted(nu, t, f, policy);
  return t * f.complement - (nu - 0.5) * std::log(t / (2.0 * std::numbers::pi)) +
         log_bessel_i_tail(nu - 1.0, t, policy);
}

struct Target {
  double y;
  double one_minus_y;
};

// y = sqrt(1 - D/R^2) and 1 - y = (D/R^2) / (1 + y).
Target radial_target(const SphereSource& src, double D) {
  const double x = std::min(1.0, D / (src.R * src.R));
  const double y = std::sqrt(1.0 - x);
  return {y, x / (1.0 + y)};
}

void check_distortion(double D, const char* where) {
  if (!(D >= 0.0) || std::isnan(D)) {
    throw DomainError(std::string(where) + ": distortion must be nonnegative");
  }
}

}  // namespace

SphereSource::SphereSource(int dimension, double radius) : n(dimension), R(radius) {
  if (n < 1) throw DomainError("SphereSource: dimension must be at least 1");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("SphereSource: radius must be positive");
}

const char* to_string(Route route) noexcept {
  switch (route) {
    case Route::kClosedForm:
      return "closed_form";
    case Route::kIntegral:
      return "integral";
    case Route::kDual:
      return "dual";
  }
  return "unknown";
}

double log_surface_area(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("log_surface_area: dimension must be > 0");
  return std::numbers::ln2 + 0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d);
}

double log_surface_area(int n) {
  if (n < 1) throw DomainError("log_surface_area: dimension must be at least 1");
  return log_surface_area(static_cast<double>(n));
}

double surface_area(int n) { return std::exp(log_surface_area(n)); }

XiEval xi_eval(Order nu, double t, const EvalPolicy& policy) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("xi: argument must be positive");
  const RatioValue f = bessel_ratio_pair(nu, t, policy);
  return {t, xi_value(nu.value(), t, f, policy), NAN};
}

double xi(Order nu, double t, const EvalPolicy& policy) { return xi_eval(nu, t, policy).xi; }

double h(Order nu, double y, double one_minus_y, const EvalPolicy& policy) {
  if (!(y > 0.0 && y < 1.0) || !(one_minus_y > 0.0)) {
    throw DomainError("h: argument must lie strictly inside (0, 1)");
  }
  const double t = inverse_ratio(nu, y, one_minus_y, policy);
  return xi_value(nu.value(), t, {y, one_minus_y}, policy);
}

double h(Order nu, double y, const EvalPolicy& policy) { return h(nu, y, 1.0 - y, policy); }

XiEval h_eval(Order nu, double y, const EvalPolicy& policy) {
  const double value = h(nu, y, policy);
  return {inverse_ratio(nu, y, policy), value, y};
}

double h_limit_at_zero(Order nu) { return log_surface_area(2.0 * nu.value()); }

double h_limit_at_one(Order nu) { return nu.value() == 0.5 ? 0.0 : -kInf; }

RatePoint rate_distortion(const SphereSource& src, double D, const EvalPolicy& policy) {
  check_distortion(D, "rate_distortion");
  if (D >= src.R * src.R) return {D, 0.0, Route::kClosedForm};
  if (D == 0.0) {
    if (src.n == 1) return {D, std::numbers::ln2, Route::kClosedForm};
    throw DomainError("rate_distortion: rate is infinite at D = 0 for n > 1");
  }
  const Target target = radial_target(src, D);
  const Order nu = src.order();
  const double t = inverse_ratio(nu, target.y, target.one_minus_y, policy);
  const double rate = -xi_shifted(nu.value(), t, {target.y, target.one_minus_y}, policy);
  return {D, std::max(0.0, rate), Route::kClosedForm};
}

RatePoint rate_distortion_limit(const SphereSource& src, double D, const EvalPolicy& policy) {
  check_distortion(D, "rate_distortion_limit");
  if (D == 0.0 && src.n > 1) return {D, kInf, Route::kClosedForm};
  return rate_distortion(src, D, policy);
}

RatePoint rate_distortion_integral(const SphereSource& src, double D, const EvalPolicy& policy) {
  if (!(D > 0.0)) throw DomainError("rate_distortion_integral: distortion must be positive");
  if (D >= src.R * src.R) return {D, 0.0, Route::kIntegral};
  const Order nu = src.order();
  const double upper = radial_target(src, D).y;
  const auto integrand = [&](double u) { return inverse_ratio(nu, u, 1.0 - u, policy); };
  const QuadratureResult q = integrate_adaptive(integrand, 0.0, upper, policy.quad_tol);
  return {D, q.value, Route::kIntegral};
}

double rate_derivative(const SphereSource& src, double D, const EvalPolicy& policy) {
  if (!(D > 0.0 && D < src.R * src.R)) {
    throw DomainError("rate_derivative: distortion must lie strictly inside (0, R^2)");
  }
  const Target target = radial_target(src, D);
  const double t = inverse_ratio(src.order(), target.y, target.one_minus_y, policy);
  return -t / (2.0 * src.R * src.R * target.y);
}

double gaussian_rdf(int n, double sigma2, double D) {
  if (n < 1) throw DomainError("gaussian_rdf: dimension must be at least 1");
  if (!(sigma2 > 0.0) || !(D > 0.0)) {
    throw DomainError("gaussian_rdf: variance and distortion must be positive");
  }
  return std::max(0.0, 0.5 * n * std::log(n * sigma2 / D));
}

GaussianSandwich gaussian_sandwich(const SphereSource& src, double D, const EvalPolicy& policy) {
  if (!(D > 0.0)) throw DomainError("gaussian_sandwich: distortion must be positive");
  const double hi = gaussian_rdf(src.n, src.R * src.R / src.n, D);
  const double lo = (src.n - 1.0) / src.n * hi;
  return {lo, rate_distortion(src, D, policy).rate, hi};
}

}  // namespace sphrd
