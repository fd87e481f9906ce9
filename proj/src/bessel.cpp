#include "sphrd/bessel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphrd/errors.hpp"

namespace sphrd {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesTruncation = 1e-17;
// Below this argument the exponentially small part of I_nu dropped by the
// large-argument expansion is still visible in double precision.
constexpr double kHankelMinArgument = 24.0;
constexpr int kMaxRootIterations = 200;

void check_order(double nu, double min_nu, const char* where) {
  if (!std::isfinite(nu) || nu < min_nu) {
    throw DomainError(std::string(where) + ": order " + std::to_string(nu) + " below " +
                      std::to_string(min_nu));
  }
}

void check_argument(double t, const char* where) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(where) + ": argument must be positive and finite");
  }
}

double small_t_limit(double nu, const EvalPolicy& policy) {
  return policy.small_t_threshold * (nu + 1.0);
}

// log g_nu(t) without cancellation when t >> nu.
double log_bound_g(double nu, double t) {
  const double s = std::hypot(nu, t);
  return -std::log1p((nu + nu * nu / (s + t)) / t);
}

// sum_k (t^2/4)^k / (k! (nu+1)_k); every term is positive.
double normalized_series(double nu, double t, const EvalPolicy& policy) {
  const double q = 0.25 * t * t;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= policy.cf_max_terms; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (term < kSeriesTruncation * sum) return sum;
  }
  throw ConvergenceError("ascending Bessel series did not converge", term / sum);
}

double log_scaled_series(double nu, double t, const EvalPolicy& policy) {
  return -t + nu * std::log(0.5 * t) - std::lgamma(nu + 1.0) +
         std::log(normalized_series(nu, t, policy));
}

// Ascending series summed in both directions from its dominant term so that
// the cost grows like sqrt(t) instead of t.
double log_scaled_peak_series(double nu, double t, const EvalPolicy& policy) {
  const double q = 0.25 * t * t;
  const double peak = std::floor(std::max(0.0, 0.5 * (std::hypot(nu, t) - nu)));
  const double log_half_t = std::log(0.5 * t);
  const double log_peak_term =
      (2.0 * peak + nu) * log_half_t - std::lgamma(peak + 1.0) - std::lgamma(nu + peak + 1.0);

  double sum = 1.0;
  double term = 1.0;
  int iterations = 0;
  for (double k = peak + 1.0;; k += 1.0) {
    term *= q / (k * (nu + k));
    sum += term;
    if (term < kSeriesTruncation * sum) break;
    if (++iterations > policy.cf_max_terms) {
      throw ConvergenceError("Bessel peak series did not converge", term / sum);
    }
  }
  term = 1.0;
  for (double k = peak; k >= 1.0; k -= 1.0) {
    term *= k * (nu + k) / q;
    sum += term;
    if (term < kSeriesTruncation * sum) break;
    if (++iterations > policy.cf_max_terms) {
      throw ConvergenceError("Bessel peak series did not converge", term / sum);
    }
  }
  return log_peak_term + std::log(sum) - t;
}

// Large-argument expansion sum_k (-1)^k a_k(mu) / t^k.
double hankel_sum(double mu, double t, const EvalPolicy& policy) {
  const double four_mu2 = 4.0 * mu * mu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= policy.cf_max_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (four_mu2 - odd * odd) / (8.0 * k * t);
    if (next == 0.0) return sum;
    if (std::abs(next) >= std::abs(term) && k > 1) {
      throw ConvergenceError("large-argument Bessel expansion diverged", std::abs(term / sum));
    }
    term = next;
    sum += term;
    if (std::abs(term) < kSeriesTruncation * std::abs(sum)) return sum;
  }
  throw ConvergenceError("large-argument Bessel expansion did not converge",
                         std::abs(term / sum));
}

double log_scaled_hankel(double nu, double t, const EvalPolicy& policy) {
  return -0.5 * std::log(2.0 * std::numbers::pi * t) + std::log(hankel_sum(nu, t, policy));
}

// Debye polynomials u_1..u_4 (Abramowitz & Stegun 9.3.9-9.3.10), summed as
// sum_k u_k(p) / mu^k excluding the leading 1.
double debye_correction(double mu, double p) {
  const double p2 = p * p;
  const double u1 = p * (3.0 - 5.0 * p2) / 24.0;
  const double u2 = p2 * (81.0 + p2 * (-462.0 + p2 * 385.0)) / 1152.0;
  const double u3 =
      p * p2 * (30375.0 + p2 * (-369603.0 + p2 * (765765.0 - p2 * 425425.0))) / 414720.0;
  const double u4 =
      p2 * p2 *
      (4465125.0 +
       p2 * (-94121676.0 + p2 * (349922430.0 + p2 * (-446185740.0 + p2 * 185910725.0)))) /
      39813120.0;
  const double inv = 1.0 / mu;
  return inv * (u1 + inv * (u2 + inv * (u3 + inv * u4)));
}

double log_scaled_uniform(double mu, double t) {
  if (!(mu > 0.0)) throw DomainError("uniform Bessel expansion needs a positive order");
  const double s = std::hypot(mu, t);
  return -0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(s) + mu * mu / (s + t) +
         mu * log_bound_g(mu, t) + std::log1p(debye_correction(mu, mu / s));
}

// f_nu = t / (2 nu + t f_{nu+1}); the same shape as g_nu = t / (2 nu + t g_nu),
// so the bound ordering survives rounding when both are near t / (2 nu).
// I_{1/2} and I_{-1/2} are sqrt(2/(pi t)) times sinh and cosh.
double log_scaled_elementary(double nu, double t) {
  const double e = std::exp(-2.0 * t);
  const double shape = nu > 0.0 ? std::log(-std::expm1(-2.0 * t)) : std::log1p(e);
  return -0.5 * std::log(2.0 * std::numbers::pi * t) + shape;
}

RatioValue ratio_elementary(double t) {
  const double e = std::exp(-2.0 * t);
  return {-std::expm1(-2.0 * t) / (1.0 + e), 2.0 * e / (1.0 + e)};
}

bool is_elementary_order(double nu) { return nu == 0.5 || nu == -0.5; }

RatioValue ratio_series(double nu, double t, const EvalPolicy& policy) {
  const double next = (0.5 * t / (nu + 1.0)) * normalized_series(nu + 1.0, t, policy) /
                      normalized_series(nu, t, policy);
  const double f = t / (2.0 * nu + t * next);
  return {f, 1.0 - f};
}

// Gauss continued fraction f_nu = 1 / (2nu/t + 1 / (2(nu+1)/t + ...)),
// modified Lentz evaluation.
RatioValue ratio_continued_fraction(double nu, double t, const EvalPolicy& policy) {
  constexpr double kTiny = 1e-300;
  double f = 2.0 * nu / t;
  if (f == 0.0) f = kTiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k <= policy.cf_max_terms; ++k) {
    const double b = 2.0 * (nu + k) / t;
    d = b + d;
    if (d == 0.0) d = kTiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < policy.cf_tol) {
      const double value = 1.0 / f;
      return {value, 1.0 - value};
    }
  }
  throw ConvergenceError("Bessel ratio continued fraction did not converge", NAN);
}

// Ratio of two large-argument expansions. The difference of the two sums is
// accumulated term by term so that 1 - f keeps full relative precision.
RatioValue ratio_hankel(double nu, double t, const EvalPolicy& policy) {
  const double m = nu - 1.0;
  const double four_nu2 = 4.0 * nu * nu;
  const double four_m2 = 4.0 * m * m;
  double p_nu = 1.0;
  double p_m = 1.0;
  double diff = 0.0;
  double s_nu = 1.0;
  double s_m = 1.0;
  double s_diff = 0.0;
  for (int k = 1; k <= policy.cf_max_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double x_nu = -(four_nu2 - odd * odd) / (8.0 * k * t);
    const double x_m = -(four_m2 - odd * odd) / (8.0 * k * t);
    diff = p_m * (2.0 * nu - 1.0) / (2.0 * k * t) + diff * x_nu;
    p_nu *= x_nu;
    p_m *= x_m;
    s_nu += p_nu;
    s_m += p_m;
    s_diff += diff;
    const bool done = std::abs(p_nu) <= kSeriesTruncation * std::abs(s_nu) &&
                      std::abs(p_m) <= kSeriesTruncation * std::abs(s_m) &&
                      std::abs(diff) <= kSeriesTruncation * std::abs(s_diff);
    if (done) return {s_nu / s_m, s_diff / s_m};
    if (k > 2 * t) break;
  }
  throw ConvergenceError("large-argument Bessel ratio expansion did not converge", NAN);
}

// log f_nu(t) from two uniform expansions, with the large leading terms
// differenced analytically.
RatioValue ratio_uniform(double nu, double t) {
  const double m = nu - 1.0;
  if (!(m > 0.0)) throw DomainError("uniform Bessel ratio needs order above 1");
  const double s_nu = std::hypot(nu, t);
  const double s_m = std::hypot(m, t);
  const double two_nu_minus_1 = 2.0 * nu - 1.0;
  const double s_gap = two_nu_minus_1 / (s_nu + s_m);
  const double log_f = -0.25 * std::log1p(two_nu_minus_1 / (m * m + t * t)) + s_gap +
                       log_bound_g(nu, t) - m * std::log1p((1.0 + s_gap) / (m + s_m)) +
                       std::log1p(debye_correction(nu, nu / s_nu)) -
                       std::log1p(debye_correction(m, m / s_m));
  return {std::exp(log_f), -std::expm1(log_f)};
}

}  // namespace

Order::Order(double nu) : nu_(nu) { check_order(nu, 0.5, "Order"); }

const char* to_string(BesselRegime regime) noexcept {
  switch (regime) {
    case BesselRegime::kSeries:
      return "series";
    case BesselRegime::kPeakSeries:
      return "peak-series";
    case BesselRegime::kContinuedFraction:
      return "continued-fraction";
    case BesselRegime::kHankel:
      return "hankel";
    case BesselRegime::kUniform:
      return "uniform";
    case BesselRegime::kElementary:
      return "elementary";
  }
  return "unknown";
}

namespace detail {

double hankel_threshold(double nu) noexcept {
  return std::max(kHankelMinArgument, nu * nu / 3.0);
}

BesselRegime select_log_regime(double nu, double t, const EvalPolicy& policy) {
  if (t < small_t_limit(nu, policy)) return BesselRegime::kSeries;
  // Below t = 1 the series is cheaper and keeps the t -> 0 limit exact.
  if (is_elementary_order(nu) && t >= 1.0) return BesselRegime::kElementary;
  if (nu > policy.large_order_threshold) return BesselRegime::kUniform;
  if (t >= hankel_threshold(nu)) return BesselRegime::kHankel;
  return BesselRegime::kPeakSeries;
}

BesselRegime select_ratio_regime(double nu, double t, const EvalPolicy& policy) {
  if (t < small_t_limit(nu, policy)) return BesselRegime::kSeries;
  if (nu == 0.5) return BesselRegime::kElementary;
  if (nu > policy.large_order_threshold) return BesselRegime::kUniform;
  if (t >= hankel_threshold(nu)) return BesselRegime::kHankel;
  return BesselRegime::kContinuedFraction;
}

double log_bessel_i_scaled(BesselRegime regime, double nu, double t, const EvalPolicy& policy) {
  check_order(nu, -0.5, "log_bessel_i");
  check_argument(t, "log_bessel_i");
  switch (regime) {
    case BesselRegime::kSeries:
      return log_scaled_series(nu, t, policy);
    case BesselRegime::kPeakSeries:
      return log_scaled_peak_series(nu, t, policy);
    case BesselRegime::kHankel:
      return log_scaled_hankel(nu, t, policy);
    case BesselRegime::kUniform:
      return log_scaled_uniform(nu, t);
    case BesselRegime::kElementary:
      if (is_elementary_order(nu)) return log_scaled_elementary(nu, t);
      break;
    case BesselRegime::kContinuedFraction:
      break;
  }
  throw DomainError("log_bessel_i: regime not applicable");
}

RatioValue bessel_ratio(BesselRegime regime, double nu, double t, const EvalPolicy& policy) {
  check_order(nu, 0.5, "bessel_ratio");
  check_argument(t, "bessel_ratio");
  switch (regime) {
    case BesselRegime::kSeries:
      return ratio_series(nu, t, policy);
    case BesselRegime::kContinuedFraction:
      return ratio_continued_fraction(nu, t, policy);
    case BesselRegime::kHankel:
      return ratio_hankel(nu, t, policy);
    case BesselRegime::kUniform:
      return ratio_uniform(nu, t);
    case BesselRegime::kElementary:
      if (nu == 0.5) return ratio_elementary(t);
      break;
    case BesselRegime::kPeakSeries:
      break;
  }
  throw DomainError("bessel_ratio: regime not applicable");
}

}  // namespace detail

double log_bessel_i_scaled(double nu, double t, const EvalPolicy& policy) {
  check_order(nu, -0.5, "log_bessel_i");
  check_argument(t, "log_bessel_i");
  return detail::log_bessel_i_scaled(detail::select_log_regime(nu, t, policy), nu, t, policy);
}

double log_bessel_i(double nu, double t, const EvalPolicy& policy) {
  return log_bessel_i_scaled(nu, t, policy) + t;
}

double log_bessel_i_tail(double nu, double t, const EvalPolicy& policy) {
  check_order(nu, -0.5, "log_bessel_i_tail");
  check_argument(t, "log_bessel_i_tail");
  switch (detail::select_log_regime(nu, t, policy)) {
    case BesselRegime::kHankel:
      return std::log(hankel_sum(nu, t, policy));
    case BesselRegime::kElementary:
      return nu > 0.0 ? std::log(-std::expm1(-2.0 * t)) : std::log1p(std::exp(-2.0 * t));
    default:
      return log_bessel_i_scaled(nu, t, policy) + 0.5 * std::log(2.0 * std::numbers::pi * t);
  }
}

double log_bessel_i_normalized(double nu, double t, const EvalPolicy& policy) {
  check_order(nu, -0.5, "log_bessel_i_normalized");
  if (t == 0.0) return 0.0;
  check_argument(t, "log_bessel_i_normalized");
  const BesselRegime regime = detail::select_log_regime(nu, t, policy);
  if (regime == BesselRegime::kSeries) return std::log(normalized_series(nu, t, policy));
  return detail::log_bessel_i_scaled(regime, nu, t, policy) + t - nu * std::log(0.5 * t) +
         std::lgamma(nu + 1.0);
}

RatioValue bessel_ratio_pair(Order nu, double t, const EvalPolicy& policy) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("bessel_ratio: argument must be nonnegative and finite");
  }
  if (t == 0.0) return {0.0, 1.0};
  const double v = nu.value();
  const RatioValue result =
      detail::bessel_ratio(detail::select_ratio_regime(v, t, policy), v, t, policy);
  assert(result.value >= ratio_bound_g(v, t) * (1.0 - 16.0 * kEps));
  assert(result.value <= ratio_bound_g(v - 0.5, t) * (1.0 + 16.0 * kEps));
  return result;
}

double bessel_ratio(Order nu, double t, const EvalPolicy& policy) {
  return bessel_ratio_pair(nu, t, policy).value;
}

double ratio_bound_g(double nu, double t) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("ratio_bound_g: order must be >= 0");
  if (!(t >= 0.0)) throw DomainError("ratio_bound_g: argument must be >= 0");
  if (t == 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  // t / (2 nu + (sqrt(nu^2 + t^2) - nu)) with the difference formed stably.
  return t / (2.0 * nu + t * (t / (nu + std::hypot(nu, t))));
}

InverseBracket inverse_bracket(Order nu, double y) {
  if (!(y >= 0.0 && y < 1.0)) throw DomainError("inverse_bracket: y must lie in [0, 1)");
  const double scale = 2.0 * y / ((1.0 - y) * (1.0 + y));
  return {(nu.value() - 0.5) * scale, nu.value() * scale};
}

double inverse_ratio(Order nu, double y, const EvalPolicy& policy) {
  return inverse_ratio(nu, y, 1.0 - y, policy);
}

double inverse_ratio(Order nu, double y, double one_minus_y, const EvalPolicy& policy) {
  // y may round to 1 when the complement is still representable.
  if (!(y >= 0.0 && y <= 1.0) || !(one_minus_y > 0.0)) {
    throw DomainError("inverse_ratio: y must lie in [0, 1)");
  }
  if (y == 0.0) return 0.0;

  const double v = nu.value();
  const double scale = 2.0 * y / (one_minus_y * (1.0 + y));
  double lo = (v - 0.5) * scale;
  double hi = v * scale;
  const double tol = policy.root_tol * y;
  // Residual f(t) - y; near y = 1 it is formed from complements.
  auto residual = [&](const RatioValue& f) {
    return y <= 0.5 ? f.value - y : one_minus_y - f.complement;
  };

  double t = 0.5 * (lo + hi);
  double last_residual = NAN;
  for (int iter = 0; iter < kMaxRootIterations; ++iter) {
    const RatioValue f = bessel_ratio_pair(nu, t, policy);
    const double r = residual(f);
    last_residual = r;
    if (r == 0.0) return t;
    if (r > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    // f'(t) = 1 - ((2nu - 1)/t) f - f^2
    const double slope = f.complement * (1.0 + f.value) - (2.0 * v - 1.0) * f.value / t;
    double next = slope > 0.0 ? t - r / slope : NAN;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool converged = std::abs(r) <= tol && std::abs(next - t) <= 8.0 * kEps * t;
    if (converged || hi - lo <= 4.0 * kEps * hi) {
      if (std::abs(r) <= tol) return t;
      break;
    }
    t = next;
  }
  throw ConvergenceError("inverse_ratio: root finding did not converge",
                         std::abs(last_residual) / y);
}

}  // namespace sphrd
