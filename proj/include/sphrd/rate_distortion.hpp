#pragma once

#include "sphrd/bessel.hpp"
#include "sphrd/policy.hpp"

namespace sphrd {

/// Source uniformly distributed on the sphere of radius R in n dimensions.
struct SphereSource {
  int n = 1;
  double R = 1.0;

  SphereSource() = default;
  SphereSource(int dimension, double radius);

  /// Order nu = n/2 of the Bessel ratio that governs this source.
  Order order() const { return Order(0.5 * n); }
};

enum class Route { kClosedForm, kIntegral, kDual };

const char* to_string(Route route) noexcept;

/// One point of the rate-distortion curve, in nats.
struct RatePoint {
  double D = 0.0;
  double rate = 0.0;
  Route route = Route::kClosedForm;
};

/// xi_nu evaluated at t. h_input is the y with t = f_nu^{-1}(y) when the point
/// was reached through h_nu, and NaN otherwise.
struct XiEval {
  double t = 0.0;
  double xi = 0.0;
  double h_input = 0.0;
};

/// S_{n-1} = 2 pi^{n/2} / Gamma(n/2).
double surface_area(int n);
double log_surface_area(int n);
/// log S_{d-1} for real d > 0; h_nu tends to log S_{2nu-1} as y -> 0.
double log_surface_area(double d);

/// xi_nu(t) = -t f_nu(t) + log((2 pi)^nu I_{nu-1}(t) / t^{nu-1}).
double xi(Order nu, double t, const EvalPolicy& policy = {});
XiEval xi_eval(Order nu, double t, const EvalPolicy& policy = {});

/// h_nu(y) = xi_nu(f_nu^{-1}(y)) for y in (0, 1).
double h(Order nu, double y, const EvalPolicy& policy = {});
/// As above with 1 - y supplied separately for y close to 1.
double h(Order nu, double y, double one_minus_y, const EvalPolicy& policy = {});
XiEval h_eval(Order nu, double y, const EvalPolicy& policy = {});

/// lim_{y->0+} h_nu(y) = log S_{2nu-1}.
double h_limit_at_zero(Order nu);
/// lim_{y->1-} h_nu(y): 0 for nu = 1/2, -infinity otherwise.
double h_limit_at_one(Order nu);

/// Closed form log S_{n-1} - h_{n/2}(sqrt(1 - D/R^2)). Zero for D >= R^2.
/// D = 0 is accepted only for n = 1, where the rate is log 2.
RatePoint rate_distortion(const SphereSource& src, double D, const EvalPolicy& policy = {});

/// Same as rate_distortion but D = 0 with n > 1 yields rate = +infinity
/// instead of a domain error.
RatePoint rate_distortion_limit(const SphereSource& src, double D, const EvalPolicy& policy = {});

/// Integral of f_{n/2}^{-1}(u) over [0, sqrt(1 - D/R^2)] by adaptive
/// quadrature to absolute tolerance policy.quad_tol.
RatePoint rate_distortion_integral(const SphereSource& src, double D,
                                   const EvalPolicy& policy = {});

/// dR/dD for 0 < D < R^2.
double rate_derivative(const SphereSource& src, double D, const EvalPolicy& policy = {});

/// (n/2) log+(n sigma2 / D).
double gaussian_rdf(int n, double sigma2, double D);

struct GaussianSandwich {
  double lo = 0.0;
  double mid = 0.0;
  double hi = 0.0;
};

/// lo = (n-1)/n G, mid = rate_distortion, hi = G with G the Gaussian rate at
/// per-coordinate variance R^2/n.
GaussianSandwich gaussian_sandwich(const SphereSource& src, double D,
                                   const EvalPolicy& policy = {});

}  // namespace sphrd
