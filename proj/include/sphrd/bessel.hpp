#pragma once

// Modified Bessel functions of the first kind in the log domain, the ratio
// f_nu(t) = I_nu(t) / I_{nu-1}(t), its elementary bounds and its inverse.
//
// Every routine works on log(I) or on ratios so that arguments up to 1e12
// and orders up to ~1e6 never overflow.

#include "sphrd/policy.hpp"

namespace sphrd {

/// Order nu >= 1/2 of the Bessel ratio f_nu. The ratio is monotone in t and
/// obeys the g-bounds only in this range.
class Order {
 public:
  explicit Order(double nu);
  double value() const noexcept { return nu_; }

 private:
  double nu_;
};

/// Evaluation strategy. Exposed so that tests can compare regimes at their
/// switch points; regular callers never need it.
enum class BesselRegime {
  kSeries,             // ascending series, small t
  kPeakSeries,         // ascending series summed outward from its largest term
  kContinuedFraction,  // Gauss continued fraction (ratio only)
  kHankel,             // large-argument expansion, t >> nu^2
  kUniform,            // uniform large-order (Debye) expansion
  kElementary,         // orders +-1/2, where I_nu reduces to sinh and cosh
};

const char* to_string(BesselRegime regime) noexcept;

/// f_nu(t) together with 1 - f_nu(t), each to full relative precision.
struct RatioValue {
  double value;
  double complement;
};

/// Bracket on f_nu^{-1}(y): [2(nu - 1/2) y/(1-y^2), 2 nu y/(1-y^2)].
struct InverseBracket {
  double lo;
  double hi;
};

/// log I_nu(t) for nu >= -1/2 and t > 0.
double log_bessel_i(double nu, double t, const EvalPolicy& policy = {});

/// log(e^{-t} I_nu(t)) for nu >= -1/2 and t > 0.
double log_bessel_i_scaled(double nu, double t, const EvalPolicy& policy = {});

/// log(sqrt(2 pi t) e^{-t} I_nu(t)) for nu >= -1/2 and t > 0; tends to 0 as
/// t -> infinity.
double log_bessel_i_tail(double nu, double t, const EvalPolicy& policy = {});

/// log(Gamma(nu + 1) (2/t)^nu I_nu(t)); tends to 0 as t -> 0+ and is defined
/// at t = 0.
double log_bessel_i_normalized(double nu, double t, const EvalPolicy& policy = {});

/// f_nu(t) = I_nu(t) / I_{nu-1}(t) for t >= 0; f_nu(0) = 0.
double bessel_ratio(Order nu, double t, const EvalPolicy& policy = {});

/// f_nu(t) and its complement 1 - f_nu(t).
RatioValue bessel_ratio_pair(Order nu, double t, const EvalPolicy& policy = {});

/// g_nu(t) = t / (nu + sqrt(nu^2 + t^2)) for nu >= 0, t >= 0.
/// g_nu(t) <= f_nu(t) <= g_{nu-1/2}(t) <= 1 whenever nu >= 1/2.
double ratio_bound_g(double nu, double t);

/// Bracket on f_nu^{-1}(y) for y in [0, 1).
InverseBracket inverse_bracket(Order nu, double y);

/// t = f_nu^{-1}(y) for y in [0, 1); y = 0 maps to 0.
double inverse_ratio(Order nu, double y, const EvalPolicy& policy = {});

/// Same as above, but takes 1 - y separately. Callers that know 1 - y to
/// full relative precision (y close to 1) should use this overload.
double inverse_ratio(Order nu, double y, double one_minus_y, const EvalPolicy& policy = {});

namespace detail {

BesselRegime select_log_regime(double nu, double t, const EvalPolicy& policy);
BesselRegime select_ratio_regime(double nu, double t, const EvalPolicy& policy);

/// log(e^{-t} I_nu(t)) evaluated with a forced regime. kContinuedFraction is
/// not a valid choice here.
double log_bessel_i_scaled(BesselRegime regime, double nu, double t, const EvalPolicy& policy);

/// f_nu(t) evaluated with a forced regime. kPeakSeries is not valid here.
RatioValue bessel_ratio(BesselRegime regime, double nu, double t, const EvalPolicy& policy);

/// Smallest argument at which the large-argument expansion is used.
double hankel_threshold(double nu) noexcept;

}  // namespace detail
}  // namespace sphrd
