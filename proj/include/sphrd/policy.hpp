#pragma once

namespace sphrd {

/// Numerical tolerances, iteration caps and regime switch points shared by
/// every evaluation routine. Passed by value; all members have defaults.
struct EvalPolicy {
  /// Relative convergence tolerance of continued fractions and series.
  double cf_tol = 1e-14;
  /// Iteration cap for continued fractions and series.
  int cf_max_terms = 100000;
  /// Relative residual tolerance for the inverse Bessel ratio.
  double root_tol = 1e-14;
  /// Arguments t < small_t_threshold * (nu + 1) use the ascending series.
  double small_t_threshold = 1e-4;
  /// Orders above this use the uniform large-order expansion.
  double large_order_threshold = 1e3;
  /// Absolute tolerance of adaptive quadrature.
  double quad_tol = 1e-9;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

}  // namespace sphrd
