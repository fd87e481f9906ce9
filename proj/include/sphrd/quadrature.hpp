#pragma once

#include <functional>
#include <vector>

namespace sphrd {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // Kronrod error estimate summed over subintervals
  int evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// The subinterval with the largest error estimate is bisected until the total
/// estimate is at most abs_tol. Throws ConvergenceError (carrying the achieved
/// error estimate) once max_intervals is exceeded.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_intervals = 4000);

struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // positive, summing to 2
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration on
/// P_n.
GaussLegendreRule gauss_legendre(int n);

}  // namespace sphrd
