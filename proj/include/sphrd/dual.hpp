#pragma once

#include <vector>

#include "sphrd/policy.hpp"
#include "sphrd/rate_distortion.hpp"

namespace sphrd {

/// Solution of the reduced max-min program over the reconstruction radius r
/// and the multiplier lambda.
struct DualSolution {
  double r_star = 0.0;
  double lambda_star = 0.0;
  double delta = 0.0;
  double value = 0.0;  // rate in nats
};

/// log q_lambda(R; r) = log E[exp(-lambda |r e - X_R|^2)] for a unit vector e.
/// Symmetric in (R, r); equals 0 when lambda = 0 or r = 0 with lambda R^2 = 0.
double log_q_lambda(const SphereSource& src, double r, double lambda,
                    const EvalPolicy& policy = {});

/// delta(r) = (r^2 + R^2 - D) / (2 r R).
double dual_delta(const SphereSource& src, double r, double D);

/// u_r(lambda) = log q_lambda(R; r) + D lambda, convex in lambda.
double dual_inner(const SphereSource& src, double r, double D, double lambda,
                  const EvalPolicy& policy = {});

/// Inner minimizer f_{n/2}^{-1}(delta(r)) / (2 r R). Returns +infinity at the
/// boundary delta(r) = 1 and throws DomainError when delta(r) is outside
/// (0, 1].
double lambda_star(const SphereSource& src, double r, double D, const EvalPolicy& policy = {});

/// Inner minimizer found by golden-section search on u_r without using the
/// inverse Bessel ratio. Slow; meant for validating lambda_star.
double lambda_star_direct(const SphereSource& src, double r, double D,
                          const EvalPolicy& policy = {});

/// min over lambda of u_r(lambda), i.e. u_r(lambda_star(r)).
double dual_objective(const SphereSource& src, double r, double D, const EvalPolicy& policy = {});

struct DualProfilePoint {
  double r = 0.0;
  double objective = 0.0;
};

/// dual_objective on `points` equally spaced radii strictly inside
/// [R - sqrt(D), R + sqrt(D)].
std::vector<DualProfilePoint> dual_profile(const SphereSource& src, double D, int points,
                                           const EvalPolicy& policy = {});

/// Maximizes dual_objective over r: a grid of grid_points radii locates the
/// best cell, then golden-section search refines it. value = -max.
DualSolution dual_rate(const SphereSource& src, double D, int grid_points = 32,
                       const EvalPolicy& policy = {});

}  // namespace sphrd
