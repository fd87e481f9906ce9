#pragma once

#include <cstdint>
#include <vector>

#include "sphrd/policy.hpp"

namespace sphrd {

struct DimensionProbe {
  int n = 1;
  double R = 1.0;
  std::vector<double> d_grid;  // R^2 10^{-k}, k = 3 .. 3 + decades
  std::vector<double> rates;   // closed-form rate at each grid point
  double fitted_dim = 0.0;
};

/// Least-squares slope of R(D) against log(1/D) over all grid points except
/// the first, divided by n/2. Returns 0 for n = 1 without fitting.
DimensionProbe information_dimension(int n, double R, int decades = 7,
                                     const EvalPolicy& policy = {});

/// Radius scale R = sqrt(alpha_n n) used by high-dimensional probes.
enum class AlphaSchedule { kConstant, kLinear, kLog };

double alpha_value(AlphaSchedule schedule, double n, double constant = 1.0);

struct HighDimProbe {
  int n = 2;
  double alpha_n = 1.0;
  double sigma2 = 1.0;
  double D = 1.0;
  double ratio = 0.0;
  // Ratio bounds implied by the Gaussian sandwich, always computed.
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
  // False when n exceeds the direct-evaluation ceiling and ratio is the
  // midpoint of [ratio_lo, ratio_hi].
  bool exact = true;
};

/// Largest n evaluated through the Bessel kernel; above it the sandwich
/// bounds stand in.
inline constexpr int kHighDimDirectCeiling = 1000000;

/// R_n(D; sqrt(alpha_n n)) / R_n^G(D; sigma2) for the probe's fields.
double high_dim_ratio(const HighDimProbe& probe, const EvalPolicy& policy = {});

/// Fills ratio, ratio_lo, ratio_hi and exact for the given parameters.
HighDimProbe high_dim_probe(int n, double alpha_n, double sigma2, double D,
                            const EvalPolicy& policy = {});

struct HighDimSweepPoint {
  HighDimProbe probe;
  double trend_target = 0.0;  // 1 + log(alpha_n) / log(n)
};

/// Probes n = 2^k for k in [k_min, k_max].
std::vector<HighDimSweepPoint> high_dim_sweep(AlphaSchedule schedule, double alpha_constant,
                                              double sigma2, double D, int k_min, int k_max,
                                              const EvalPolicy& policy = {});

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Samples are split over this many generator substreams regardless of the
/// thread count, so results do not depend on the machine.
inline constexpr int kMcStreams = 16;

/// MMSE of X_R from X_R + Z, Z standard normal in R^n:
/// R^2 (1 - E[f_{n/2}(R |x + Z|)^2]) with x = (R, 0, ..., 0).
/// threads = 0 uses the hardware concurrency.
McEstimate mc_mmse(int n, double R, std::int64_t samples, std::uint64_t seed,
                   const EvalPolicy& policy = {}, int threads = 0);

/// n sigma2 / (1 + sigma2).
double gaussian_mmse(int n, double sigma2);

/// Per-dimension mutual information of the Gaussian channel, log(1 + sigma2)/2.
double gaussian_mi_per_dim(double sigma2);

struct MiEstimate {
  McEstimate estimate;     // per-dimension mutual information in nats
  double reference = 0.0;  // log(1 + sigma2) / 2
  std::vector<double> gammas;
  std::vector<double> weights;
  std::vector<double> integrand;  // mmse / (gamma n) at each node
  std::vector<double> integrand_std_error;
  // Largest possible contribution of (0, gammas.front()], where the
  // integrand is bounded by sigma2.
  double endpoint_bound = 0.0;
};

/// I(X_R; X_R + Z) / n with R = sqrt(sigma2 n), through the integral over
/// snr gamma in (0, 1] of mmse at radius sqrt(gamma) R, using quad_nodes
/// Gauss-Legendre nodes with an independent Monte Carlo estimate per node.
MiEstimate mc_mutual_information(int n, double sigma2, std::int64_t samples_per_node,
                                 int quad_nodes, std::uint64_t seed,
                                 const EvalPolicy& policy = {}, int threads = 0);

/// (1 + sigma^2)(1 - (sigma sqrt(1 + sigma^2) / (1/2 + sqrt(1/4 + sigma^2 (1 + sigma^2))))^2),
/// identically 1.
double mmse_limit_constant(double sigma);

}  // namespace sphrd
