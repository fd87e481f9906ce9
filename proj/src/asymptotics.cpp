#include "sphrd/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "sphrd/bessel.hpp"
#include "sphrd/errors.hpp"
#include "sphrd/quadrature.hpp"
#include "sphrd/rate_distortion.hpp"
#include "sphrd/rng.hpp"

namespace sphrd {
namespace {

constexpr std::int64_t kMinSamples = 1000;

// Running mean and sum of squared deviations (Welford), mergeable in a fixed
// order.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / total;
    count += other.count;
  }
};

// Samples of 1 - f_{n/2}(R |x + Z|)^2 drawn from one substream.
Moments sample_stream(int n, double R, std::int64_t count, Xoshiro256 engine,
                      const EvalPolicy& policy) {
  const Order nu(0.5 * n);
  NormalSampler normal(engine);
  Moments moments;
  for (std::int64_t s = 0; s < count; ++s) {
    const double first = R + normal();
    double norm2 = first * first;
    for (int i = 1; i < n; ++i) {
      const double z = normal();
      norm2 += z * z;
    }
    const RatioValue f = bessel_ratio_pair(nu, R * std::sqrt(norm2), policy);
    moments.add(f.complement * (1.0 + f.value));
  }
  return moments;
}

int resolve_threads(int threads) {
  if (threads > 0) return std::min(threads, kMcStreams);
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(static_cast<int>(hw), 1, kMcStreams);
}

}  // namespace

DimensionProbe information_dimension(int n, double R, int decades, const EvalPolicy& policy) {
  if (decades < 4) throw DomainError("information_dimension: need at least four decades");
  const SphereSource src(n, R);
  DimensionProbe probe;
  probe.n = n;
  probe.R = R;
  if (n == 1) return probe;

  for (int k = 3; k <= 3 + decades; ++k) {
    const double D = R * R * std::pow(10.0, -k);
    probe.d_grid.push_back(D);
    probe.rates.push_back(rate_distortion(src, D, policy).rate);
  }
  // Ordinary least squares of rate on log(1/D), skipping the first point.
  const std::size_t first = 1;
  const double count = static_cast<double>(probe.d_grid.size() - first);
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = first; i < probe.d_grid.size(); ++i) {
    mean_x += -std::log(probe.d_grid[i]);
    mean_y += probe.rates[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = first; i < probe.d_grid.size(); ++i) {
    const double dx = -std::log(probe.d_grid[i]) - mean_x;
    sxy += dx * (probe.rates[i] - mean_y);
    sxx += dx * dx;
  }
  probe.fitted_dim = (sxy / sxx) / (0.5 * n);
  return probe;
}

double alpha_value(AlphaSchedule schedule, double n, double constant) {
  switch (schedule) {
    case AlphaSchedule::kConstant:
      return constant;
    case AlphaSchedule::kLinear:
      return n;
    case AlphaSchedule::kLog:
      return std::log(n);
  }
  return constant;
}

double high_dim_ratio(const HighDimProbe& probe, const EvalPolicy& policy) {
  const double power = probe.alpha_n * probe.n;
  if (!(probe.D > 0.0 && probe.D < power)) {
    throw DomainError("high_dim_ratio: distortion must lie in (0, alpha_n n)");
  }
  const double gaussian = gaussian_rdf(probe.n, probe.sigma2, probe.D);
  if (!(gaussian > 0.0)) throw DomainError("high_dim_ratio: Gaussian reference rate is zero");
  const SphereSource src(probe.n, std::sqrt(power));
  return rate_distortion(src, probe.D, policy).rate / gaussian;
}

HighDimProbe high_dim_probe(int n, double alpha_n, double sigma2, double D,
                            const EvalPolicy& policy) {
  HighDimProbe probe;
  probe.n = n;
  probe.alpha_n = alpha_n;
  probe.sigma2 = sigma2;
  probe.D = D;
  if (n < 1) throw DomainError("high_dim_probe: dimension must be at least 1");
  if (!(alpha_n > 0.0)) throw DomainError("high_dim_probe: alpha_n must be positive");
  const double power = alpha_n * n;
  if (!(D > 0.0 && D < power)) throw DomainError("high_dim_probe: need 0 < D < alpha_n n");
  const double gaussian = gaussian_rdf(n, sigma2, D);
  if (!(gaussian > 0.0)) throw DomainError("high_dim_probe: Gaussian reference rate is zero");

  const double hi = gaussian_rdf(n, alpha_n, D);
  probe.ratio_hi = hi / gaussian;
  probe.ratio_lo = (n - 1.0) / n * hi / gaussian;
  if (n > kHighDimDirectCeiling) {
    probe.exact = false;
    probe.ratio = 0.5 * (probe.ratio_lo + probe.ratio_hi);
  } else {
    probe.ratio = high_dim_ratio(probe, policy);
  }
  return probe;
}

std::vector<HighDimSweepPoint> high_dim_sweep(AlphaSchedule schedule, double alpha_constant,
                                              double sigma2, double D, int k_min, int k_max,
                                              const EvalPolicy& policy) {
  if (k_min < 1 || k_max > 30 || k_min > k_max) {
    throw DomainError("high_dim_sweep: need 1 <= k_min <= k_max <= 30");
  }
  std::vector<HighDimSweepPoint> sweep;
  for (int k = k_min; k <= k_max; ++k) {
    const int n = 1 << k;
    const double alpha = alpha_value(schedule, n, alpha_constant);
    HighDimSweepPoint point;
    point.probe = high_dim_probe(n, alpha, sigma2, D, policy);
    point.trend_target = 1.0 + std::log(alpha) / std::log(static_cast<double>(n));
    sweep.push_back(point);
  }
  return sweep;
}

McEstimate mc_mmse(int n, double R, std::int64_t samples, std::uint64_t seed,
                   const EvalPolicy& policy, int threads) {
  if (n < 1) throw DomainError("mc_mmse: dimension must be at least 1");
  if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("mc_mmse: radius must be >= 0");
  if (samples < kMinSamples) throw DomainError("mc_mmse: need at least 1000 samples");

  McEstimate estimate;
  estimate.samples = samples;
  estimate.seed = seed;
  if (R == 0.0) return estimate;

  std::vector<Xoshiro256> engines;
  Xoshiro256 engine(seed);
  for (int s = 0; s < kMcStreams; ++s) {
    engines.push_back(engine);
    engine.jump();
  }
  std::vector<Moments> partial(kMcStreams);
  const auto stream_count = [&](int s) {
    return samples / kMcStreams + (s < samples % kMcStreams ? 1 : 0);
  };

  const int workers = resolve_threads(threads);
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int s = w; s < kMcStreams; s += workers) {
          partial[s] = sample_stream(n, R, stream_count(s), engines[s], policy);
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& thread : pool) thread.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  Moments total;
  for (const Moments& m : partial) total.merge(m);
  const double r2 = R * R;
  const double variance = total.m2 / static_cast<double>(total.count - 1);
  estimate.mean = r2 * total.mean;
  estimate.std_error = r2 * std::sqrt(variance / static_cast<double>(total.count));
  return estimate;
}

double gaussian_mmse(int n, double sigma2) {
  if (n < 1 || !(sigma2 > 0.0)) throw DomainError("gaussian_mmse: arguments must be positive");
  return n * sigma2 / (1.0 + sigma2);
}

double gaussian_mi_per_dim(double sigma2) {
  if (!(sigma2 >= 0.0)) throw DomainError("gaussian_mi_per_dim: variance must be >= 0");
  return 0.5 * std::log1p(sigma2);
}

MiEstimate mc_mutual_information(int n, double sigma2, std::int64_t samples_per_node,
                                 int quad_nodes, std::uint64_t seed, const EvalPolicy& policy,
                                 int threads) {
  if (n < 1) throw DomainError("mc_mutual_information: dimension must be at least 1");
  if (!(sigma2 > 0.0)) throw DomainError("mc_mutual_information: variance must be positive");
  if (quad_nodes < 8) throw DomainError("mc_mutual_information: need at least 8 nodes");

  const GaussLegendreRule rule = gauss_legendre(quad_nodes);
  const double radius = std::sqrt(sigma2 * n);
  MiEstimate result;
  result.reference = gaussian_mi_per_dim(sigma2);
  std::uint64_t seed_state = seed;
  double value = 0.0;
  double variance = 0.0;
  for (int i = 0; i < quad_nodes; ++i) {
    const double gamma = 0.5 * (1.0 + rule.nodes[i]);
    const double weight = 0.5 * rule.weights[i];
    const McEstimate node =
        mc_mmse(n, std::sqrt(gamma) * radius, samples_per_node, splitmix64(seed_state), policy,
                threads);
    const double scale = 1.0 / (gamma * n);
    result.gammas.push_back(gamma);
    result.weights.push_back(weight);
    result.integrand.push_back(node.mean * scale);
    result.integrand_std_error.push_back(node.std_error * scale);
    value += weight * node.mean * scale;
    variance += std::pow(weight * node.std_error * scale, 2);
  }
  result.estimate.mean = 0.5 * value;
  result.estimate.std_error = 0.5 * std::sqrt(variance);
  result.estimate.samples = samples_per_node * quad_nodes;
  result.estimate.seed = seed;
  result.endpoint_bound = 0.5 * sigma2 * result.gammas.front();
  return result;
}

double mmse_limit_constant(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("mmse_limit_constant: sigma must be positive");
  }
  const double s2 = sigma * sigma;
  const double a = sigma * std::sqrt(1.0 + s2);
  const double root = std::sqrt(0.25 + a * a);
  const double b = 0.5 + root;
  // 1 - (a/b)^2 = (b - a)(b + a) / b^2 with b - a free of cancellation.
  const double b_minus_a = 0.5 + 0.25 / (root + a);
  return (1.0 + s2) * (b_minus_a / b) * ((b + a) / b);
}

}  // namespace sphrd
