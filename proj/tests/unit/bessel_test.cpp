#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle/frozen_values.hpp"
#include "oracle/series_oracle.hpp"
#include "sphrd/bessel.hpp"
#include "sphrd/errors.hpp"
#include "support/generators.hpp"

using namespace sphrd;
using sphrd::testing::for_all;
using sphrd::testing::Gen;

namespace {

const EvalPolicy kPolicy{};

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("bessel") {
  TEST_CASE("log I at order -1/2 matches cosh closed form") {
    const double value = log_bessel_i(-0.5, 1.0);
    CHECK(relative(value, oracle::kLogBesselIMinusHalfAt1) <= 10 * kPolicy.cf_tol);
    CHECK(value == doctest::Approx(std::log(std::sqrt(2.0 / std::numbers::pi) * std::cosh(1.0)))
                       .epsilon(1e-14));
  }

  TEST_CASE("log I small-argument limit") {
    const double expected = -0.5 * std::log(2.0) - std::lgamma(1.5);
    const double t = 1e-9;
    CHECK(log_bessel_i(0.5, t) - 0.5 * std::log(t) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(log_bessel_i_normalized(0.5, 0.0) == 0.0);
  }

  TEST_CASE("log I at large argument and order") {
    CHECK(relative(log_bessel_i(0.0, 1e6), oracle::kLogBesselI0At1e6) <= 10 * kPolicy.cf_tol);
    CHECK(log_bessel_i_scaled(0.0, 1e6) ==
          doctest::Approx(oracle::kLogBesselI0At1e6Minus1e6).epsilon(1e-14));
    CHECK(relative(log_bessel_i(2.5, 40.0), oracle::kLogBesselI2p5At40) <= 10 * kPolicy.cf_tol);
    CHECK(relative(log_bessel_i(1500.0, 2000.0), oracle::kLogBesselI1500At2000) <=
          10 * kPolicy.cf_tol);
    CHECK(log_bessel_i_scaled(5000.0, 1e8) ==
          doctest::Approx(oracle::kLogBesselI5000At1e8).epsilon(1e-12));
    CHECK(std::isfinite(log_bessel_i(3.0, 1e12)));
    CHECK(std::isfinite(log_bessel_i(2e5, 1e12)));
  }

  TEST_CASE("log I tail vanishes at large argument") {
    CHECK(std::abs(log_bessel_i_tail(-0.5, 50.0)) < 1e-40);
    CHECK(std::abs(log_bessel_i_tail(3.0, 1e10)) < 1e-9);
    CHECK(log_bessel_i_tail(2.0, 7.0) ==
          doctest::Approx(log_bessel_i_scaled(2.0, 7.0) +
                          0.5 * std::log(2.0 * std::numbers::pi * 7.0))
              .epsilon(1e-14));
  }

  TEST_CASE("log I rejects bad arguments") {
    CHECK_THROWS_AS(log_bessel_i(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(log_bessel_i(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(log_bessel_i(-0.6, 1.0), DomainError);
  }

  TEST_CASE("ratio examples") {
    CHECK(relative(bessel_ratio(Order(0.5), 1.0), oracle::kRatioHalfAt1) <= kPolicy.cf_tol);
    CHECK(bessel_ratio(Order(0.5), 0.0) == 0.0);
    const double f = bessel_ratio(Order(2.0), 3.0);
    CHECK(ratio_bound_g(2.0, 3.0) <= f);
    CHECK(f <= ratio_bound_g(1.5, 3.0));
    CHECK(relative(f, oracle::kRatio2At3) <= kPolicy.cf_tol);
    CHECK(relative(bessel_ratio(Order(10.0), 25.0), oracle::kRatio10At25) <= kPolicy.cf_tol);
    CHECK(relative(bessel_ratio(Order(500.0), 1e6), oracle::kRatio500At1e6) <= kPolicy.cf_tol);
    CHECK(relative(bessel_ratio(Order(2000.0), 1e4), oracle::kRatio2000At1e4) <=
          kPolicy.cf_tol);
  }

  TEST_CASE("ratio complement keeps relative precision") {
    const RatioValue f = bessel_ratio_pair(Order(500.0), 1e6);
    CHECK(relative(f.complement, 1.0 - oracle::kRatio500At1e6) <= 1e-10);
    const RatioValue half = bessel_ratio_pair(Order(0.5), 30.0);
    CHECK(relative(half.complement, 2.0 / (1.0 + std::exp(60.0))) <= 1e-13);
  }

  TEST_CASE("bound g examples") {
    CHECK(ratio_bound_g(1.0, 1.0) == doctest::Approx(1.0 / (1.0 + std::sqrt(2.0))).epsilon(1e-15));
    CHECK(ratio_bound_g(0.0, 5.0) == 1.0);
    CHECK(ratio_bound_g(3.0, 0.0) == 0.0);
    CHECK_THROWS_AS(ratio_bound_g(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ratio_bound_g(1.0, -1.0), DomainError);
  }

  TEST_CASE("inverse examples") {
    CHECK(relative(inverse_ratio(Order(0.5), 0.5), oracle::kInverseHalfAtHalf) <= 1e-13);
    const double tiny = inverse_ratio(Order(0.5), 1e-200);
    CHECK(tiny >= 0.0);
    CHECK(tiny <= 1e-199);
    const InverseBracket b = inverse_bracket(Order(5.0), 0.9);
    CHECK(b.lo == doctest::Approx(42.631578947368).epsilon(1e-12));
    CHECK(b.hi == doctest::Approx(47.368421052632).epsilon(1e-12));
    const double t = inverse_ratio(Order(5.0), 0.9);
    CHECK(b.lo <= t);
    CHECK(t <= b.hi);
    CHECK(relative(t, oracle::kInverse5At0p9) <= 1e-13);
  }

  TEST_CASE("inverse degenerate and invalid inputs") {
    CHECK(inverse_ratio(Order(3.0), 0.0) == 0.0);
    CHECK_THROWS_AS(inverse_ratio(Order(3.0), 1.0), DomainError);
    CHECK_THROWS_AS(inverse_ratio(Order(3.0), -0.1), DomainError);
    CHECK_THROWS_AS(inverse_ratio(Order(3.0), 1.5), DomainError);
    CHECK_THROWS_AS(Order(0.49), DomainError);
  }

  TEST_CASE("continued fraction reports exhausted budget") {
    EvalPolicy tight;
    tight.cf_max_terms = 64;
    CHECK_THROWS_AS(bessel_ratio(Order(500.0), 5e4, tight), ConvergenceError);
    try {
      bessel_ratio(Order(500.0), 5e4, tight);
    } catch (const ConvergenceError& e) {
      CHECK(std::string(e.what()).find("continued fraction") != std::string::npos);
    }
  }

  TEST_CASE("policy validation") {
    EvalPolicy p;
    CHECK_NOTHROW(p.validate());
    p.cf_max_terms = 10;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = EvalPolicy{};
    p.root_tol = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = EvalPolicy{};
    p.quad_tol = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  }

  TEST_CASE("property: sandwich on the log grid") {
    for (const double nu : {0.5, 1.0, 2.5, 10.0, 500.0}) {
      for (int i = 0; i < 40; ++i) {
        const double t = std::pow(10.0, -6.0 + 12.0 * i / 39.0);
        const double f = bessel_ratio(Order(nu), t);
        CAPTURE(nu);
        CAPTURE(t);
        CHECK(ratio_bound_g(nu, t) <= f);
        CHECK(f <= ratio_bound_g(nu - 0.5, t));
        CHECK(ratio_bound_g(nu - 0.5, t) <= 1.0);
      }
    }
  }

  TEST_CASE("property: sandwich on random points") {
    for_all(11, 2000, [](Gen& g) {
      const double nu = g.order(2000.0);
      const double t = g.log_uniform(1e-7, 1e9);
      const double f = bessel_ratio(Order(nu), t);
      CAPTURE(nu);
      CAPTURE(t);
      CHECK(ratio_bound_g(nu, t) <= f);
      CHECK(f <= ratio_bound_g(nu - 0.5, t));
    });
  }

  TEST_CASE("property: ratio increases with t") {
    for_all(12, 2000, [](Gen& g) {
      const double nu = g.order(800.0);
      double t1 = g.log_uniform(1e-5, 1e7);
      double t2 = g.log_uniform(1e-5, 1e7);
      if (t1 == t2) return;
      if (t1 > t2) std::swap(t1, t2);
      CAPTURE(nu);
      CAPTURE(t1);
      CAPTURE(t2);
      CHECK(bessel_ratio(Order(nu), t1) < bessel_ratio(Order(nu), t2));
    });
  }

  TEST_CASE("property: inverse round trip") {
    for (const double nu : {0.5, 1.0, 2.5, 10.0, 500.0, 5000.0}) {
      for (int i = 0; i <= 100; ++i) {
        const double y = 0.001 + 0.998 * i / 100.0;
        const double t = inverse_ratio(Order(nu), y);
        const InverseBracket b = inverse_bracket(Order(nu), y);
        CAPTURE(nu);
        CAPTURE(y);
        CHECK(std::abs(bessel_ratio(Order(nu), t) - y) <= kPolicy.root_tol * y);
        CHECK(b.lo <= t);
        CHECK(t <= b.hi);
      }
    }
  }

  TEST_CASE("property: inverse near one with exact complement") {
    for (const double nu : {0.5, 2.0, 32.0}) {
      for (const double gap : {1e-8, 1e-12, 1e-15}) {
        const double y = 1.0 - gap;
        const double t = inverse_ratio(Order(nu), y, gap);
        const RatioValue f = bessel_ratio_pair(Order(nu), t);
        CAPTURE(nu);
        CAPTURE(gap);
        CHECK(std::abs(f.complement - gap) <= 1e-10 * gap);
      }
    }
  }

  TEST_CASE("property: order one half is tanh") {
    for (int i = 0; i <= 400; ++i) {
      const double t = 1e-3 * std::pow(5e4, i / 400.0);
      CAPTURE(t);
      CHECK(std::abs(bessel_ratio(Order(0.5), t) - std::tanh(t)) <= 1e-12);
      if (t < detail::hankel_threshold(0.5)) {
        const RatioValue cf = detail::bessel_ratio(BesselRegime::kContinuedFraction, 0.5, t, kPolicy);
        CHECK(std::abs(cf.value - std::tanh(t)) <= 1e-12);
      }
    }
  }

  TEST_CASE("property: large-t complement") {
    for (const double nu : {1.0, 2.5, 10.0, 500.0}) {
      const double t = 1e6;
      const RatioValue f = bessel_ratio_pair(Order(nu), t);
      CAPTURE(nu);
      CHECK(std::abs(t * f.complement - (2 * nu - 1) / 2) <= 0.01 * (2 * nu - 1) / 2);
    }
  }

  TEST_CASE("property: regimes agree at their switch points") {
    const double tol = 100 * kPolicy.cf_tol;
    for (const double nu : {0.5, 1.0, 7.0, 90.0, 900.0}) {
      const double t = kPolicy.small_t_threshold * (nu + 1.0);
      const RatioValue series = detail::bessel_ratio(BesselRegime::kSeries, nu, t, kPolicy);
      const RatioValue cf = detail::bessel_ratio(BesselRegime::kContinuedFraction, nu, t, kPolicy);
      CAPTURE(nu);
      CHECK(relative(series.value, cf.value) <= tol);
      const double a = detail::log_bessel_i_scaled(BesselRegime::kSeries, nu, t, kPolicy);
      const double b = detail::log_bessel_i_scaled(BesselRegime::kPeakSeries, nu, t, kPolicy);
      CHECK(relative(a, b) <= tol);
    }
    const double big = kPolicy.large_order_threshold + 1.0;
    for (const double t : {5.0, 300.0, 1e4, 2e5}) {
      const RatioValue u = detail::bessel_ratio(BesselRegime::kUniform, big, t, kPolicy);
      const RatioValue cf = detail::bessel_ratio(BesselRegime::kContinuedFraction, big, t, kPolicy);
      CAPTURE(t);
      CHECK(relative(u.value, cf.value) <= tol);
      const double lu = detail::log_bessel_i_scaled(BesselRegime::kUniform, big, t, kPolicy) + t;
      const double lp = detail::log_bessel_i_scaled(BesselRegime::kPeakSeries, big, t, kPolicy) + t;
      CHECK(relative(lu, lp) <= tol);
    }
    for (const double nu : {2.0, 12.0, 60.0}) {
      const double t = detail::hankel_threshold(nu);
      const RatioValue h = detail::bessel_ratio(BesselRegime::kHankel, nu, t, kPolicy);
      const RatioValue cf = detail::bessel_ratio(BesselRegime::kContinuedFraction, nu, t, kPolicy);
      CAPTURE(nu);
      CHECK(relative(h.value, cf.value) <= tol);
      CHECK(relative(h.complement, cf.complement) <= 1e-10);
    }
  }

  TEST_CASE("property: agreement with brute-force series") {
    for_all(13, 300, [](Gen& g) {
      const double nu = g.order(30.0);
      const double t = g.log_uniform(1e-3, 40.0);
      CAPTURE(nu);
      CAPTURE(t);
      const long double ref_ratio = oracle::brute_ratio(nu, t);
      CHECK(std::abs(bessel_ratio(Order(nu), t) - ref_ratio) / ref_ratio <= 1e-13);
      const long double ref_log = oracle::brute_log_bessel_i(nu, t);
      CHECK(std::abs(log_bessel_i(nu, t) - ref_log) <= 1e-13 * std::max(1.0L, std::abs(ref_log)));
    });
  }

  TEST_CASE("regime names") {
    CHECK(std::string(to_string(BesselRegime::kContinuedFraction)) == "continued-fraction");
    CHECK(std::string(to_string(BesselRegime::kUniform)) == "uniform");
    CHECK(detail::select_ratio_regime(3.0, 1e-6, kPolicy) == BesselRegime::kSeries);
    CHECK(detail::select_ratio_regime(3.0, 5.0, kPolicy) == BesselRegime::kContinuedFraction);
    CHECK(detail::select_ratio_regime(3.0, 1e3, kPolicy) == BesselRegime::kHankel);
    CHECK(detail::select_ratio_regime(2e3, 1e3, kPolicy) == BesselRegime::kUniform);
    CHECK(detail::select_log_regime(3.0, 5.0, kPolicy) == BesselRegime::kPeakSeries);
  }
}
