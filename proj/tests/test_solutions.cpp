#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ssps/quadrature.hpp"
#include "ssps/solutions.hpp"

using namespace ssps;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kThreshold = kPi * kPi / 2.0;

double exp_rhs_oracle(double k) {
  const double K = oracle::K_series(k);
  const double E = oracle::E_series(k);
  return 2.0 * K * (2.0 * E - K * (1.0 - k * k));
}
}  // namespace

TEST_CASE("threshold constant", "[solutions]") {
  CHECK_THAT(kExistenceThreshold, WithinRel(4.934802200544679, 1e-15));
}

TEST_CASE("sine modulus examples", "[solutions]") {
  CHECK_THROWS_AS(solve_sine_modulus(4.0), NoSolution);
  CHECK_THROWS_AS(solve_sine_modulus(kThreshold), NoSolution);
  CHECK(solve_sine_modulus(kThreshold + 1e-9).k() < 1e-3);
  // the bracket K(0.888) < sqrt(5) < K(0.891)
  CHECK(oracle::K_series(0.888) < std::sqrt(5.0));
  CHECK(oracle::K_series(0.891) > std::sqrt(5.0));
  const double m = solve_sine_modulus(10.0).k();
  CHECK_THAT(m, WithinAbs(0.889079909323420570634, 1e-14));
  const double independent = oracle::bisect(oracle::K_series, std::sqrt(5.0), 0.0, 0.95);
  CHECK_THAT(m, WithinAbs(independent, 1e-13));
}

TEST_CASE("sine modulus round trip", "[solutions][property]") {
  for (double r : {4.94, 5.0, 7.5, 10.0, 30.0, 100.0, 400.0}) {
    const Modulus m = solve_sine_modulus(r);
    CHECK_THAT(2.0 * complete_K(m) / std::sqrt(2.0 * r), WithinAbs(1.0, 1e-12));
  }
  CHECK_THAT(solve_sine_modulus(100.0).complementary(),
             WithinRel(0.0033973623341428384, 1e-10));
}

TEST_CASE("sine SSPS evaluators", "[solutions]") {
  const SineSsps s = sine_ssps(10.0);
  CHECK(s.period == 2.0);
  CHECK_THAT(s.a, WithinAbs(s.m() * s.m(), 1e-16));
  CHECK_THAT(s.amplitude(), WithinAbs(2.19066241858997232922, 1e-14));
  for (double r : {5.0, 10.0, 50.0}) CHECK(sine_ssps(r).x(0.0) == 0.0);
  CHECK_THAT(s.x(0.5), WithinAbs(s.amplitude(), 1e-14));
  CHECK(s.amplitude() > 0.0);
  CHECK(s.amplitude() < kPi);
  for (int i = 0; i <= 100; ++i) {
    const double t = 2.0 * i / 100.0;
    CHECK(std::abs(s.x(t) + s.x(t - 1.0)) <= 1e-11);
  }
  CHECK_THROWS_AS(sine_ssps(4.0), NoSolution);
}

TEST_CASE("sine SSPS is odd about 0 and even about 1/2", "[solutions][property]") {
  const SineSsps s = sine_ssps(10.0);
  for (int i = 0; i <= 200; ++i) {
    const double t = 2.0 * i / 200.0;
    CHECK(std::abs(s.x(-t) + s.x(t)) <= 1e-11);
    CHECK(std::abs(s.x(0.5 + t) - s.x(0.5 - t)) <= 1e-11);
  }
}

TEST_CASE("analytic derivatives match finite differences", "[solutions][property]") {
  const SineSsps s = sine_ssps(10.0);
  const ExpSsps e = exp_ssps(10.0);
  const double h = 1e-5;
  for (int i = 0; i <= 100; ++i) {
    const double t = 2.0 * i / 100.0 + 0.003;
    CHECK_THAT((s.x(t + h) - s.x(t - h)) / (2.0 * h), WithinAbs(s.dx(t), 1e-6));
    CHECK_THAT((e.x(t + h) - e.x(t - h)) / (2.0 * h), WithinAbs(e.dx(t), 1e-6));
  }
}

TEST_CASE("pendulum orbit", "[solutions]") {
  for (double a : {0.1, 1.0, 2.5, 3.1}) {
    const PendulumOrbit p = pendulum_orbit(10.0, a);
    CHECK_THAT(p.x(0.0), WithinAbs(a, 1e-13));
    for (int i = 0; i < 50; ++i) {
      const double t = 0.071 * i;
      const double y = p.y(t);
      const double half = std::sin(0.5 * p.x(t));
      const double ha = std::sin(0.5 * a);
      CHECK_THAT(y * y + 80.0 * half * half, WithinAbs(80.0 * ha * ha, 1e-10));
    }
  }
  CHECK_THAT(pendulum_orbit(10.0, 1e-7).period,
             WithinRel(2.0 * kPi / std::sqrt(20.0), 1e-12));
  const double m = sine_ssps(10.0).m();
  CHECK_THAT(pendulum_orbit(10.0, 2.0 * std::asin(m)).period, WithinAbs(2.0, 1e-10));
  CHECK_THROWS_AS(pendulum_orbit(10.0, 0.0), DomainError);
  CHECK_THROWS_AS(pendulum_orbit(10.0, kPi), DomainError);
  CHECK_THROWS_AS(pendulum_orbit(-1.0, 1.0), DomainError);
}

TEST_CASE("sine SSPS is the pendulum orbit shifted by a quarter period", "[solutions]") {
  const SineSsps s = sine_ssps(10.0);
  const PendulumOrbit p = pendulum_orbit(10.0, s.amplitude());
  for (int i = 0; i <= 100; ++i) {
    const double t = 2.0 * i / 100.0;
    CHECK_THAT(s.x(t + 0.5), WithinAbs(p.x(t), 1e-11));
  }
}

TEST_CASE("exp modulus examples", "[solutions]") {
  CHECK_THAT(exp_modulus_rhs(Modulus::from_k(0.0)), WithinRel(kThreshold, 1e-15));
  CHECK_THAT(exp_modulus_rhs(Modulus::from_k(1e-6)), WithinRel(kThreshold, 1e-10));
  CHECK_THROWS_AS(solve_exp_modulus(4.9), NoSolution);
  CHECK_THROWS_AS(solve_exp_modulus(kThreshold), NoSolution);
  // bracket RHS(0.9) < 10 < RHS(0.95) from the series oracle
  CHECK_THAT(exp_rhs_oracle(0.9), WithinRel(8.71210715520531793, 1e-13));
  CHECK_THAT(exp_rhs_oracle(0.95), WithinRel(10.1161549696959706, 1e-12));
  const double k = solve_exp_modulus(10.0).k();
  CHECK_THAT(k, WithinAbs(0.947047541420022037808, 1e-13));
  CHECK_THAT(k, WithinAbs(oracle::bisect(exp_rhs_oracle, 10.0, 0.5, 0.95), 1e-12));
}

TEST_CASE("exp modulus round trip and large r", "[solutions][property]") {
  for (double r : {4.94, 5.0, 10.0, 40.0, 100.0, 500.0}) {
    const Modulus k = solve_exp_modulus(r);
    CHECK_THAT(exp_modulus_rhs(k), WithinRel(r, 1e-10));
  }
  const Modulus k100 = solve_exp_modulus(100.0);
  CHECK_THAT(k100.complementary(), WithinRel(5.5551775459856082379e-11, 1e-9));
  CHECK_THAT(complete_K(k100), WithinRel(25.0, 1e-12));
  CHECK_THAT(solve_exp_modulus(4.94).k(), WithinAbs(0.0458764451648350131, 1e-9));
}

TEST_CASE("exp RHS is strictly increasing", "[solutions][property]") {
  CHECK(exp_modulus_rhs_is_monotone());
  double previous = 0.0;
  for (int i = 1; i < 200; ++i) {
    const double k = i / 200.0;
    const double v = exp_modulus_rhs(Modulus::from_k(k));
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("threshold coincidence", "[solutions][property]") {
  CHECK_THROWS_AS(solve_sine_modulus(kThreshold - 1e-3), NoSolution);
  CHECK_THROWS_AS(solve_exp_modulus(kThreshold - 1e-3), NoSolution);
  CHECK_NOTHROW(solve_sine_modulus(kThreshold + 1e-3));
  CHECK_NOTHROW(solve_exp_modulus(kThreshold + 1e-3));
}

TEST_CASE("exp SSPS parameter relations", "[solutions][property]") {
  for (double r : {5.0, 10.0, 25.0, 100.0}) {
    const ExpSsps e = exp_ssps(r);
    const double kc2 = e.modulus.complementary() * e.modulus.complementary();
    CAPTURE(r);
    CHECK_THAT(2.0 * e.K * (2.0 * e.E - e.K * kc2), WithinRel(r, 1e-10));
    CHECK_THAT(std::exp(0.5 * e.c) * (2.0 * e.E / (kc2 * e.K) - 1.0), WithinAbs(1.0, 1e-10));
    CHECK_THAT(e.beta * e.modulus.k(), WithinRel(std::sqrt(2.0 * e.gamma) * e.alpha, 1e-12));
    CHECK_THAT(0.5 * e.c, WithinAbs(std::log(2.0 * e.K * e.K * kc2 / r), 1e-10));
  }
  CHECK_THAT(exp_ssps(10.0).c, WithinAbs(-3.99711348735150041750, 1e-11));
  CHECK_THAT(exp_ssps(100.0).c, WithinAbs(-89.4033652669039266, 1e-8));
}

TEST_CASE("exp SSPS evaluators", "[solutions]") {
  const ExpSsps e = exp_ssps(10.0);
  for (int i = 0; i <= 200; ++i) {
    const double t = 2.0 * i / 200.0;
    CHECK(std::abs(e.x(t) + e.x(t - 1.0) - e.c) <= 1e-10);
    CHECK(std::abs(e.x(t + 2.0) - e.x(t)) <= 1e-10);
  }
  CHECK_THAT(e.x(0.0), WithinAbs(e.x(2.0), 1e-12));
  // minimal period 2, not 1
  CHECK(std::abs(e.x(1.0) - e.x(0.0)) > 1.0);
  const GaussLegendreRule rule = gauss_legendre(64);
  const double mean = integrate(rule, [&](double t) { return std::expm1(e.x(t)); }, 0.0, 1.0);
  CHECK(std::abs(mean) <= 1e-9);
}

TEST_CASE("exp SSPS stays finite at r = 100", "[solutions]") {
  const ExpSsps e = exp_ssps(100.0);
  for (int i = 0; i <= 400; ++i) {
    const double t = 2.0 * i / 400.0;
    CHECK(std::isfinite(e.x(t)));
    CHECK(std::abs(e.x(t) + e.x(t - 1.0) - e.c) <= 1e-9);
  }
}

TEST_CASE("wy pair", "[solutions]") {
  for (double gamma : {0.3, 2.0, 11.0}) {
    for (double a : {0.2, 1.0, 5.0}) {
      const WyPair p = wy_solution(gamma, a);
      CHECK_THAT(p.w(0.0), WithinAbs(a, 1e-12 * (1.0 + a)));
      CHECK(p.y(0.0) == 0.0);
      CHECK_THAT(p.beta, WithinRel(std::sqrt(2.0 * gamma * (1.0 + p.alpha * p.alpha)), 1e-15));
      CHECK_THAT(p.modulus.k(), WithinRel(p.alpha / std::sqrt(1.0 + p.alpha * p.alpha), 1e-14));
      const double energy0 = 8.0 * gamma * std::pow(std::sinh(0.5 * a), 2);
      const double h = 1e-5;
      for (int i = 0; i < 40; ++i) {
        const double t = p.period() * i / 40.0 + 0.01;
        const double w = p.w(t);
        const double y = p.y(t);
        CHECK_THAT(std::sinh(0.5 * w), WithinAbs(p.u(t), 1e-10 * (1.0 + p.alpha)));
        CHECK_THAT(y * y + 8.0 * gamma * std::pow(std::sinh(0.5 * w), 2),
                   WithinAbs(energy0, 1e-9 * (1.0 + energy0)));
        const double dw = (p.w(t + h) - p.w(t - h)) / (2.0 * h);
        const double dy = (p.y(t + h) - p.y(t - h)) / (2.0 * h);
        CHECK_THAT(dw, WithinAbs(-y, 1e-5 * (1.0 + std::abs(y))));
        CHECK_THAT(dy, WithinAbs(2.0 * gamma * std::sinh(w), 1e-5 * (1.0 + std::abs(dy))));
      }
      CHECK_THAT(p.w(p.period()), WithinAbs(a, 1e-10 * (1.0 + a)));
    }
  }
  CHECK_THROWS_AS(wy_solution(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(wy_solution(1.0, -1.0), DomainError);
}

TEST_CASE("exp SSPS as a shifted wy pair", "[solutions]") {
  const ExpSsps e = exp_ssps(10.0);
  const WyPair p = e.as_wy_pair();
  CHECK_THAT(p.period(), WithinAbs(2.0, 1e-10));
  CHECK_THAT(p.beta, WithinRel(2.0 * e.K, 1e-10));
  for (int i = 0; i <= 50; ++i) {
    const double t = 2.0 * i / 50.0;
    CHECK_THAT(p.w(t) + 0.5 * e.c, WithinAbs(e.x(t), 1e-10));
    CHECK_THAT(p.y(t), WithinAbs(-e.dx(t), 1e-9));
  }
}
