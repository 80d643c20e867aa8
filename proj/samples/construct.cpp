// Builds both closed-form solutions at r = 10, checks them against the delay
// equation, and compares a method-of-steps run with the sine solution.

#include <cstdio>

#include "ssps/dde.hpp"

int main() {
  const double r = 10.0;

  const ssps::SineSsps sine = ssps::sine_ssps(r);
  const ssps::ExpSsps expo = ssps::exp_ssps(r);
  std::printf("sine: m = %.15f, amplitude = %.15f\n", sine.m(), sine.amplitude());
  std::printf("exp:  k = %.15f, c = %.15f\n", expo.modulus.k(), expo.c);

  const auto fs = ssps::Nonlinearity::sine(r);
  const auto fe = ssps::Nonlinearity::exp_m1(r);
  const auto rs = ssps::verify_ssps(ssps::as_solution(sine), fs, 401, 32);
  const auto re = ssps::verify_ssps(ssps::as_solution(expo), fe, 401, 32);
  std::printf("sine residual %.2e (%s)\n", rs.residual_max, rs.pass ? "pass" : "fail");
  std::printf("exp  residual %.2e (%s)\n", re.residual_max, re.pass ? "pass" : "fail");

  const auto sol = ssps::as_solution(sine);
  const auto history = ssps::HistorySegment::from_function(sol.x, 1000);
  const auto run = ssps::simulate_method_of_steps(fs, history, 6.0, 1e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < run.t.size(); ++i) {
    worst = std::max(worst, std::abs(run.x[i] - sol.x(run.t[i])));
  }
  std::printf("method of steps, h = 1e-3, t in [0, 6]: max error %.2e\n", worst);
}
