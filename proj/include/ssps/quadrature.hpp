#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ssps/errors.hpp"

namespace ssps {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Builds the order-point rule by Newton iteration on P_n from the Tricomi
/// initial guesses. Nodes are returned in increasing order.
inline GaussLegendreRule gauss_legendre(int order) {
  if (order < 1 || order > 512) {
    throw DomainError("gauss_legendre: order must be in [1, 512], got " +
                      std::to_string(order));
  }
  const int n = order;
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      // p0 = P_n(z), p1 = P_{n-1}(z)
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16) break;
    }
    // recompute the derivative at the converged node
    {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Integral of f over [a, b] with the given rule.
template <class F>
double integrate(const GaussLegendreRule& rule, F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < rule.order(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

/// Integral of f over [a, b] split into `panels` equal pieces.
template <class F>
double integrate_composite(const GaussLegendreRule& rule, F&& f, double a,
                           double b, int panels) {
  if (panels < 1) throw DomainError("integrate_composite: panels must be >= 1");
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    sum += integrate(rule, f, a + p * width, a + (p + 1) * width);
  }
  return sum;
}

/// Composite Simpson over equally spaced samples; needs an odd sample count.
inline double simpson(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  if (n < 3 || n % 2 == 0) {
    throw DomainError("simpson: need an odd number (>= 3) of samples");
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    (i % 2 == 1 ? odd : even) += values[i];
  }
  return h / 3.0 * (values.front() + 4.0 * odd + 2.0 * even + values.back());
}

}  // namespace ssps
