#pragma once

/// \file
/// The distributed delay equation x'(t) = -integral_0^1 f(x(t-s)) ds:
/// residuals of candidate solutions, the period-2 / symmetry verification,
/// the x((2n-1)t) rescaling family, a method-of-steps simulator, and the
/// equivalent v-formulation v'(t) = -f(integral_0^1 v(t-s) ds).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ssps/errors.hpp"
#include "ssps/nonlinearity.hpp"
#include "ssps/quadrature.hpp"
#include "ssps/solutions.hpp"

namespace ssps {

/// A candidate solution with its analytic derivative.
struct SolutionWithDerivative {
  std::function<double(double)> x;
  std::function<double(double)> dx;
  double declared_period = 2.0;
};

inline SolutionWithDerivative as_solution(const SineSsps& s) {
  return {[s](double t) { return s.x(t); }, [s](double t) { return s.dx(t); },
          s.period};
}

inline SolutionWithDerivative as_solution(const ExpSsps& s) {
  return {[s](double t) { return s.x(t); }, [s](double t) { return s.dx(t); },
          s.period};
}

inline SolutionWithDerivative as_solution(const PendulumOrbit& p) {
  return {[p](double t) { return p.x(t); }, [p](double t) { return p.dx(t); },
          p.period};
}

inline SolutionWithDerivative zero_solution() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }, 2.0};
}

namespace detail {

inline void require_order(int order) {
  if (order < 8 || order > 128) {
    throw DomainError("quadrature order must lie in [8, 128], got " +
                      std::to_string(order));
  }
}

}  // namespace detail

/// integral_0^1 f(x(t - s)) ds with the given Gauss-Legendre rule, applied
/// on `panels` equal subintervals. Sharply peaked profiles (the exp model at
/// large r) need several panels.
inline double delay_integral(const SolutionWithDerivative& sol,
                             const Nonlinearity& f, double t,
                             const GaussLegendreRule& rule, int panels = 1) {
  auto integrand = [&](double s) { return f(sol.x(t - s)); };
  if (panels <= 1) return integrate(rule, integrand, 0.0, 1.0);
  return integrate_composite(rule, integrand, 0.0, 1.0, panels);
}

inline double delay_integral(const SolutionWithDerivative& sol,
                             const Nonlinearity& f, double t, int order) {
  detail::require_order(order);
  return delay_integral(sol, f, t, gauss_legendre(order));
}

/// x'(t) + multiplier * integral_0^1 f(x(t - s)) ds.
inline double residual(const SolutionWithDerivative& sol, const Nonlinearity& f,
                       double t, const GaussLegendreRule& rule,
                       double multiplier = 1.0, int panels = 1) {
  return sol.dx(t) + multiplier * delay_integral(sol, f, t, rule, panels);
}

inline double residual(const SolutionWithDerivative& sol, const Nonlinearity& f,
                       double t, int order) {
  detail::require_order(order);
  return residual(sol, f, t, gauss_legendre(order));
}

/// sup over an evenly spaced grid on [t0, t1] of |residual|.
inline double max_residual(const SolutionWithDerivative& sol,
                           const Nonlinearity& f, int grid_points, int order,
                           double t0 = 0.0, double t1 = 2.0,
                           double multiplier = 1.0, int panels = 1) {
  detail::require_order(order);
  if (grid_points < 2) throw DomainError("max_residual: need >= 2 grid points");
  const GaussLegendreRule rule = gauss_legendre(order);
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = t0 + (t1 - t0) * i / (grid_points - 1);
    worst = std::max(worst,
                     std::abs(residual(sol, f, t, rule, multiplier, panels)));
  }
  return worst;
}

struct VerificationTolerances {
  double residual = 1e-8;
  double antisymmetry = 1e-10;
  double period = 1e-10;
};

struct ResidualReport {
  double residual_max = 0.0;
  /// sup |x(t) + x(t-1) - c|; c is 0 for odd f and the grid mean otherwise.
  double antisymmetry_max = 0.0;
  /// sup |x(t + 2) - x(t)|.
  double period_defect_max = 0.0;
  /// Grid mean of x(t) + x(t - 1).
  double offset_c = 0.0;
  int grid_points = 0;
  int quad_order = 0;
  VerificationTolerances tolerances;
  bool pass = false;
};

/// Residual of the delay equation together with the two characterisations of
/// a period-2 solution: x(t) + x(t-1) constant, and x(t + 2) = x(t). For odd
/// f the constant has to be zero.
inline ResidualReport verify_ssps(const SolutionWithDerivative& sol,
                                  const Nonlinearity& f, int grid_points,
                                  int order, VerificationTolerances tol = {}) {
  detail::require_order(order);
  if (grid_points < 2) throw DomainError("verify_ssps: need >= 2 grid points");
  ResidualReport report;
  report.grid_points = grid_points;
  report.quad_order = order;
  report.tolerances = tol;

  const GaussLegendreRule rule = gauss_legendre(order);
  std::vector<double> sums(grid_points);
  double mean = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = 2.0 * i / (grid_points - 1);
    const double xt = sol.x(t);
    report.residual_max =
        std::max(report.residual_max, std::abs(residual(sol, f, t, rule)));
    report.period_defect_max =
        std::max(report.period_defect_max, std::abs(sol.x(t + 2.0) - xt));
    sums[i] = xt + sol.x(t - 1.0);
    mean += sums[i];
  }
  mean /= grid_points;
  report.offset_c = mean;
  const double reference = f.is_odd() ? 0.0 : mean;
  for (double s : sums) {
    report.antisymmetry_max =
        std::max(report.antisymmetry_max, std::abs(s - reference));
  }
  report.pass = report.residual_max <= tol.residual &&
                report.antisymmetry_max <= tol.antisymmetry &&
                report.period_defect_max <= tol.period;
  return report;
}

struct EvennessReport {
  /// Axis of symmetry, located at the maximum of x.
  double axis = 0.0;
  /// sup_t |x(axis + t) - x(axis - t)| over t in [0, 2].
  double defect = 0.0;
};

/// Locates t0 with x(t0 + t) = x(t0 - t): discrete argmax of x on [0, 2],
/// a three-point parabolic fit, then secant steps on x' = 0.
inline EvennessReport evenness_about_maximum(const SolutionWithDerivative& sol,
                                             int grid_points = 2001) {
  if (grid_points < 3) throw DomainError("evenness: need >= 3 grid points");
  const double h = 2.0 / (grid_points - 1);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double v = sol.x(h * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double tc = h * best;
  const double left = sol.x(tc - h);
  const double right = sol.x(tc + h);
  const double curvature = left - 2.0 * best_value + right;
  double axis = tc;
  if (curvature < 0.0) axis = tc + 0.5 * h * (left - right) / curvature;

  double a = axis - 0.25 * h;
  double b = axis + 0.25 * h;
  double da = sol.dx(a);
  double db = sol.dx(b);
  for (int iter = 0; iter < 20 && db != da; ++iter) {
    const double next = b - db * (b - a) / (db - da);
    a = b;
    da = db;
    b = next;
    db = sol.dx(b);
    if (std::abs(b - a) < 1e-15) break;
  }
  if (std::abs(b - axis) < h) axis = b;

  EvennessReport report;
  report.axis = axis;
  for (int i = 0; i < grid_points; ++i) {
    const double t = h * i;
    report.defect =
        std::max(report.defect, std::abs(sol.x(axis + t) - sol.x(axis - t)));
  }
  return report;
}

// ---------------------------------------------------------------------------
// x_n(t) = x((2n - 1) t)

struct RescaledSolution {
  SolutionWithDerivative solution;
  int n = 1;
  /// rho = (2n - 1)^2, the factor in x' = -rho * integral_0^1 f(x(t-s)) ds.
  double multiplier = 1.0;
};

inline RescaledSolution rescaled_solution(const SolutionWithDerivative& sol,
                                          int n) {
  if (n < 1) throw DomainError("rescaled_solution: n must be >= 1");
  const double stretch = 2.0 * n - 1.0;
  RescaledSolution out;
  out.n = n;
  out.multiplier = stretch * stretch;
  out.solution.x = [x = sol.x, stretch](double t) { return x(stretch * t); };
  out.solution.dx = [dx = sol.dx, stretch](double t) {
    return stretch * dx(stretch * t);
  };
  out.solution.declared_period = sol.declared_period / stretch;
  return out;
}

/// The three equal integrals behind the rescaling identity at a point t:
///   integral_0^1     f(x(a t - s)) ds,
///   integral_0^a     f(x(a t - s)) ds,
///   a * integral_0^1 f(x_n(t - s)) ds,    a = 2n - 1.
struct TelescopingIntegrals {
  double unit_window = 0.0;
  double stretched_window = 0.0;
  double rescaled = 0.0;
};

inline TelescopingIntegrals telescoping_integrals(
    const SolutionWithDerivative& sol, const Nonlinearity& f, int n, double t,
    const GaussLegendreRule& rule) {
  if (n < 1) throw DomainError("telescoping_integrals: n must be >= 1");
  const double stretch = 2.0 * n - 1.0;
  auto integrand = [&](double s) { return f(sol.x(stretch * t - s)); };
  TelescopingIntegrals out;
  out.unit_window = integrate(rule, integrand, 0.0, 1.0);
  out.stretched_window =
      integrate_composite(rule, integrand, 0.0, stretch, 2 * n - 1);
  const RescaledSolution rescaled = rescaled_solution(sol, n);
  out.rescaled = stretch * delay_integral(rescaled.solution, f, t, rule);
  return out;
}

// ---------------------------------------------------------------------------
// Method of steps

/// Samples of x on the uniform grid -1, -1 + h, ..., 0 with h = 1/N.
class HistorySegment {
 public:
  static constexpr int kMinIntervals = 8;

  explicit HistorySegment(std::vector<double> values)
      : values_(std::move(values)) {
    const auto intervals = static_cast<int>(values_.size()) - 1;
    if (intervals < kMinIntervals) {
      throw DomainError("HistorySegment: need at least 8 intervals on [-1, 0]");
    }
    if (intervals % 2 != 0) {
      throw DomainError(
          "HistorySegment: the interval count must be even for Simpson's rule");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("HistorySegment: non-finite value");
    }
  }

  template <class F>
  static HistorySegment from_function(F&& x, int intervals) {
    if (intervals < 1) throw DomainError("HistorySegment: intervals must be >= 1");
    std::vector<double> values(static_cast<std::size_t>(intervals) + 1);
    for (int j = 0; j <= intervals; ++j) {
      values[j] = x(-1.0 + static_cast<double>(j) / intervals);
    }
    return HistorySegment(std::move(values));
  }

  int intervals() const { return static_cast<int>(values_.size()) - 1; }
  double step() const { return 1.0 / intervals(); }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct SimulationOptions {
  /// Divergence guard on |x|.
  double bound = 1e3;
};

struct SimulatedTrajectory {
  double step = 0.0;
  /// t_j = j * step for j = 0 .. steps.
  std::vector<double> t;
  std::vector<double> x;
};

namespace detail {

/// Derivative at node i from five neighbouring samples inside [0, last].
inline double five_point_slope(std::span<const double> v, std::size_t i,
                               double h) {
  static constexpr double kWeights[5][5] = {
      {-25.0, 48.0, -36.0, 16.0, -3.0},
      {-3.0, -10.0, 18.0, -6.0, 1.0},
      {1.0, -8.0, 0.0, 8.0, -1.0},
      {-1.0, 6.0, -18.0, 10.0, 3.0},
      {3.0, -16.0, 36.0, -48.0, 25.0}};
  const std::size_t last = v.size() - 1;
  const std::size_t start = std::min(i >= 2 ? i - 2 : 0, last - 4);
  const std::size_t offset = i - start;
  double sum = 0.0;
  for (std::size_t j = 0; j < 5; ++j) sum += kWeights[offset][j] * v[start + j];
  return sum / (12.0 * h);
}

/// Cubic Hermite value at the midpoint of [i, i + 1] with fourth-order slopes.
inline double hermite_midpoint(std::span<const double> v, std::size_t i,
                               double h) {
  const double m0 = five_point_slope(v, i, h);
  const double m1 = five_point_slope(v, i + 1, h);
  return 0.5 * (v[i] + v[i + 1]) + 0.125 * h * (m0 - m1);
}

}  // namespace detail

/// Integrates the delay equation forward from the given history on [-1, 0].
///
/// Writing G(t) = integral_{t-1}^t f(x) gives x' = -G and
/// G' = f(x(t)) - f(x(t-1)). Each step starts from G evaluated by composite
/// Simpson over the stored window [t_n - 1, t_n], then takes one RK4 step of
/// the pair (x, G); the lagged value at the half-step stage comes from a
/// C^1 cubic Hermite interpolant of the stored past.
inline SimulatedTrajectory simulate_method_of_steps(
    const Nonlinearity& f, const HistorySegment& history, double horizon,
    double h, SimulationOptions options = {}) {
  const int N = history.intervals();
  if (!(std::abs(h * N - 1.0) <= 1e-12)) {
    throw DomainError("simulate_method_of_steps: step must equal the history "
                      "spacing 1/" + std::to_string(N));
  }
  if (!(horizon >= 1.0) || !std::isfinite(horizon)) {
    throw DomainError("simulate_method_of_steps: horizon must be >= 1");
  }
  h = 1.0 / N;
  const auto steps = static_cast<std::size_t>(std::llround(horizon * N));

  std::vector<double> xs(history.values().begin(), history.values().end());
  xs.reserve(xs.size() + steps);
  std::vector<double> fx;
  fx.reserve(xs.capacity());
  for (double v : xs) fx.push_back(f(v));

  auto guard = [&](double value) {
    if (!std::isfinite(value) || std::abs(value) > options.bound) {
      throw StabilityError("simulate_method_of_steps: |x| exceeded the bound " +
                           std::to_string(options.bound));
    }
    if (!f.contains(value)) {
      throw DomainError("simulate_method_of_steps: state left the domain of " +
                        f.name());
    }
  };
  for (double v : xs) guard(v);

  SimulatedTrajectory out;
  out.step = h;
  out.t.reserve(steps + 1);
  out.x.reserve(steps + 1);
  out.t.push_back(0.0);
  out.x.push_back(xs.back());

  for (std::size_t n = 0; n < steps; ++n) {
    // window [t_n - 1, t_n] occupies stored indices n .. n + N
    const std::span<const double> window(fx.data() + n, N + 1);
    const double memory = simpson(window, h);
    const std::span<const double> past(xs);
    const double lag_start = fx[n];
    const double lag_mid = f(detail::hermite_midpoint(past, n, h));

    const double x0 = xs.back();
    const double k1x = -memory;
    const double k1g = fx.back() - lag_start;
    const double x2 = x0 + 0.5 * h * k1x;
    const double g2 = memory + 0.5 * h * k1g;
    const double k2x = -g2;
    const double k2g = f(x2) - lag_mid;
    const double x3 = x0 + 0.5 * h * k2x;
    const double g3 = memory + 0.5 * h * k2g;
    const double k3x = -g3;
    const double k3g = f(x3) - lag_mid;
    const double k4x = -(memory + h * k3g);
    const double next = x0 + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    guard(next);

    xs.push_back(next);
    fx.push_back(f(next));
    out.t.push_back(static_cast<double>(n + 1) * h);
    out.x.push_back(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// v-formulation

/// v(t) = v(0) - integral_0^t f(x(s)) ds on [-1, inf), with v(0) chosen so
/// that x(0) = integral_0^1 v(-s) ds.
class VFunction {
 public:
  VFunction(SolutionWithDerivative sol, Nonlinearity f, int order)
      : sol_(std::move(sol)), f_(f), rule_(gauss_legendre(order)) {
    v0_ = sol_.x(0.0) +
          integrate(rule_, [&](double s) { return accumulated(-s); }, 0.0, 1.0);
  }

  double v0() const { return v0_; }
  double operator()(double t) const { return v0_ - accumulated(t); }
  double derivative(double t) const { return -f_(sol_.x(t)); }
  /// integral_0^1 v(t - s) ds, which should reproduce x(t).
  double window_mean(double t) const {
    return integrate(rule_, [&](double s) { return (*this)(t - s); }, 0.0, 1.0);
  }

 private:
  /// integral_0^t f(x(s)) ds on panels of width at most 1/2.
  double accumulated(double t) const {
    if (t == 0.0) return 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * std::abs(t))));
    return integrate_composite(rule_, [&](double s) { return f_(sol_.x(s)); },
                               0.0, t, panels);
  }

  SolutionWithDerivative sol_;
  Nonlinearity f_;
  GaussLegendreRule rule_;
  double v0_ = 0.0;
};

struct VFormDefects {
  /// sup |x(t) - integral_0^1 v(t - s) ds|
  double reconstruction = 0.0;
  /// sup |v'(t) + f(integral_0^1 v(t - s) ds)|
  double equation = 0.0;
};

/// Builds v from a solution of the delay equation and measures how well it
/// solves v'(t) = -f(integral_0^1 v(t - s) ds) on an evenly spaced grid over
/// [0, 2]. Defects are reported, never thrown.
inline VFormDefects v_form_check(const SolutionWithDerivative& sol,
                                 const Nonlinearity& f, int order,
                                 int grid_points = 201) {
  detail::require_order(order);
  if (grid_points < 2) throw DomainError("v_form_check: need >= 2 grid points");
  const VFunction v(sol, f, order);
  VFormDefects out;
  for (int i = 0; i < grid_points; ++i) {
    const double t = 2.0 * i / (grid_points - 1);
    const double mean = v.window_mean(t);
    out.reconstruction = std::max(out.reconstruction, std::abs(sol.x(t) - mean));
    const double image = f.contains(mean) ? f(mean)
                                          : std::numeric_limits<double>::infinity();
    out.equation = std::max(out.equation, std::abs(v.derivative(t) + image));
  }
  return out;
}

}  // namespace ssps
