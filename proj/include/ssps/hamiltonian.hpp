#pragma once

/// \file
/// The planar Hamiltonian system x' = -y, y' = 2 f(x) with energy
/// H = y^2 + 4 F(x): fixed-step RK4 orbits, the period integral, and the
/// reflection symmetries of orbits started on the positive x-axis.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ssps/errors.hpp"
#include "ssps/nonlinearity.hpp"
#include "ssps/quadrature.hpp"

namespace ssps {

struct PhasePoint {
  double x = 0.0;
  /// Conjugate variable, y = -x'.
  double y = 0.0;
};

inline double potential_F(const Nonlinearity& f, double x) {
  return f.potential(x);
}

inline double hamiltonian_H(const Nonlinearity& f, PhasePoint p) {
  return p.y * p.y + 4.0 * f.potential(p.x);
}

/// One classical Runge-Kutta step of size h.
inline PhasePoint rk4_step(const Nonlinearity& f, PhasePoint p, double h) {
  const double k1x = -p.y;
  const double k1y = 2.0 * f(p.x);
  const double x2 = p.x + 0.5 * h * k1x;
  const double y2 = p.y + 0.5 * h * k1y;
  const double k2x = -y2;
  const double k2y = 2.0 * f(x2);
  const double x3 = p.x + 0.5 * h * k2x;
  const double y3 = p.y + 0.5 * h * k2y;
  const double k3x = -y3;
  const double k3y = 2.0 * f(x3);
  const double x4 = p.x + h * k3x;
  const double y4 = p.y + h * k3y;
  const double k4x = -y4;
  const double k4y = 2.0 * f(x4);
  return {p.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
          p.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)};
}

/// Equally spaced RK4 trajectory from (a, 0). Sample i sits at t = i * dt.
class Orbit {
 public:
  Orbit(Nonlinearity f, double dt, std::vector<PhasePoint> samples)
      : f_(f), dt_(dt), samples_(std::move(samples)) {
    const double h0 = hamiltonian_H(f_, samples_.front());
    for (const PhasePoint& p : samples_) {
      energy_drift_ = std::max(energy_drift_,
                               std::abs(hamiltonian_H(f_, p) - h0) / std::abs(h0));
    }
  }

  const Nonlinearity& nonlinearity() const { return f_; }
  double dt() const { return dt_; }
  const std::vector<PhasePoint>& samples() const { return samples_; }
  std::vector<PhasePoint>& mutable_samples() { return samples_; }
  double time_at(std::size_t i) const { return static_cast<double>(i) * dt_; }
  double end_time() const { return time_at(samples_.size() - 1); }

  /// max_i |H(t_i) - H(0)| / |H(0)|.
  double energy_drift() const { return energy_drift_; }
  /// energy_drift / dt^4, the constant C in drift <= C dt^4.
  double drift_constant() const { return energy_drift_ / std::pow(dt_, 4); }

  /// First return to y = 0 from below with x > 0, if the run reached it.
  std::optional<double> period() const { return period_; }
  void set_period(std::optional<double> period) { period_ = period; }

  /// State at any t in [0, end_time()], by an RK4 substep from the sample
  /// at or before t.
  PhasePoint at(double t) const {
    if (!(t >= 0.0) || t > end_time() * (1.0 + 1e-14)) {
      throw DomainError("Orbit::at: t outside the integrated range");
    }
    const auto last = samples_.size() - 1;
    auto i = static_cast<std::size_t>(std::floor(t / dt_));
    i = std::min(i, last);
    const double delta = t - time_at(i);
    if (delta == 0.0) return samples_[i];
    return rk4_step(f_, samples_[i], delta);
  }

 private:
  Nonlinearity f_;
  double dt_;
  std::vector<PhasePoint> samples_;
  std::optional<double> period_;
  double energy_drift_ = 0.0;
};

namespace detail {

/// Event tolerance in t for locating the return to y = 0.
inline constexpr double kPeriodEventTolerance = 1e-12;

inline double locate_y_zero(const Nonlinearity& f, PhasePoint start,
                            double t_start, double dt) {
  double lo = 0.0;
  double hi = dt;
  while (hi - lo > kPeriodEventTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (rk4_step(f, start, mid).y < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return t_start + 0.5 * (lo + hi);
}

}  // namespace detail

/// Integrates x' = -y, y' = 2 f(x) from (a, 0) for `steps` RK4 steps of size
/// dt and records the first full return as the measured period.
inline Orbit integrate_orbit(const Nonlinearity& f, double a, double dt,
                             int steps) {
  if (!f.contains(a) || a == 0.0) {
    throw DomainError("integrate_orbit: need a in D and a != 0");
  }
  if (!(dt > 0.0) || steps < 1) {
    throw DomainError("integrate_orbit: need dt > 0 and steps >= 1");
  }
  std::vector<PhasePoint> samples;
  samples.reserve(static_cast<std::size_t>(steps) + 1);
  samples.push_back({a, 0.0});
  std::optional<double> period;
  for (int i = 0; i < steps; ++i) {
    const PhasePoint& p = samples.back();
    const PhasePoint next = rk4_step(f, p, dt);
    if (!f.contains(next.x)) {
      throw DomainError("integrate_orbit: trajectory left the domain of " +
                        f.name());
    }
    if (!period && i > 0 && p.y < 0.0 && next.y >= 0.0 && next.x > 0.0) {
      period = detail::locate_y_zero(f, p, i * dt, dt);
    }
    samples.push_back(next);
  }
  Orbit orbit(f, dt, std::move(samples));
  orbit.set_period(period);
  return orbit;
}

/// T = 2 * integral_0^a dx / sqrt(F(a) - F(x)), evaluated after the
/// substitution x = a sin(theta), which turns the inverse square root
/// endpoint singularity into a smooth integrand on [0, pi/2].
inline double period_by_quadrature(const Nonlinearity& f, double a,
                                   int order = 64) {
  if (!f.is_odd()) {
    throw OddnessError("period_by_quadrature needs an odd nonlinearity; got " +
                       f.name());
  }
  if (!(a > 0.0) || !f.contains(a)) {
    throw DomainError("period_by_quadrature: need a > 0 inside D");
  }
  const GaussLegendreRule rule = gauss_legendre(order);
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double x = a * s;
    // a - x = a (1 - sin) = a cos^2 / (1 + sin), exact near theta = pi/2
    const double gap = a * c * c / (1.0 + s);
    return a * c / std::sqrt(f.potential_drop(a, x, gap));
  };
  return 2.0 * integrate(rule, integrand, 0.0, 0.5 * std::numbers::pi);
}

/// Maxima of the symmetry defects of an orbit started at (a, 0).
struct SymmetryReport {
  double evenness = 0.0;           ///< |x(t) - x(T - t)|
  double y_oddness = 0.0;          ///< |y(t) + y(T - t)|
  double quarter_x_oddness = 0.0;  ///< |x(T/4 + t) + x(T/4 - t)|
  double quarter_y_evenness = 0.0; ///< |y(T/4 + t) - y(T/4 - t)|
  double ode_residual = 0.0;       ///< finite-difference residual of samples
  double reflection_residual = 0.0;///< worst residual of the three reflections
  double tolerance = 0.0;
  bool pass = false;

  double worst() const {
    return std::max({evenness, y_oddness, quarter_x_oddness,
                     quarter_y_evenness, ode_residual, reflection_residual});
  }
};

namespace detail {

/// Five-point central differences of a sampled planar trajectory, returning
/// the worst residual of X' = -Y, Y' = 2 f(X).
inline double sampled_ode_residual(const Nonlinearity& f,
                                   const std::vector<PhasePoint>& path,
                                   double dt) {
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < path.size(); ++i) {
    const double dx = (path[i - 2].x - 8.0 * path[i - 1].x +
                       8.0 * path[i + 1].x - path[i + 2].x) /
                      (12.0 * dt);
    const double dy = (path[i - 2].y - 8.0 * path[i - 1].y +
                       8.0 * path[i + 1].y - path[i + 2].y) /
                      (12.0 * dt);
    double residual = std::abs(dx + path[i].y);
    if (f.contains(path[i].x)) {
      residual = std::max(residual, std::abs(dy - 2.0 * f(path[i].x)));
    } else {
      residual = std::numeric_limits<double>::infinity();
    }
    worst = std::max(worst, residual);
  }
  return worst;
}

}  // namespace detail

/// Measures the reflection symmetries of an orbit from (a, 0): evenness of x
/// and oddness of y about t = 0 (as x(t) vs x(T - t)), oddness of x and
/// evenness of y about the quarter period, and whether the reflected
/// trajectories (-x, -y), (x(-t), -y(-t)), (-x(-t), y(-t)) still solve the
/// system. Needs the orbit to cover at least one measured period.
inline SymmetryReport check_orbit_symmetries(const Orbit& orbit,
                                             double tolerance = 1e-6) {
  SymmetryReport report;
  report.tolerance = tolerance;
  const auto& samples = orbit.samples();
  const Nonlinearity& f = orbit.nonlinearity();
  const double dt = orbit.dt();

  report.ode_residual = detail::sampled_ode_residual(f, samples, dt);

  std::vector<PhasePoint> mirrored(samples.size());
  std::transform(samples.begin(), samples.end(), mirrored.begin(),
                 [](PhasePoint p) { return PhasePoint{-p.x, -p.y}; });
  double reflection = detail::sampled_ode_residual(f, mirrored, dt);
  // time reversal: sample j of the reversed path is sample n - 1 - j
  std::vector<PhasePoint> reversed(samples.rbegin(), samples.rend());
  for (PhasePoint& p : reversed) p.y = -p.y;
  reflection = std::max(reflection, detail::sampled_ode_residual(f, reversed, dt));
  for (PhasePoint& p : reversed) {
    p.x = -p.x;
    p.y = -p.y;
  }
  reflection = std::max(reflection, detail::sampled_ode_residual(f, reversed, dt));
  report.reflection_residual = reflection;

  const auto period = orbit.period();
  if (!period || *period > orbit.end_time()) {
    const double inf = std::numeric_limits<double>::infinity();
    report.evenness = report.y_oddness = inf;
    report.quarter_x_oddness = report.quarter_y_evenness = inf;
    report.pass = false;
    return report;
  }
  const double T = *period;
  const double quarter = 0.25 * T;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double t = orbit.time_at(i);
    if (t > T) break;
    const PhasePoint mirror = orbit.at(std::max(0.0, T - t));
    report.evenness = std::max(report.evenness, std::abs(samples[i].x - mirror.x));
    report.y_oddness = std::max(report.y_oddness, std::abs(samples[i].y + mirror.y));
    if (t <= quarter) {
      const PhasePoint ahead = orbit.at(quarter + t);
      const PhasePoint behind = orbit.at(quarter - t);
      report.quarter_x_oddness =
          std::max(report.quarter_x_oddness, std::abs(ahead.x + behind.x));
      report.quarter_y_evenness =
          std::max(report.quarter_y_evenness, std::abs(ahead.y - behind.y));
    }
  }
  report.pass = report.worst() <= tolerance;
  return report;
}

}  // namespace ssps
