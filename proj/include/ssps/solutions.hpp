#pragma once

/// \file
/// Closed-form period-2 solutions of x'(t) = -integral_0^1 f(x(t-s)) ds for
/// f(x) = r sin x and f(x) = r (e^x - 1), plus the pendulum and (w, y) orbits
/// they are assembled from.
///
/// Both modulus equations are solved by bisection in q = ln(k/k'), so the
/// exp model stays solvable at large r where k is indistinguishable from 1
/// in double precision.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "ssps/elliptic.hpp"
#include "ssps/errors.hpp"

namespace ssps {

/// Both models have an SSPS exactly when r exceeds this value.
inline constexpr double kExistenceThreshold =
    std::numbers::pi * std::numbers::pi / 2.0;

namespace detail {

inline constexpr double kLogRatioLow = -23.025850929940457;  // ln(1e-10)
inline constexpr double kLogRatioHigh = Modulus::kMaxLogRatio;
inline constexpr int kMonotonicityGrid = 200;
/// Below k ~ 1e-4 consecutive grid values of the modulus equation differ by
/// less than their rounding error (the equation is pi^2/2 + O(k^2)), so the
/// strict-increase check starts here.
inline constexpr double kMonotonicityLow = -9.2103403719761836;  // ln(1e-4)

/// Root of g(q) = target for a g increasing in q on the bracket.
inline Modulus bisect_log_ratio(const std::function<double(const Modulus&)>& g,
                                double target) {
  double lo = kLogRatioLow;
  double hi = kLogRatioHigh;
  if (g(Modulus::from_log_ratio(lo)) >= target) {
    return Modulus::from_log_ratio(lo);
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (g(Modulus::from_log_ratio(mid)) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Modulus a = Modulus::from_log_ratio(lo);
  const Modulus b = Modulus::from_log_ratio(hi);
  return std::abs(g(a) - target) <= std::abs(g(b) - target) ? a : b;
}

inline void require_above_threshold(double r, const char* model) {
  if (!std::isfinite(r) || !(r > kExistenceThreshold)) {
    throw NoSolution(std::string("no SSPS exists: r <= pi^2/2 (") + model +
                     " model, r = " + std::to_string(r) + ")");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// f(x) = r sin x

/// Modulus m with 2 K(m) = sqrt(2 r).
inline Modulus solve_sine_modulus(double r) {
  detail::require_above_threshold(r, "sine");
  const double target = 0.5 * std::sqrt(2.0 * r);
  auto quarter = [](const Modulus& m) { return complete_K(m); };
  if (quarter(Modulus::from_log_ratio(detail::kLogRatioHigh)) < target) {
    throw NoSolution("r = " + std::to_string(r) +
                     " is outside the supported range of the modulus solver");
  }
  return detail::bisect_log_ratio(quarter, target);
}

/// x(t) = 2 arcsin(m sn(sqrt(2r) t, m)). Built by sine_ssps() the period is
/// exactly 2; from_modulus() allows any modulus (the period is then
/// 4 K(m) / sqrt(2r)), which is what perturbation studies need.
struct SineSsps {
  double r = 0.0;
  Modulus modulus;
  /// Square of the modulus; the symbol the closed form is usually written in.
  double a = 0.0;
  double K = 0.0;
  double omega = 0.0;
  double period = 2.0;

  static SineSsps from_modulus(double r, const Modulus& m) {
    if (!(r > 0.0)) throw DomainError("SineSsps: r must be positive");
    SineSsps s;
    s.r = r;
    s.modulus = m;
    s.a = m.parameter();
    s.K = complete_K(m);
    s.omega = std::sqrt(2.0 * r);
    s.period = 4.0 * s.K / s.omega;
    return s;
  }

  double m() const { return modulus.k(); }
  double amplitude() const { return 2.0 * std::asin(modulus.k()); }

  double x(double t) const {
    return 2.0 * std::asin(modulus.k() * jacobi_snk(omega * t, modulus).sn);
  }
  /// d/dt of x; the dn factor of d sn/du cancels against the arcsin root.
  double dx(double t) const {
    return 2.0 * modulus.k() * omega * jacobi_snk(omega * t, modulus).cn;
  }
};

inline SineSsps sine_ssps(double r) {
  return SineSsps::from_modulus(r, solve_sine_modulus(r));
}

/// Pendulum orbit of x' = -y, y' = 2 r sin x through (amplitude, 0):
/// x(t) = 2 arcsin(k sn(sqrt(2r) t + K(k), k)), k = sin(amplitude / 2).
struct PendulumOrbit {
  double r = 0.0;
  double amplitude = 0.0;
  Modulus modulus;
  double K = 0.0;
  double omega = 0.0;
  double period = 0.0;

  double x(double t) const {
    return 2.0 * std::asin(modulus.k() * jacobi_snk(omega * t + K, modulus).sn);
  }
  double dx(double t) const {
    return 2.0 * modulus.k() * omega * jacobi_snk(omega * t + K, modulus).cn;
  }
  double y(double t) const { return -dx(t); }
};

inline PendulumOrbit pendulum_orbit(double r, double amplitude) {
  if (!(r > 0.0)) throw DomainError("pendulum_orbit: r must be positive");
  if (!(amplitude > 0.0 && amplitude < std::numbers::pi)) {
    throw DomainError("pendulum_orbit: amplitude must lie in (0, pi)");
  }
  PendulumOrbit p;
  p.r = r;
  p.amplitude = amplitude;
  // k' = cos(a/2) directly, so amplitudes near pi keep their precision
  p.modulus = Modulus::from_complementary(std::cos(0.5 * amplitude));
  p.K = complete_K(p.modulus);
  p.omega = std::sqrt(2.0 * r);
  p.period = 4.0 * p.K / p.omega;
  return p;
}

// ---------------------------------------------------------------------------
// f(x) = r (e^x - 1)

/// 2 K(k) (2 E(k) - K(k) (1 - k^2)); increasing from pi^2/2 at k = 0.
inline double exp_modulus_rhs(const Modulus& k) {
  const CompletePair p = complete_integrals(k);
  const double kc2 = k.complementary() * k.complementary();
  return 2.0 * p.K * (2.0 * p.E - p.K * kc2);
}

/// Checks that exp_modulus_rhs is strictly increasing on an evenly spaced
/// q-grid spanning the solver bracket from k = 1e-4 upwards.
inline bool exp_modulus_rhs_is_monotone(int points = detail::kMonotonicityGrid) {
  double previous = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double q = detail::kMonotonicityLow +
                     (detail::kLogRatioHigh - detail::kMonotonicityLow) * i /
                         (points - 1);
    const double value = exp_modulus_rhs(Modulus::from_log_ratio(q));
    if (!(value > previous)) return false;
    previous = value;
  }
  return true;
}

/// Unique k in (0, 1) with exp_modulus_rhs(k) = r.
inline Modulus solve_exp_modulus(double r) {
  detail::require_above_threshold(r, "exp");
  if (exp_modulus_rhs(Modulus::from_log_ratio(detail::kLogRatioHigh)) < r) {
    throw NoSolution("r = " + std::to_string(r) +
                     " is outside the supported range of the modulus solver");
  }
  if (!exp_modulus_rhs_is_monotone()) {
    throw MonotonicityError(
        "exp modulus equation is not increasing on the solver bracket");
  }
  return detail::bisect_log_ratio(exp_modulus_rhs, r);
}

namespace detail {

/// dn + k cn, switching to (1 - k^2) / (dn - k cn) when cn < 0; the two are
/// equal because dn^2 - k^2 cn^2 = 1 - k^2.
inline double dn_plus_k_cn(const EllipticTriple& e) {
  const double k = e.modulus.k();
  const double kc = e.modulus.complementary();
  if (e.cn >= 0.0) return e.dn + k * e.cn;
  return kc * kc / (e.dn - k * e.cn);
}

inline double dn_minus_k_cn(const EllipticTriple& e) {
  const double k = e.modulus.k();
  const double kc = e.modulus.complementary();
  if (e.cn <= 0.0) return e.dn - k * e.cn;
  return kc * kc / (e.dn + k * e.cn);
}

}  // namespace detail

/// Solution of w' = -y, y' = 2 gamma sinh w from (a, 0):
/// w(t) = log((dn + k cn) / (dn - k cn)), y(t) = 2 beta k sn, both at beta t,
/// with alpha = sinh(a/2), beta = sqrt(2 gamma (1 + alpha^2)),
/// k = alpha / sqrt(1 + alpha^2).
struct WyPair {
  double gamma = 0.0;
  double a = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  Modulus modulus;
  double K = 0.0;

  double period() const { return 4.0 * K / beta; }

  double w(double t) const {
    const EllipticTriple e = jacobi_snk(beta * t, modulus);
    return std::log(detail::dn_plus_k_cn(e)) - std::log(detail::dn_minus_k_cn(e));
  }
  double y(double t) const {
    return 2.0 * beta * modulus.k() * jacobi_snk(beta * t, modulus).sn;
  }
  /// u = sinh(w / 2) = alpha cn(beta t, k).
  double u(double t) const { return alpha * jacobi_snk(beta * t, modulus).cn; }
};

inline WyPair wy_solution(double gamma, double a) {
  if (!(gamma > 0.0) || !(a > 0.0)) {
    throw DomainError("wy_solution: gamma and a must be positive");
  }
  WyPair p;
  p.gamma = gamma;
  p.a = a;
  p.alpha = std::sinh(0.5 * a);
  const double stretch = 1.0 + p.alpha * p.alpha;
  p.beta = std::sqrt(2.0 * gamma * stretch);
  p.modulus = Modulus::from_complementary(1.0 / std::sqrt(stretch));
  p.K = complete_K(p.modulus);
  return p;
}

/// Tolerance on the agreement of the two expressions for c / 2.
inline constexpr double kOffsetConsistencyTolerance = 1e-10;

/// x(t) = log(K (dn + k cn)^2 / (2E - K (1 - k^2))) at argument 2 K t, with
/// x(t) + x(t - 1) = c.
struct ExpSsps {
  double r = 0.0;
  Modulus modulus;
  double K = 0.0;
  double E = 0.0;
  double c = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double period = 2.0;

  /// Unchecked construction for an arbitrary modulus (negative controls):
  /// c is taken from e^{c/2} = K (1 - k^2) / (2E - K (1 - k^2)), the value
  /// that makes the profile a solution for r = exp_modulus_rhs(k).
  static ExpSsps from_modulus(double r, const Modulus& k) {
    ExpSsps s;
    s.r = r;
    s.modulus = k;
    const CompletePair p = complete_integrals(k);
    s.K = p.K;
    s.E = p.E;
    const double kc2 = k.complementary() * k.complementary();
    s.c = 2.0 * std::log(p.K * kc2 / (2.0 * p.E - p.K * kc2));
    s.beta = 2.0 * p.K;
    s.gamma = r * std::exp(0.5 * s.c);
    s.alpha = k.k() / k.complementary();
    return s;
  }

  double x(double t) const {
    const EllipticTriple e = jacobi_snk(beta * t, modulus);
    const double kc2 = modulus.complementary() * modulus.complementary();
    return std::log(K) + 2.0 * std::log(detail::dn_plus_k_cn(e)) -
           std::log(2.0 * E - K * kc2);
  }
  /// x' = -y = -2 beta k sn(beta t, k).
  double dx(double t) const {
    return -2.0 * beta * modulus.k() * jacobi_snk(beta * t, modulus).sn;
  }

  /// The same orbit seen as a shifted (w, y) solution: x = w + c/2.
  WyPair as_wy_pair() const { return wy_solution(gamma, x(0.0) - 0.5 * c); }
};

inline ExpSsps exp_ssps(double r) {
  const Modulus k = solve_exp_modulus(r);
  ExpSsps s = ExpSsps::from_modulus(r, k);
  const double kc2 = k.complementary() * k.complementary();
  const double half_c_from_r = std::log(2.0 * s.K * s.K * kc2 / r);
  if (std::abs(half_c_from_r - 0.5 * s.c) > kOffsetConsistencyTolerance) {
    throw ConsistencyError("exp_ssps: the two expressions for c/2 disagree by " +
                           std::to_string(half_c_from_r - 0.5 * s.c));
  }
  return s;
}

}  // namespace ssps
