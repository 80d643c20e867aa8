#pragma once

/// \file
/// Complete elliptic integrals K(k), E(k) and the Jacobi elliptic functions
/// sn, cn, dn. Everything here takes the modulus k, never the parameter
/// m = k^2.
///
/// Near k = 1 the interesting quantity is the complementary modulus
/// k' = sqrt(1 - k^2), which underflows the spacing of doubles around 1 long
/// before K(k) becomes large. Modulus therefore stores k and k' as a pair and
/// every algorithm below is driven by k'.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ssps/errors.hpp"

namespace ssps {

class Modulus {
 public:
  /// Closest approach to k = 1 accepted when constructing from k itself.
  static constexpr double kUnitGap = 1e-12;
  /// Bound on |ln(k/k')| for from_log_ratio; keeps e^{2q} finite.
  static constexpr double kMaxLogRatio = 350.0;

  constexpr Modulus() = default;

  /// k in [0, 1 - kUnitGap).
  static Modulus from_k(double k) {
    if (!(k >= 0.0) || !(k < 1.0)) {
      throw DomainError("modulus k must satisfy 0 <= k < 1, got " +
                        std::to_string(k));
    }
    if (1.0 - k < kUnitGap) {
      throw DomainError(
          "modulus k is within 1e-12 of 1; construct it from the "
          "complementary modulus instead");
    }
    return Modulus(k, std::sqrt((1.0 - k) * (1.0 + k)));
  }

  /// k' in (0, 1].
  static Modulus from_complementary(double kc) {
    if (!(kc > 0.0) || !(kc <= 1.0)) {
      throw DomainError("complementary modulus must satisfy 0 < k' <= 1, got " +
                        std::to_string(kc));
    }
    return Modulus(std::sqrt((1.0 - kc) * (1.0 + kc)), kc);
  }

  /// q = ln(k / k'). Both k and k' keep full relative precision for any q,
  /// which makes this the natural coordinate for bisection.
  static Modulus from_log_ratio(double q) {
    if (!(std::abs(q) <= kMaxLogRatio)) {
      throw DomainError("log ratio ln(k/k') out of range: " +
                        std::to_string(q));
    }
    return Modulus(1.0 / std::sqrt(1.0 + std::exp(-2.0 * q)),
                   1.0 / std::sqrt(1.0 + std::exp(2.0 * q)));
  }

  double k() const { return k_; }
  double complementary() const { return kc_; }
  double parameter() const { return k_ * k_; }
  /// 1 - k without cancellation.
  double one_minus_k() const { return kc_ * kc_ / (1.0 + k_); }
  double log_ratio() const { return std::log(k_) - std::log(kc_); }

 private:
  constexpr Modulus(double k, double kc) : k_(k), kc_(kc) {}

  friend double complete_E(double k);

  double k_ = 0.0;
  double kc_ = 1.0;
};

struct CompletePair {
  double K = std::numbers::pi / 2;
  double E = std::numbers::pi / 2;
  Modulus modulus;
};

struct EllipticTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  double u = 0.0;
  Modulus modulus;
};

namespace detail {

inline constexpr int kMaxAgmIterations = 40;
inline constexpr double kAgmTolerance = 1e-16;
/// Landen descent stops once (a - b) / (a + b) falls below this.
inline constexpr double kReducedModulusStop = 1e-8;

}  // namespace detail

/// K and E together from one arithmetic-geometric mean run:
/// K = pi / (2 AGM(1, k')), E = K (1 - sum_n 2^{n-1} c_n^2) with c_0 = k.
inline CompletePair complete_integrals(const Modulus& modulus) {
  double a = 1.0;
  double b = modulus.complementary();
  double weight = 0.5;
  double sum = weight * modulus.parameter();
  for (int n = 0; n < detail::kMaxAgmIterations; ++n) {
    if (std::abs(a - b) <= detail::kAgmTolerance * a) break;
    const double c = 0.5 * (a - b);
    const double next_a = 0.5 * (a + b);
    b = std::sqrt(a * b);
    if (next_a == a) break;
    a = next_a;
    weight *= 2.0;
    sum += weight * c * c;
  }
  const double K = std::numbers::pi / (2.0 * a);
  return {K, K * (1.0 - sum), modulus};
}

inline double complete_K(const Modulus& modulus) {
  return complete_integrals(modulus).K;
}

/// Rejects k < 0 and k within 1e-12 of 1.
inline double complete_K(double k) { return complete_K(Modulus::from_k(k)); }

inline double complete_E(const Modulus& modulus) {
  return complete_integrals(modulus).E;
}

/// E is finite on the closed interval, so k up to and including 1 is accepted.
inline double complete_E(double k) {
  if (!(k >= 0.0) || !(k <= 1.0)) {
    throw DomainError("complete_E: k must satisfy 0 <= k <= 1, got " +
                      std::to_string(k));
  }
  if (k == 1.0) return 1.0;
  return complete_E(Modulus(k, std::sqrt((1.0 - k) * (1.0 + k))));
}

/// (sn, cn, dn)(u, k).
///
/// The argument is first reduced modulo 4K. The reduced value is then pushed
/// through the descending Landen (Gauss) transformation in Bulirsch's form
/// until the transformed modulus is below 1e-8, evaluated in circular form,
/// and carried back up. dn comes out of the back-substitution directly, so it
/// keeps relative accuracy even when it is as small as k'.
inline EllipticTriple jacobi_snk(double u, const Modulus& modulus) {
  if (!std::isfinite(u)) {
    throw DomainError("jacobi_snk: argument must be finite");
  }
  const double kc = modulus.complementary();
  if (modulus.k() == 0.0) {
    return {std::sin(u), std::cos(u), 1.0, u, modulus};
  }
  const double period = 4.0 * complete_K(modulus);
  const double x = u - period * std::round(u / period);

  std::array<double, detail::kMaxAgmIterations> upper{};
  std::array<double, detail::kMaxAgmIterations> lower{};
  int levels = 0;
  double a = 1.0;
  double b = kc;
  double mean = 0.5 * (a + b);
  while (levels < detail::kMaxAgmIterations) {
    upper[levels] = a;
    lower[levels] = b;
    ++levels;
    mean = 0.5 * (a + b);
    if ((a - b) / (a + b) < detail::kReducedModulusStop) break;
    b = std::sqrt(a * b);
    a = mean;
  }

  const double phase = x * mean;
  double sn = std::sin(phase);
  double cn = std::cos(phase);
  double dn = 1.0;
  if (sn != 0.0) {
    double ratio = cn / sn;
    double c = mean * ratio;
    while (levels-- > 0) {
      const double top = upper[levels];
      ratio *= c;
      c *= dn;
      dn = (lower[levels] + ratio) / (top + ratio);
      ratio = c / top;
    }
    const double s = 1.0 / std::sqrt(c * c + 1.0);
    sn = std::signbit(sn) ? -s : s;
    cn = c * sn;
  }
  return {sn, cn, dn, u, modulus};
}

inline EllipticTriple jacobi_snk(double u, double k) {
  return jacobi_snk(u, Modulus::from_k(k));
}

}  // namespace ssps
