#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ssps/errors.hpp"

namespace ssps {

enum class NonlinearityKind {
  SineR,      ///< r sin x on (-pi, pi)
  ExpM1R,     ///< r (e^x - 1) on the real line; not odd
  SinhGamma,  ///< gamma sinh w on the real line (shifted exp model)
  LinearUnit  ///< x on the real line
};

/// Feedback function f of the delay equation together with its open domain D.
class Nonlinearity {
 public:
  static Nonlinearity sine(double r) {
    return {NonlinearityKind::SineR, positive(r, "r"), -std::numbers::pi,
            std::numbers::pi};
  }
  static Nonlinearity exp_m1(double r) {
    return {NonlinearityKind::ExpM1R, positive(r, "r"), -kInf, kInf};
  }
  static Nonlinearity sinh_gamma(double gamma) {
    return {NonlinearityKind::SinhGamma, positive(gamma, "gamma"), -kInf, kInf};
  }
  static Nonlinearity linear_unit() {
    return {NonlinearityKind::LinearUnit, 1.0, -kInf, kInf};
  }

  NonlinearityKind kind() const { return kind_; }
  /// r for SineR / ExpM1R, gamma for SinhGamma, 1 for LinearUnit.
  double strength() const { return strength_; }
  double domain_lower() const { return lower_; }
  double domain_upper() const { return upper_; }
  bool contains(double x) const { return x > lower_ && x < upper_; }

  /// Odd and sign-matching (x f(x) > 0) on D. Only ExpM1R fails it.
  bool is_odd() const { return kind_ != NonlinearityKind::ExpM1R; }

  double operator()(double x) const {
    require(x);
    switch (kind_) {
      case NonlinearityKind::SineR:
        return strength_ * std::sin(x);
      case NonlinearityKind::ExpM1R:
        return strength_ * std::expm1(x);
      case NonlinearityKind::SinhGamma:
        return strength_ * std::sinh(x);
      case NonlinearityKind::LinearUnit:
        return x;
    }
    return 0.0;
  }

  double derivative(double x) const {
    require(x);
    switch (kind_) {
      case NonlinearityKind::SineR:
        return strength_ * std::cos(x);
      case NonlinearityKind::ExpM1R:
        return strength_ * std::exp(x);
      case NonlinearityKind::SinhGamma:
        return strength_ * std::cosh(x);
      case NonlinearityKind::LinearUnit:
        return 1.0;
    }
    return 0.0;
  }

  double slope_at_zero() const { return derivative(0.0); }

  /// F(x) = integral of f from 0 to x.
  double potential(double x) const {
    require(x);
    switch (kind_) {
      case NonlinearityKind::SineR: {
        const double s = std::sin(0.5 * x);
        return 2.0 * strength_ * s * s;
      }
      case NonlinearityKind::ExpM1R:
        return strength_ * (std::expm1(x) - x);
      case NonlinearityKind::SinhGamma: {
        const double s = std::sinh(0.5 * x);
        return 2.0 * strength_ * s * s;
      }
      case NonlinearityKind::LinearUnit:
        return 0.5 * x * x;
    }
    return 0.0;
  }

  /// F(a) - F(x) in product form; `gap` must equal a - x and is passed
  /// separately so callers that know it exactly avoid the subtraction.
  double potential_drop(double a, double x, double gap) const {
    require(a);
    require(x);
    switch (kind_) {
      case NonlinearityKind::SineR:
        return 2.0 * strength_ * std::sin(0.5 * (a + x)) * std::sin(0.5 * gap);
      case NonlinearityKind::ExpM1R:
        return strength_ * (std::expm1(a) - std::expm1(x) - gap);
      case NonlinearityKind::SinhGamma:
        return 2.0 * strength_ * std::sinh(0.5 * (a + x)) *
               std::sinh(0.5 * gap);
      case NonlinearityKind::LinearUnit:
        return 0.5 * (a + x) * gap;
    }
    return 0.0;
  }

  double potential_drop(double a, double x) const {
    return potential_drop(a, x, a - x);
  }

  std::string name() const {
    switch (kind_) {
      case NonlinearityKind::SineR:
        return "sine(r=" + std::to_string(strength_) + ")";
      case NonlinearityKind::ExpM1R:
        return "expm1(r=" + std::to_string(strength_) + ")";
      case NonlinearityKind::SinhGamma:
        return "sinh(gamma=" + std::to_string(strength_) + ")";
      case NonlinearityKind::LinearUnit:
        return "linear";
    }
    return "?";
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  Nonlinearity(NonlinearityKind kind, double strength, double lower,
               double upper)
      : kind_(kind), strength_(strength), lower_(lower), upper_(upper) {}

  static double positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw DomainError(std::string("nonlinearity parameter ") + what +
                        " must be positive and finite");
    }
    return value;
  }

  void require(double x) const {
    if (!contains(x)) {
      throw DomainError("argument " + std::to_string(x) +
                        " outside the domain of " + name());
    }
  }

  NonlinearityKind kind_;
  double strength_;
  double lower_;
  double upper_;
};

}  // namespace ssps
