#pragma once

// Regularized point-source profile and the dilation profile derived from it.
// The profile is logistic: delta_a(r) = (beta/a) e^{-r} / (1 + e^{-r})^2 with
// r measured in units of the regularization radius a. Derivatives are closed
// form throughout; the downstream operators square the gradient, which makes
// finite-difference derivatives too noisy to use here.

#include <cmath>
#include <stdexcept>

namespace gwig {

enum class DerivOrder { value, first, second };

// Below this radius everything is evaluated at r = 0; avoids 0/0 in 1/r
// compositions downstream.
inline constexpr double kTinyRadius = 1e-12;

class RegularizedDelta {
 public:
  RegularizedDelta(double a, double beta = 10.0) : a_(a), beta_(beta) {
    if (!(a > 0.0)) throw std::domain_error("RegularizedDelta: a must be > 0");
    if (!(beta > 0.0)) throw std::domain_error("RegularizedDelta: beta must be > 0");
  }

  double a() const { return a_; }
  double beta() const { return beta_; }

  double eval(double r_breve, DerivOrder order = DerivOrder::value) const {
    if (!(r_breve >= 0.0))
      throw std::domain_error("RegularizedDelta::eval: r must be >= 0");
    if (r_breve < kTinyRadius) r_breve = 0.0;
    const double u = std::exp(-r_breve);
    const double denom = 1.0 + u;
    const double logistic = 1.0 / denom;         // L
    const double lp = u / (denom * denom);       // L'
    const double scale = beta_ / a_;
    switch (order) {
      case DerivOrder::value:
        return scale * lp;
      case DerivOrder::first:
        // L'' = L' (1 - 2L), with 1 - 2L = (u - 1)/(u + 1)
        return scale * lp * ((u - 1.0) / denom);
      case DerivOrder::second:
        // L''' = L' (1 - 6L + 6L^2) = L' (1 - 6 L u / (1 + u))
        return scale * lp * (1.0 - 6.0 * logistic * u / denom);
    }
    throw std::logic_error("RegularizedDelta::eval: bad order");
  }

  double operator()(double r_breve) const { return eval(r_breve); }

 private:
  double a_;
  double beta_;
};

/// kappa_a(r) = 1 - e^{-w delta_a(r)}: a regularized indicator of the core,
/// decreasing from just under 1 at the origin to 0 in the far field.
class KappaProfile {
 public:
  KappaProfile(RegularizedDelta delta, double w) : delta_(delta), w_(w) {}

  const RegularizedDelta& delta() const { return delta_; }
  double w() const { return w_; }

  /// lambda(r) and its radial derivatives; the dilation function is the
  /// delta profile itself, independent of w.
  double lambda(double r_breve, DerivOrder order = DerivOrder::value) const {
    return delta_.eval(r_breve, order);
  }

  double eval(double r_breve, DerivOrder order = DerivOrder::value) const {
    const double d0 = delta_.eval(r_breve, DerivOrder::value);
    switch (order) {
      case DerivOrder::value:
        return -std::expm1(-w_ * d0);
      case DerivOrder::first: {
        const double d1 = delta_.eval(r_breve, DerivOrder::first);
        return w_ * d1 * std::exp(-w_ * d0);
      }
      case DerivOrder::second: {
        const double d1 = delta_.eval(r_breve, DerivOrder::first);
        const double d2 = delta_.eval(r_breve, DerivOrder::second);
        return w_ * std::exp(-w_ * d0) * (d2 - w_ * d1 * d1);
      }
    }
    throw std::logic_error("KappaProfile::eval: bad order");
  }

  double operator()(double r_breve) const { return eval(r_breve); }

  /// First radius where the profile drops below the threshold, by bisection
  /// on the monotone decay. threshold must lie in (0, 1).
  double support_radius(double threshold) const {
    if (!(threshold > 0.0 && threshold < 1.0))
      throw std::domain_error("support_radius: threshold must be in (0, 1)");
    if (eval(0.0) <= threshold) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (eval(hi) > threshold) {
      hi *= 2.0;
      if (hi > 1e9) throw std::runtime_error("support_radius: no crossing found");
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (eval(mid) > threshold ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  RegularizedDelta delta_;
  double w_;
};

}  // namespace gwig
