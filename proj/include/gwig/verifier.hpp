#pragma once

// Independent verification machinery: a brute-force banded elliptic solver,
// charge quadrature, Richardson-style convergence-order estimation, and the
// randomized property suites that make the solution theorems executable.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gwig/closed_forms.hpp"
#include "gwig/delta_fields.hpp"
#include "gwig/grids.hpp"
#include "gwig/linalg.hpp"
#include "gwig/operators.hpp"
#include "gwig/weyl_core.hpp"

namespace gwig {

// ---------------------------------------------------------------------------
// Deterministic RNG (bit-stable across runs for a fixed seed)
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    const double x = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + x * (hi - lo);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

 private:
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Convergence-order estimation
// ---------------------------------------------------------------------------

struct ConvergenceStudy {
  std::vector<std::size_t> grid_sizes;
  Vec residual_norms;
  Vec spacings;
  double fitted_order = 0.0;
  bool trivially_small = false;
};

inline double least_squares_slope(const Vec& xs, const Vec& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Runs `residual_at(N) -> (max-norm, h)` over the given grid sizes and fits
/// the order as the least-squares slope of log(residual) against log(h).
/// Grids must refine by at least 2x in h from one entry to the next.
inline ConvergenceStudy convergence_order(
    const std::function<std::pair<double, double>(std::size_t)>& residual_at,
    const std::vector<std::size_t>& grids) {
  if (grids.size() < 3)
    throw std::invalid_argument("convergence_order: need at least 3 grids");
  ConvergenceStudy s;
  for (std::size_t n : grids) {
    auto [norm, h] = residual_at(n);
    s.grid_sizes.push_back(n);
    s.residual_norms.push_back(norm);
    s.spacings.push_back(h);
  }
  for (std::size_t i = 1; i < s.grid_sizes.size(); ++i) {
    if (s.grid_sizes[i] <= s.grid_sizes[i - 1])
      throw std::invalid_argument("convergence_order: grid sizes must increase");
    if (s.spacings[i - 1] / s.spacings[i] < 2.0 - 1e-9)
      throw std::invalid_argument("convergence_order: need >= 2x refinement per level");
  }
  if (s.residual_norms[0] < 1e-14) {
    s.trivially_small = true;
    s.fitted_order = std::numeric_limits<double>::infinity();
    return s;
  }
  Vec lx, ly;
  for (std::size_t i = 0; i < s.grid_sizes.size(); ++i) {
    lx.push_back(std::log(s.spacings[i]));
    ly.push_back(std::log(std::max(s.residual_norms[i], 1e-300)));
  }
  s.fitted_order = least_squares_slope(lx, ly);
  return s;
}

// ---------------------------------------------------------------------------
// Brute-force elliptic solve
// ---------------------------------------------------------------------------

/// Direct banded (tridiagonal) solve of the modified-Laplacian equation with
/// the dark-field source on a radial [0, R] grid:
///
///   rows:   second-order discretization of the modified Laplacian, with the
///           regularity stencil at r = 0 and a Dirichlet row at r = R;
///   rhs:    the same stencil applied to kappa_tilde * phi_d, plus the unit
///           particle charge at the origin.
///
/// The point charge enters as the exact discrete image of a sampled 1/r
/// under the plain radial stencil (a single -1/h^3 spike at the first
/// interior row), scaled by e^{-w lambda(0)}. With lambda == 0 and
/// point_charge = 1 the solve reproduces sampled 1/r to rounding, which is
/// the solver's own calibration case.
inline Vec brute_force_elliptic_solve(const RadialGrid& g, const OperatorCoefficients& c,
                                      double phi_d, double bc_outer,
                                      double point_charge = 1.0) {
  if (!g.has_origin())
    throw std::invalid_argument("brute_force_elliptic_solve: grid must start at r = 0");
  c.require_size(g.n);
  const std::size_t n = g.n;
  const double h = g.h;
  const double h2 = h * h;

  Vec sub(n, 0.0), dia(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
  Vec zero_order(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double gl = c.grad_lambda[i];
    zero_order[i] = c.w * (c.laplace_lambda[i] + c.w * gl * gl);
  }

  const Vec kt = c.kappa_tilde();
  Vec k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = kt[i] * phi_d;

  dia[0] = -6.0 / h2 + zero_order[0];
  sup[0] = 6.0 / h2;
  rhs[0] = 6.0 * (k[1] - k[0]) / h2 + zero_order[0] * k[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double b = 2.0 / g.r(i) + 2.0 * c.w * c.grad_lambda[i];
    sub[i] = 1.0 / h2 - b / (2.0 * h);
    dia[i] = -2.0 / h2 + zero_order[i];
    sup[i] = 1.0 / h2 + b / (2.0 * h);
    rhs[i] = sub[i] * k[i - 1] + dia[i] * k[i] + sup[i] * k[i + 1];
  }
  rhs[1] -= point_charge * std::exp(-c.w * c.lambda[0]) / (h2 * h);
  dia[n - 1] = 1.0;
  rhs[n - 1] = bc_outer;

  // Thomas elimination with a pivot-magnitude diagnostic.
  Vec cp(n), dp(n);
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_pivot = 0.0;
  double piv = dia[0];
  min_pivot = std::min(min_pivot, std::fabs(piv));
  max_pivot = std::max(max_pivot, std::fabs(piv));
  if (piv == 0.0) throw std::runtime_error("brute_force_elliptic_solve: zero pivot at row 0");
  cp[0] = sup[0] / piv;
  dp[0] = rhs[0] / piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = dia[i] - sub[i] * cp[i - 1];
    min_pivot = std::min(min_pivot, std::fabs(piv));
    max_pivot = std::max(max_pivot, std::fabs(piv));
    if (std::fabs(piv) < 1e-14 * max_pivot) {
      std::ostringstream os;
      os << "brute_force_elliptic_solve: near-singular system at row " << i
         << " (pivot ratio " << std::fabs(piv) / max_pivot << ")";
      throw std::runtime_error(os.str());
    }
    cp[i] = (i + 1 < n) ? sup[i] / piv : 0.0;
    dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / piv;
  }
  Vec u(n);
  u[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) u[i] = dp[i] - cp[i] * u[i + 1];
  return u;
}

// ---------------------------------------------------------------------------
// Total charge quadrature
// ---------------------------------------------------------------------------

enum class Quadrature { adaptive, fixed };

namespace detail {

inline double charge_integrand(double r, const ParticleModel& m) {
  if (r <= 0.0) return 0.0;
  return 3.0 * particle_charge_density(r, m) * r * r;
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  if (depth > 60) throw std::runtime_error("total_charge: quadrature did not converge");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// 3 * integral of rho(r) r^2 dr over [0, R_cut], with R_cut chosen so the
/// exponential tail is negligible. Returns the signed value; the magnitude is
/// the recovered charge in units of Q.
inline double total_charge(const ParticleModel& m, Quadrature q = Quadrature::adaptive,
                           std::size_t fixed_intervals = (1u << 18)) {
  double r_cut = 50.0;
  while (std::fabs(detail::charge_integrand(r_cut, m)) > 1e-16 && r_cut < 1e4)
    r_cut *= 2.0;

  auto f = [&m](double r) { return detail::charge_integrand(r, m); };
  if (q == Quadrature::adaptive) {
    const double a = 0.0, b = r_cut;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, 1e-12, 0);
  }
  // composite Simpson
  std::size_t n = fixed_intervals;
  if (n % 2 == 1) ++n;
  const double h = r_cut / static_cast<double>(n);
  double s = f(0.0) + f(r_cut);
  for (std::size_t i = 1; i < n; ++i) s += f(static_cast<double>(i) * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// ---------------------------------------------------------------------------
// Verification report
// ---------------------------------------------------------------------------

struct VerificationCheck {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string notes;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  bool overall() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  /// pass iff measured <= tolerance
  void add_max(const std::string& name, double measured, double tol,
               const std::string& notes = "") {
    checks.push_back({name, measured, tol, measured <= tol, notes});
  }

  /// pass iff measured >= tolerance (order thresholds)
  void add_min(const std::string& name, double measured, double tol,
               const std::string& notes = "") {
    checks.push_back({name, measured, tol, measured >= tol, notes});
  }

  void add_flag(const std::string& name, bool ok, double measured, double tol,
                const std::string& notes = "") {
    checks.push_back({name, measured, tol, ok, notes});
  }
};

// ---------------------------------------------------------------------------
// Reusable randomized trial kernels (shared by the suites and the acceptance
// harness)
// ---------------------------------------------------------------------------

/// Max round-trip error of forward/inverse transforms over randomized trials.
/// inverse(forward(v)) divides by 1 - K_j, so its trials keep kappa and the
/// weights inside the range where that factor stays above ~3e-3; the
/// forward(inverse(x)) direction is well conditioned and is sampled over the
/// full kappa range.
inline double roundtrip_trials_error(Rng& rng, std::size_t trials) {
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = 2 + rng.index(5);
    Vec v(d), vd(d);
    for (auto& x : v) x = rng.uniform(-5.0, 5.0);
    for (auto& x : vd) x = rng.uniform(-5.0, 5.0);

    {
      const double kap = rng.uniform(0.0, 0.99);
      Vec w(d);
      for (auto& x : w) x = rng.uniform(0.25, 1.25);
      const AffineKappaTensor K = kappa_tensor(kap, w, vd);
      const Vec back = inverse_transform(forward_transform(v, K), K);
      for (std::size_t j = 0; j < d; ++j)
        worst = std::max(worst,
                         std::fabs(back[j] - v[j]) / std::max(1.0, std::fabs(v[j])));
    }
    {
      // stay clear of the stored-K == 1 collapse: (1-kappa)^w >= ~3e-14 here
      const double kap = rng.uniform(0.0, 1.0 - 1e-9);
      Vec w(d);
      for (auto& x : w) x = rng.uniform(0.2, 1.5);
      const AffineKappaTensor K = kappa_tensor(kap, w, vd);
      const Vec back = forward_transform(inverse_transform(v, K), K);
      for (std::size_t j = 0; j < d; ++j)
        worst = std::max(worst,
                         std::fabs(back[j] - v[j]) / std::max(1.0, std::fabs(v[j])));
    }
  }
  return worst;
}

enum class MetricTrialMode { equal_weights, diagonal_g, generic };

inline Mat random_symmetric(Rng& rng, std::size_t d, bool diagonal) {
  Mat g(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      if (diagonal && i != j) continue;
      const double v = rng.uniform(-2.0, 2.0);
      g(i, j) = v;
      g(j, i) = v;
    }
    g(i, i) += (g(i, i) < 0.0 ? -3.0 : 3.0);  // keep well away from singular
  }
  return g;
}

/// Corollary trials: with equal weights or diagonal g the induced map must be
/// (g, 0). Returns the max deviation.
inline double induced_metric_identity_error(Rng& rng, std::size_t trials,
                                            MetricTrialMode mode) {
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = 2 + rng.index(3);
    const Mat g = random_symmetric(rng, d, mode == MetricTrialMode::diagonal_g);
    const double kap = rng.uniform(0.0, 0.99);
    Vec w(d), vd(d);
    const double w_shared = rng.uniform(0.2, 3.0);
    for (auto& x : w) x = (mode == MetricTrialMode::equal_weights) ? w_shared
                                                                   : rng.uniform(0.2, 3.0);
    for (auto& x : vd) x = rng.uniform(-3.0, 3.0);
    const AffineMap h = induced_metric(g, kap, w, vd);
    double scale = 1.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::fabs(g(i, j)));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j)
        worst = std::max(worst, std::fabs(h.linear(i, j) - g(i, j)) / scale);
      worst = std::max(worst, std::fabs(h.offset[i]) / scale);
    }
  }
  return worst;
}

/// Commuting-diagram trials: h(forward_v(v)) == forward_alpha(g(v)).
inline double commutation_trials_error(Rng& rng, std::size_t trials) {
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = 2 + rng.index(3);
    const Mat g = random_symmetric(rng, d, false);
    const double kap = rng.uniform(0.0, 0.99);
    Vec w(d), v(d), vd(d);
    for (auto& x : w) x = rng.uniform(0.2, 3.0);
    for (auto& x : v) x = rng.uniform(-3.0, 3.0);
    for (auto& x : vd) x = rng.uniform(-3.0, 3.0);

    const AffineMap h = induced_metric(g, kap, w, vd);
    const AffineKappaTensor Kv = kappa_tensor(kap, w, vd);
    const AffineKappaTensor Ka = kappa_tensor(kap, w, g.apply(vd));
    const Vec lhs = h.apply(forward_transform(v, Kv));
    const Vec rhs = forward_transform(g.apply(v), Ka);
    double scale = 1.0;
    for (double x : rhs) scale = std::max(scale, std::fabs(x));
    for (std::size_t j = 0; j < d; ++j)
      worst = std::max(worst, std::fabs(lhs[j] - rhs[j]) / scale);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Manufactured-solution studies (shared setups)
// ---------------------------------------------------------------------------

namespace detail {

struct FourierField {
  Vec amp, freq, phase;

  static FourierField random(Rng& rng, std::size_t terms, double amp_lo, double amp_hi) {
    FourierField f;
    for (std::size_t k = 0; k < terms; ++k) {
      f.amp.push_back(rng.uniform(amp_lo, amp_hi));
      f.freq.push_back(rng.uniform(0.1, 2.0));
      f.phase.push_back(rng.uniform(0.0, 6.28));
    }
    return f;
  }

  double value(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k)
      s += amp[k] * std::sin(freq[k] * x + phase[k]);
    return s;
  }

  double d1(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k)
      s += amp[k] * freq[k] * std::cos(freq[k] * x + phase[k]);
    return s;
  }

  double d2(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k)
      s -= amp[k] * freq[k] * freq[k] * std::sin(freq[k] * x + phase[k]);
    return s;
  }
};

inline Vec gaussian_bump(const SpacetimeGrid1p1& g, double height, double center,
                         double width) {
  Vec lam(g.nx);
  for (std::size_t ix = 0; ix < g.nx; ++ix) {
    const double s = (g.x(ix) - center) / width;
    lam[ix] = height * std::exp(-s * s);
  }
  return lam;
}

}  // namespace detail

/// Conjugation-identity error || modlap(u) - e^{-w lam} lap(e^{w lam} u) ||_inf
/// for a random smooth u on [0.5, 10] with the particle dilation profile.
/// The operator under test is injectable so a broken stencil can be shown to
/// fail the same check.
inline std::pair<double, double> conjugation_identity_error(
    std::size_t n, const detail::FourierField& u_field, const KappaProfile& prof,
    const std::function<Vec(const Vec&, const RadialGrid&, const OperatorCoefficients&)>&
        op = {}) {
  RadialGrid g(n, 0.5, 10.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, prof, {1.0});
  Vec u(g.n);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = u_field.value(g.r(i));
  const Vec direct = op ? op(u, g, c) : modified_laplacian_apply(u, g, c);
  const Vec conj = conjugated_laplacian_apply(u, g, c);
  return {max_abs_diff(direct, conj), g.h};
}

/// Manufactured wave setup: traveling wave f(x - t) blended through a
/// stationary Gaussian dilation bump (height 0 gives the classical
/// d'Alembert case); returns (residual max-norm, dx).
inline std::pair<double, double> wave_manufactured_residual_with_bump(std::size_t nx,
                                                                      WaveForm form,
                                                                      double bump_height) {
  const std::size_t nt = (nx - 1) / 2 + 1;  // dt = dx/2 for T = X/4
  SpacetimeGrid1p1 g(nt, nx, 1.0, 4.0);
  const Vec lam = detail::gaussian_bump(g, bump_height, 2.0, 0.6);
  const SpacetimeCoefficients c =
      SpacetimeCoefficients::stationary(g, lam, {2.0, 2.0, 1.5, 1.0}, {1.0, 1.0});
  const double phi_d_value = 0.7;
  const std::size_t mu = 0;
  Vec phi_hat(g.size()), phi_d(g.size(), phi_d_value);
  for (std::size_t it = 0; it < g.nt; ++it)
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const double K = -std::expm1(-c.w[mu] * lam[ix]);
      const double phi = std::sin(2.0 * (g.x(ix) - g.t(it)));
      phi_hat[g.idx(it, ix)] = (1.0 - K) * phi + K * phi_d_value;
    }
  const Vec res = wave_residual(g, phi_hat, phi_d, c, mu, form);
  return {max_abs(res), g.dx};
}

inline std::pair<double, double> wave_manufactured_residual(std::size_t nx, WaveForm form) {
  return wave_manufactured_residual_with_bump(nx, form, 0.8);
}

/// Manufactured conservation setup: Lorenz-gauge plane wave (A0, A1) =
/// (f, -f)(x - t) blended componentwise; returns (residual max-norm, dx).
inline std::pair<double, double> conservation_manufactured_residual(std::size_t nx) {
  const std::size_t nt = (nx - 1) / 2 + 1;
  SpacetimeGrid1p1 g(nt, nx, 1.0, 4.0);
  const Vec lam = detail::gaussian_bump(g, 0.8, 2.0, 0.6);
  const SpacetimeCoefficients c =
      SpacetimeCoefficients::stationary(g, lam, {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
  const std::array<double, 4> Ad_val = {0.4, -0.3, 0.0, 0.0};
  std::array<Vec, 4> A_hat, A_d;
  for (int mu = 0; mu < 4; ++mu) {
    A_hat[mu].assign(g.size(), 0.0);
    A_d[mu].assign(g.size(), Ad_val[static_cast<std::size_t>(mu)]);
  }
  for (std::size_t it = 0; it < g.nt; ++it)
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const std::size_t k = g.idx(it, ix);
      const double f = std::sin(2.0 * (g.x(ix) - g.t(it)));
      const double K0 = -std::expm1(-c.w[0] * lam[ix]);
      const double K1 = -std::expm1(-c.w[1] * lam[ix]);
      A_hat[0][k] = (1.0 - K0) * f + K0 * Ad_val[0];
      A_hat[1][k] = (1.0 - K1) * (-f) + K1 * Ad_val[1];
    }
  const Vec res = conservation_residual(g, A_hat, A_d, c);
  return {max_abs(res), g.dx};
}

/// Manufactured Coulomb-gauge setup: divergence-free radial field 1/r^2 on
/// [1, 12]; returns (residual max-norm, h).
inline std::pair<double, double> coulomb_manufactured_residual(std::size_t n) {
  RadialGrid g(n, 1.0, 12.0);
  const KappaProfile prof(RegularizedDelta(1.0, 10.0), 2.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, prof, {1.0});
  const double Ad_val = 0.6;
  Vec A_hat(g.n), A_d(g.n, Ad_val);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double r = g.r(i);
    const double K = -std::expm1(-c.w * c.lambda[i]);
    A_hat[i] = (1.0 - K) / (r * r) + K * Ad_val;
  }
  const Vec res = coulomb_gauge_residual(A_hat, A_d, g, c);
  return {max_abs(res), g.h};
}

/// Manufactured stationary-component setup: harmonic 1/r blended on [0.5, 10];
/// returns (residual max-norm, h).
inline std::pair<double, double> appendix_laplace_manufactured_residual(std::size_t n) {
  RadialGrid g(n, 0.5, 10.0);
  const KappaProfile prof(RegularizedDelta(1.0, 10.0), 2.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, prof, {1.0});
  const double phi_d_value = 0.7;
  Vec phi_hat(g.n), phi_d(g.n, phi_d_value);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double K = -std::expm1(-c.w * c.lambda[i]);
    phi_hat[i] = (1.0 - K) / g.r(i) + K * phi_d_value;
  }
  const Vec res = appendix_laplace_residual(phi_hat, phi_d, g, c);
  return {max_abs(res), g.h};
}

/// Residual of the closed-form particle potential under the discrete modified
/// Laplacian on [0.5, 10]; returns (residual max-norm, h).
inline std::pair<double, double> particle_pde_residual(std::size_t n,
                                                       const ParticleModel& m) {
  RadialGrid g(n, 0.5, 10.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, m.profile(), {1.0});
  Vec u(g.n);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = particle_potential(g.r(i), m);
  const Vec lhs = modified_laplacian_apply(u, g, c);
  const Vec rhs = modified_rhs_assemble(m.phi_d_over_phi_a, g, c);
  return {max_abs_diff(lhs, rhs), g.h};
}

// ---------------------------------------------------------------------------
// Coarse 3D Cartesian stencil smoke check
// ---------------------------------------------------------------------------

/// Applies the Cartesian modified Laplacian to the sampled particle potential
/// on an n^3 box and returns the max residual against the assembled source on
/// the shell 2 <= r <= 6 (away from the core peak and the box boundary).
inline double cartesian_stencil_smoke(const ParticleModel& m, std::size_t n = 64,
                                      double half_width = 8.0) {
  const double h = 2.0 * half_width / static_cast<double>(n - 1);
  const KappaProfile prof = m.profile();
  const std::size_t nn = n * n * n;
  Vec phi(nn), src(nn), s_over_r(nn), zero_order(nn), radius(nn);
  auto id = [n](std::size_t i, std::size_t j, std::size_t k) {
    return (i * n + j) * n + k;
  };
  auto coord = [half_width, h](std::size_t i) {
    return -half_width + static_cast<double>(i) * h;
  };
  const double w = m.w;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double x = coord(i), y = coord(j), z = coord(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        const std::size_t q = id(i, j, k);
        radius[q] = r;
        phi[q] = particle_potential(r, m);
        src[q] = prof.eval(r) * m.phi_d_over_phi_a;
        const double lp = prof.lambda(r, DerivOrder::first);
        const double lpp = prof.lambda(r, DerivOrder::second);
        s_over_r[q] = (r > 0.0) ? lp / r : 0.0;
        const double laplam = (r > 0.0) ? lpp + 2.0 / r * lp : 3.0 * lpp;
        zero_order[q] = w * (laplam + w * lp * lp);
      }

  auto apply_at = [&](const Vec& f, std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t q = id(i, j, k);
    const double lap =
        (f[id(i + 1, j, k)] + f[id(i - 1, j, k)] + f[id(i, j + 1, k)] +
         f[id(i, j - 1, k)] + f[id(i, j, k + 1)] + f[id(i, j, k - 1)] - 6.0 * f[q]) /
        (h * h);
    const double gx = (f[id(i + 1, j, k)] - f[id(i - 1, j, k)]) / (2.0 * h);
    const double gy = (f[id(i, j + 1, k)] - f[id(i, j - 1, k)]) / (2.0 * h);
    const double gz = (f[id(i, j, k + 1)] - f[id(i, j, k - 1)]) / (2.0 * h);
    const double x = coord(i), y = coord(j), z = coord(k);
    const double conv = 2.0 * w * s_over_r[q] * (x * gx + y * gy + z * gz);
    return lap + conv + zero_order[q] * f[q];
  };

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i)
    for (std::size_t j = 1; j + 1 < n; ++j)
      for (std::size_t k = 1; k + 1 < n; ++k) {
        const std::size_t q = id(i, j, k);
        if (radius[q] < 2.0 || radius[q] > 6.0) continue;
        worst = std::max(worst, std::fabs(apply_at(phi, i, j, k) - apply_at(src, i, j, k)));
      }
  return worst;
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

/// Executes the full invariant catalog of the algebra, profile, operator, and
/// closed-form layers with the given randomization seed. Failures are report
/// entries, never exceptions; the run is deterministic for a fixed seed.
inline VerificationReport run_property_suites(std::uint64_t seed) {
  VerificationReport rep;
  Rng rng(seed);

  // ---- core algebra ----
  {
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const double kap = rng.uniform(0.0, 1.0 - 1e-9);
      const double lam = kappa_lambda_roundtrip(kap, KappaLambdaDirection::kappa_to_lambda);
      const double back = kappa_lambda_roundtrip(lam, KappaLambdaDirection::lambda_to_kappa);
      worst = std::max(worst, std::fabs(back - kap) / std::max(kap, 1e-30));
    }
    rep.add_max("core.kappa_lambda_roundtrip", worst, 1e-14);
  }
  rep.add_max("core.affine_roundtrip", roundtrip_trials_error(rng, 1000), 1e-12);
  rep.add_max("core.induced_metric_equal_weights",
              induced_metric_identity_error(rng, 1000, MetricTrialMode::equal_weights),
              1e-12);
  rep.add_max("core.induced_metric_diagonal_g",
              induced_metric_identity_error(rng, 1000, MetricTrialMode::diagonal_g), 1e-12);
  rep.add_max("core.commuting_diagram", commutation_trials_error(rng, 1000), 1e-12);
  {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t d = 2 + rng.index(3);
      const Mat g = random_symmetric(rng, d, false);
      const double kap = rng.uniform(0.0, 0.99);
      Vec z(d);
      for (auto& x : z) x = rng.uniform(0.2, 3.0);
      const MetricRep rep2 = metric_representations(g, kap, z);
      const double lam = -std::log1p(-kap);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const double expect =
              std::exp(z[i] * lam) * rep2.g_hat_W(i, j) * std::exp(z[j] * lam);
          worst = std::max(worst, std::fabs(rep2.g_hat_R(i, j) - expect) /
                                      std::max(1.0, std::fabs(expect)));
        }
    }
    rep.add_max("core.metric_representation_consistency", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const double kap = rng.uniform(0.0, 1.0 - 1e-9);
      const double wj = rng.uniform(0.1, 4.0);
      const double lam = -std::log1p(-kap);
      const AffineKappaTensor K = kappa_tensor(kap, {wj}, {0.0});
      worst = std::max(worst, std::fabs((1.0 - K.entries[0]) - std::exp(-wj * lam)));
    }
    rep.add_max("core.weight_collapse_identity", worst, 1e-14);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      const std::size_t d = 1 + rng.index(6);
      const double kap = rng.uniform(0.0, 1.0 - 1e-9);
      Vec z(d);
      for (auto& x : z) x = rng.uniform(-2.0, 3.0);
      const Vec chi = dilation_tensor(kap, z);
      double det = 1.0;
      for (double x : chi) det *= x;
      const double sigma = dilation_density(kap, z);
      worst = std::max(worst, std::fabs(sigma * sigma * std::fabs(det) - 1.0));
    }
    rep.add_max("core.dilation_density_identity", worst, 1e-12);
  }
  {
    bool monotone = true;
    const Vec w = {0.5, 1.0, 2.0};
    Vec prev(w.size(), -1.0);
    for (int s = 0; s <= 999; ++s) {
      const double kap = 0.999 * static_cast<double>(s) / 999.0;
      const AffineKappaTensor K = kappa_tensor(kap, w, {0.0, 0.0, 0.0});
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (s > 0 && K.entries[j] <= prev[j]) monotone = false;
        prev[j] = K.entries[j];
      }
    }
    rep.add_flag("core.kappa_tensor_monotone", monotone, monotone ? 1.0 : 0.0, 1.0);
  }
  {
    // observer limits at kappa -> 1
    const double kap = 1.0 - 1e-12;
    const Vec z = {1.0, 2.0};
    const Vec w = {1.0, 1.0};
    const Vec alpha_d = {0.7, -1.3}, v_d = {2.0, 0.5};
    const AffineKappaTensor Kv = kappa_tensor(kap, w, v_d);
    const AffineKappaTensor Ka = kappa_tensor(kap, w, alpha_d);
    const Vec v_hat = forward_transform({5.0, -4.0}, Kv);
    const Vec a_hat = forward_transform({-2.0, 3.0}, Ka);
    const double rR = observer_pairing(a_hat, v_hat, kap, z, Observer::R);
    const double rW = observer_pairing(a_hat, v_hat, kap, z, Observer::W);
    const double limitR = alpha_d[0] * v_d[0] + alpha_d[1] * v_d[1];
    rep.add_max("core.observer_limit_R", std::fabs(rR - limitR), 1e-9);
    rep.add_max("core.observer_limit_W", std::fabs(rW), 1e-9);
  }

  // ---- profile layer ----
  const RegularizedDelta delta_unit(1.0, 10.0);
  const KappaProfile prof_unit(delta_unit, 2.0);
  {
    // centered differences of an independent extended-precision evaluation;
    // plain double FD at h = 1e-5 would drown the second derivative in
    // rounding (eps / h^2 ~ 5e-6)
    auto delta_ld = [](long double r) -> long double {
      const long double u = std::exp(-std::fabs(r));  // profile is even
      return 10.0L * u / ((1.0L + u) * (1.0L + u));
    };
    double worst1 = 0.0, worst2 = 0.0;
    const long double fd_h = 1e-5L;
    for (int s = 0; s <= 400; ++s) {
      const double r = 20.0 * static_cast<double>(s) / 400.0;
      const long double rl = r;
      const double f1 = delta_unit.eval(r, DerivOrder::first);
      if (r - 1e-5 >= 0.0) {
        const double fp =
            static_cast<double>((delta_ld(rl + fd_h) - delta_ld(rl - fd_h)) / (2.0L * fd_h));
        worst1 = std::max(worst1, std::fabs(fp - f1) / std::max(1.0, std::fabs(f1)));
      }
      const double fpp = static_cast<double>(
          (delta_ld(rl + fd_h) - 2.0L * delta_ld(rl) + delta_ld(rl - fd_h)) / (fd_h * fd_h));
      const double f2 = delta_unit.eval(r, DerivOrder::second);
      worst2 = std::max(worst2, std::fabs(fpp - f2) / std::max(1.0, std::fabs(f2)));
    }
    rep.add_max("delta.first_derivative_vs_fd", worst1, 1e-6);
    rep.add_max("delta.second_derivative_vs_fd", worst2, 1e-6);
  }
  {
    bool ok = true;
    int sign_changes = 0;
    double prev_sign = 0.0;
    for (int s = 1; s <= 30000; ++s) {
      const double r = 30.0 * static_cast<double>(s) / 30000.0;
      const double k = prof_unit.eval(r);
      const double kp = prof_unit.eval(r, DerivOrder::first);
      if (!(k >= 0.0 && k < 1.0) || kp > 0.0) ok = false;
      const double kpp = prof_unit.eval(r, DerivOrder::second);
      const double sgn = (kpp > 0.0) ? 1.0 : ((kpp < 0.0) ? -1.0 : prev_sign);
      if (prev_sign != 0.0 && sgn != prev_sign) ++sign_changes;
      prev_sign = sgn;
    }
    rep.add_flag("delta.profile_shape", ok && sign_changes == 1,
                 static_cast<double>(sign_changes), 1.0,
                 "bounds, monotone decay, single inflection");
  }
  {
    // indicator limit in physical radius: r fixed, a -> 0 evaluates at r/a
    const double r_fixed = 1.0;
    double at_origin_prev = 0.0, away_prev = 1.0;
    bool ok = true;
    for (double a : {1.0, 0.1, 0.01, 0.001}) {
      const KappaProfile p(RegularizedDelta(a, 10.0), 2.0);
      const double at_origin = p.eval(0.0);
      const double away = p.eval(r_fixed / a);
      if (at_origin < at_origin_prev || away > away_prev) ok = false;
      at_origin_prev = at_origin;
      away_prev = away;
    }
    const KappaProfile p_small(RegularizedDelta(1e-3, 10.0), 2.0);
    ok = ok && p_small.eval(0.0) > 1.0 - 1e-12 && p_small.eval(r_fixed / 1e-3) < 1e-12;
    rep.add_flag("delta.indicator_limit", ok, ok ? 1.0 : 0.0, 1.0);
  }
  {
    double worst = 0.0;
    for (double a : {0.1, 0.05, 0.01}) {
      const KappaProfile p(RegularizedDelta(a, 10.0), 2.0);
      const double residual = 1.0 - p.eval(0.0);  // e^{-w beta/(4a)}
      const double closed = std::exp(-2.0 * 10.0 / (4.0 * a));
      worst = std::max({worst, std::fabs(residual - closed), residual});
    }
    rep.add_max("delta.residual_origin_coefficient", worst, 1e-21,
                "1 - kappa_a(0) for a <= 0.1");
  }

  // ---- operator layer ----
  {
    const auto u_field = detail::FourierField::random(rng, 5, -1.0, 1.0);
    const ConvergenceStudy s = convergence_order(
        [&](std::size_t n) { return conjugation_identity_error(n, u_field, prof_unit); },
        {256, 512, 1024, 2048});
    rep.add_min("ops.conjugation_identity_order", s.fitted_order, 1.9);
  }
  {
    // bit-identical classical reductions at lambda == 0
    RadialGrid g(64, 0.0, 5.0);
    const OperatorCoefficients c0 = OperatorCoefficients::zero(g, 2.0, {1.0});
    Vec u(g.n);
    for (std::size_t i = 0; i < g.n; ++i) u[i] = rng.uniform(-2.0, 2.0);
    const Vec a = modified_laplacian_apply(u, g, c0);
    const Vec b = radial_laplacian_apply(u, g);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < g.n; ++i)
      if (a[i] != b[i]) ++mismatches;

    SpacetimeGrid1p1 st(16, 32, 0.5, 2.0);
    const SpacetimeCoefficients sc = SpacetimeCoefficients::stationary(
        st, Vec(st.nx, 0.0), {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
    Vec ph(st.size()), pd(st.size(), 0.3);
    for (auto& x : ph) x = rng.uniform(-2.0, 2.0);
    const Vec wr = wave_residual(st, ph, pd, sc, 0);
    const Vec wc = classical_wave_residual(st, ph);
    for (std::size_t i = 0; i < st.size(); ++i)
      if (wr[i] != wc[i]) ++mismatches;

    std::array<Vec, 4> Ah, Ad;
    for (int mu = 0; mu < 4; ++mu) {
      Ah[mu].assign(st.size(), 0.0);
      Ad[mu].assign(st.size(), 0.1 * (mu + 1));
      for (auto& x : Ah[mu]) x = rng.uniform(-1.0, 1.0);
    }
    const Vec cr = conservation_residual(st, Ah, Ad, sc);
    const Vec cc = classical_lorenz_residual(st, Ah[0], Ah[1]);
    for (std::size_t i = 0; i < st.size(); ++i)
      if (cr[i] != cc[i]) ++mismatches;

    Vec Ahat_r(g.n), Ad_r(g.n, 0.4);
    for (auto& x : Ahat_r) x = rng.uniform(-1.0, 1.0);
    const Vec gr = coulomb_gauge_residual(Ahat_r, Ad_r, g, c0);
    const Vec gc = radial_divergence(Ahat_r, g);
    for (std::size_t i = 0; i < g.n; ++i)
      if (gr[i] != gc[i]) ++mismatches;

    rep.add_max("ops.classical_reduction_bit_identical",
                static_cast<double>(mismatches), 0.0, "mismatching nodes at lambda == 0");
  }
  {
    // linearity of the modified Laplacian
    RadialGrid g(128, 0.5, 10.0);
    const OperatorCoefficients c = OperatorCoefficients::from_profile(g, prof_unit, {1.0});
    Vec u(g.n), v(g.n);
    for (auto& x : u) x = rng.uniform(-2.0, 2.0);
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    const double al = rng.uniform(-2.0, 2.0), be = rng.uniform(-2.0, 2.0);
    Vec mix(g.n);
    for (std::size_t i = 0; i < g.n; ++i) mix[i] = al * u[i] + be * v[i];
    const Vec lhs = modified_laplacian_apply(mix, g, c);
    const Vec lu = modified_laplacian_apply(u, g, c);
    const Vec lv = modified_laplacian_apply(v, g, c);
    double worst = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < g.n; ++i) {
      const double want = al * lu[i] + be * lv[i];
      scale = std::max(scale, std::fabs(want));
      worst = std::max(worst, std::fabs(lhs[i] - want));
    }
    rep.add_max("ops.linearity", worst / scale, 1e-12);
  }
  {
    const ConvergenceStudy s = convergence_order(
        [](std::size_t nx) {
          return wave_manufactured_residual(nx, WaveForm::conjugated);
        },
        {129, 257, 513, 1025});
    rep.add_min("ops.wave_residual_order", s.fitted_order, 1.9);
  }
  {
    // the two wave forms agree up to the -e^{-z lam} factor when z0 == z1
    const std::size_t nx = 257, nt = 129;
    SpacetimeGrid1p1 g(nt, nx, 1.0, 4.0);
    const Vec lam = detail::gaussian_bump(g, 0.8, 2.0, 0.6);
    const SpacetimeCoefficients c =
        SpacetimeCoefficients::stationary(g, lam, {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
    Vec ph(g.size()), pd(g.size(), 0.7);
    for (std::size_t it = 0; it < g.nt; ++it)
      for (std::size_t ix = 0; ix < g.nx; ++ix)
        ph[g.idx(it, ix)] = std::sin(2.0 * (g.x(ix) - g.t(it))) + 0.2 * g.x(ix);
    const Vec r49 = wave_residual(g, ph, pd, c, 0, WaveForm::conjugated);
    const Vec r50 = wave_residual(g, ph, pd, c, 0, WaveForm::dilation_weighted);
    double worst = 0.0;
    const double scale = max_abs(r49) + 1.0 / (g.dt * g.dt);
    for (std::size_t it = 1; it + 1 < g.nt; ++it)
      for (std::size_t ix = 1; ix + 1 < g.nx; ++ix) {
        const std::size_t k = g.idx(it, ix);
        worst = std::max(worst,
                         std::fabs(r50[k] + std::exp(-lam[ix]) * r49[k]));
      }
    rep.add_max("ops.wave_forms_cross_validation", worst / scale, 1e-12);
  }
  {
    const ConvergenceStudy s = convergence_order(
        [](std::size_t nx) { return conservation_manufactured_residual(nx); },
        {129, 257, 513, 1025});
    rep.add_min("ops.conservation_residual_order", s.fitted_order, 1.9);
  }
  {
    const ConvergenceStudy s = convergence_order(
        [](std::size_t n) { return coulomb_manufactured_residual(n); },
        {512, 1024, 2048, 4096});
    rep.add_min("ops.coulomb_gauge_residual_order", s.fitted_order, 1.9);
  }
  {
    const ConvergenceStudy s = convergence_order(
        [](std::size_t n) { return appendix_laplace_manufactured_residual(n); },
        {1024, 2048, 4096, 8192});
    rep.add_min("ops.stationary_component_residual_order", s.fitted_order, 1.9);
  }

  // ---- closed forms ----
  const ParticleModel particle_unit{RegularizedDelta(1.0, 10.0)};
  {
    // the residual origin coefficient e^{-w beta/(4a)} makes the exact sup a
    // limit statement; the scan floor keeps its 1/r term below 1e-12 for the
    // largest core in the set (a = 0.1: e^{-50}/1e-8 ~ 2e-14)
    double sup = 0.0;
    for (double a : {0.1, 0.05, 0.01}) {
      const ParticleModel m{RegularizedDelta(a, 10.0)};
      for (int s = 0; s <= 110000; ++s) {
        const double r = std::pow(10.0, -8.0 + 11.0 * static_cast<double>(s) / 110000.0);
        sup = std::max(sup, std::fabs(particle_potential(r, m)));
      }
    }
    rep.add_max("closed.nonsingular_sup", sup, 1.0 + 1e-12,
                "sup |phi| over r in (1e-8, 1e3], a <= 0.1");
  }
  {
    // far-field bounds |phi - 1/r| and |E - 1/r^2| against e^{-r/2} on r >= 5
    double excess_phi = 0.0, excess_E = 0.0;
    double cross_phi = 5.0, cross_E = 5.0;
    for (int s = 0; s <= 35000; ++s) {
      const double r = 5.0 + 35.0 * static_cast<double>(s) / 35000.0;
      const double bound = std::exp(-0.5 * r);
      const double dphi = std::fabs(particle_potential(r, particle_unit) - 1.0 / r);
      const double dE = std::fabs(particle_field(r, particle_unit) - 1.0 / (r * r));
      if (dphi > bound) {
        excess_phi = std::max(excess_phi, dphi - bound);
        cross_phi = r;
      }
      if (dE > bound) {
        excess_E = std::max(excess_E, dE - bound);
        cross_E = r;
      }
    }
    std::ostringstream np, ne;
    np << "bound holds only beyond r = " << cross_phi;
    ne << "bound holds only beyond r = " << cross_E;
    rep.add_max("closed.farfield_phi_exp_bound", excess_phi, 0.0,
                excess_phi > 0.0 ? np.str() : "");
    rep.add_max("closed.farfield_E_exp_bound", excess_E, 0.0,
                excess_E > 0.0 ? ne.str() : "");
  }
  {
    // E equals -dphi/dr by centered differences
    double worst = 0.0;
    const double fd_h = 1e-5;
    for (int s = 0; s <= 2000; ++s) {
      const double r = 0.1 + (20.0 - 0.1) * static_cast<double>(s) / 2000.0;
      const double fd = -(particle_potential(r + fd_h, particle_unit) -
                          particle_potential(r - fd_h, particle_unit)) /
                        (2.0 * fd_h);
      const double an = particle_field(r, particle_unit);
      worst = std::max(worst, std::fabs(fd - an) / std::max(1.0, std::fabs(an)));
    }
    rep.add_max("closed.field_is_minus_gradient", worst, 1e-6);
  }
  {
    const ConvergenceStudy s = convergence_order(
        [&](std::size_t n) { return particle_pde_residual(n, particle_unit); },
        {1024, 2048, 4096, 8192});
    rep.add_min("closed.particle_pde_residual_order", s.fitted_order, 1.9);
  }
  {
    // compose/extract round trip on random fields
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 16 + rng.index(48);
      Vec ph(n), pd(n), kt(n);
      for (auto& x : ph) x = rng.uniform(-5.0, 5.0);
      for (auto& x : pd) x = rng.uniform(-5.0, 5.0);
      for (auto& x : kt) x = rng.uniform(0.0, 0.99);
      const SolutionBundle b = compose_solution(ph, pd, kt);
      const Vec back = extract_riemannian(b.phi_hat, b.phi_d, b.kappa_tilde);
      for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::fabs(back[i] - ph[i]) / std::max(1.0, std::fabs(ph[i])));
    }
    rep.add_max("closed.compose_extract_roundtrip", worst, 1e-12);
  }
  {
    // dark-potential gauge arbitrariness: the difference of two composed
    // solutions is (phi_d1 - phi_d2) kappa_tilde
    double worst = 0.0;
    const std::size_t n = 64;
    Vec ph(n), kt(n);
    for (auto& x : ph) x = rng.uniform(-3.0, 3.0);
    for (auto& x : kt) x = rng.uniform(0.0, 1.0);
    const double pd1 = rng.uniform(-4.0, 4.0), pd2 = rng.uniform(-4.0, 4.0);
    const SolutionBundle b1 = compose_solution(ph, Vec(n, pd1), kt);
    const SolutionBundle b2 = compose_solution(ph, Vec(n, pd2), kt);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = (pd1 - pd2) * kt[i];
      worst = std::max(worst, std::fabs((b1.phi_hat[i] - b2.phi_hat[i]) - want));
    }
    rep.add_max("closed.dark_field_gauge_arbitrariness", worst, 1e-14);
  }
  {
    // null-dark variant coincides with the composed form
    double worst = 0.0;
    for (int s = 1; s <= 400; ++s) {
      const double r = 0.05 * static_cast<double>(s);
      const double direct = null_dark_potential(r, particle_unit);
      const double k = particle_unit.profile().eval(r);
      const double composed = (1.0 - k) * (1.0 / r) + k * 0.0;
      worst = std::max(worst, std::fabs(direct - composed) / std::max(1.0, std::fabs(direct)));
    }
    rep.add_max("closed.null_dark_equals_composition", worst, 1e-14);
  }
  {
    // Dirichlet solution: boundary value attained as kappa -> 1, harmonic
    // limit at kappa == 0, and consistency with the particle potential
    const double phi_d_value = 3.0;
    const RegularizedDelta small_a(1e-3, 10.0);
    const double near = dirichlet_solution(1e-3, phi_d_value, small_a);
    double worst = std::fabs(near - phi_d_value) / phi_d_value;
    for (int s = 1; s <= 100; ++s) {
      const double r = 0.2 * static_cast<double>(s);
      const double got = dirichlet_solution(r, phi_d_value, particle_unit.delta);
      const double k = particle_unit.profile().eval(r);
      const double want = phi_d_value * ((1.0 - k) / r + k);
      worst = std::max(worst, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
    }
    rep.add_max("closed.dirichlet_solution_consistency", worst, 1e-12);
  }

  return rep;
}

/// Verifier-level checks: solver calibration, oracle-vs-closed-form
/// comparisons, charge quadrature, and the coarse 3D stencil smoke test.
inline VerificationReport run_verifier_checks() {
  VerificationReport rep;

  {
    // lambda == 0 calibration: the solve must reproduce sampled 1/r
    RadialGrid g(257, 0.0, 20.0);
    const OperatorCoefficients c0 = OperatorCoefficients::zero(g, 2.0, {1.0});
    const Vec u = brute_force_elliptic_solve(g, c0, 0.0, 1.0 / 20.0);
    double worst = 0.0;
    for (std::size_t i = 1; i < g.n; ++i)
      worst = std::max(worst, std::fabs(u[i] - 1.0 / g.r(i)));
    rep.add_max("verifier.solver_calibration_classical", worst, 1e-12);
  }

  const ParticleModel m{RegularizedDelta(1.0, 10.0)};
  auto solve_error = [&m](std::size_t n, double phi_d) {
    RadialGrid g(n, 0.0, 20.0);
    const OperatorCoefficients c = OperatorCoefficients::from_profile(g, m.profile(), {1.0});
    const Vec u = brute_force_elliptic_solve(g, c, phi_d, 1.0 / 20.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
      const double r = g.r(i);
      if (r < 0.05 || r > 19.0) continue;
      const double exact = (phi_d == 0.0) ? null_dark_potential(r, m)
                                          : particle_potential(r, m);
      worst = std::max(worst, std::fabs(u[i] - exact) / std::fabs(exact));
    }
    return worst;
  };
  const double e4096 = solve_error(4096, 1.0);
  const double e4096_null = solve_error(4096, 0.0);
  rep.add_max("verifier.brute_force_vs_closed_form", e4096, 1e-3,
              "N = 4096, R = 20, max relative error on [0.05, 19]");
  rep.add_max("verifier.brute_force_vs_null_dark", e4096_null, 1e-3);
  {
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n : {512u, 1024u, 2048u, 4096u}) {
      const double e = solve_error(n, 1.0);
      if (e >= prev) monotone = false;
      prev = e;
    }
    rep.add_flag("verifier.brute_force_monotone_improvement", monotone,
                 monotone ? 1.0 : 0.0, 1.0);
  }

  {
    double worst_dev = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    double signed_sample = 0.0;
    for (double a : {0.01, 0.05, 0.1}) {
      const ParticleModel ma{RegularizedDelta(a, 10.0)};
      const double q = total_charge(ma);
      signed_sample = q;
      worst_dev = std::max(worst_dev, std::fabs(std::fabs(q) - 1.0));
      lo = std::min(lo, std::fabs(q));
      hi = std::max(hi, std::fabs(q));
    }
    std::ostringstream note;
    note << "signed value " << ((signed_sample < 0.0) ? "negative" : "positive")
         << "; opposite sign to the divergence-route density";
    rep.add_max("verifier.total_charge_magnitude", worst_dev, 1e-3, note.str());
    rep.add_max("verifier.total_charge_a_invariance", hi - lo, 1e-3);
  }
  {
    const ParticleModel ma{RegularizedDelta(0.05, 10.0)};
    const double q1 = total_charge(ma, Quadrature::fixed, 1u << 17);
    const double q2 = total_charge(ma, Quadrature::fixed, 1u << 18);
    rep.add_max("verifier.quadrature_step_halving", std::fabs(q2 - q1), 1e-6);
  }

  rep.add_max("verifier.cartesian_stencil_smoke", cartesian_stencil_smoke(m), 1e-2,
              "64^3 box, shell 2 <= r <= 6");

  return rep;
}

}  // namespace gwig
