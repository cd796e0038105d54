#pragma once

// Discrete GWIG differential operators on radial and 1+1D spacetime grids.
//
// Conventions:
//  * second-order centered stencils in the interior, second-order one-sided
//    stencils at r_min > 0 / r_max boundaries;
//  * an r = 0 node uses the regularity stencil Lap u(0) ~ 6(u1 - u0)/h^2
//    (even symmetry, u'(0) = 0);
//  * spacetime residuals are defined on interior nodes; the boundary ring of
//    the returned array is zero;
//  * the lambda profile enters through closed-form derivative samples, never
//    through numerical differentiation of lambda itself.
//
// Every GWIG operator funnels through the same raw stencil helper as its
// classical counterpart, so at lambda == 0 the outputs agree bit for bit.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "gwig/delta_fields.hpp"
#include "gwig/grids.hpp"
#include "gwig/linalg.hpp"

namespace gwig {

// ---------------------------------------------------------------------------
// Radial stencils
// ---------------------------------------------------------------------------

/// First derivative on the radial grid. Zero at an r = 0 node (even symmetry).
inline Vec radial_d1(const Vec& u, const RadialGrid& g) {
  if (u.size() != g.n) throw std::invalid_argument("radial_d1: field size mismatch");
  const double h = g.h;
  Vec out(g.n);
  for (std::size_t i = 1; i + 1 < g.n; ++i) out[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  out[0] = g.has_origin() ? 0.0 : (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  const std::size_t m = g.n - 1;
  out[m] = (3.0 * u[m] - 4.0 * u[m - 1] + u[m - 2]) / (2.0 * h);
  return out;
}

/// Spherically symmetric 3D Laplacian u'' + (2/r) u'.
inline Vec radial_laplacian_apply(const Vec& u, const RadialGrid& g) {
  if (u.size() != g.n)
    throw std::invalid_argument("radial_laplacian_apply: field size mismatch");
  const double h = g.h;
  const double h2 = h * h;
  Vec out(g.n);
  for (std::size_t i = 1; i + 1 < g.n; ++i) {
    const double d2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2;
    const double d1 = (u[i + 1] - u[i - 1]) / (2.0 * h);
    out[i] = d2 + (2.0 / g.r(i)) * d1;
  }
  if (g.has_origin()) {
    out[0] = 6.0 * (u[1] - u[0]) / h2;
  } else {
    const double d2 = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / h2;
    const double d1 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    out[0] = d2 + (2.0 / g.r(0)) * d1;
  }
  const std::size_t m = g.n - 1;
  const double d2 = (2.0 * u[m] - 5.0 * u[m - 1] + 4.0 * u[m - 2] - u[m - 3]) / h2;
  const double d1 = (3.0 * u[m] - 4.0 * u[m - 1] + u[m - 2]) / (2.0 * h);
  out[m] = d2 + (2.0 / g.r(m)) * d1;
  return out;
}

/// Divergence of a radial vector field V(r) rhat: V' + (2/r) V.
/// At an r = 0 node the regular limit 3 V'(0) is used.
inline Vec radial_divergence(const Vec& v, const RadialGrid& g) {
  if (v.size() != g.n)
    throw std::invalid_argument("radial_divergence: field size mismatch");
  Vec d1 = radial_d1(v, g);
  Vec out(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    if (i == 0 && g.has_origin()) {
      out[0] = 3.0 * (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * g.h);
    } else {
      out[i] = d1[i] + (2.0 / g.r(i)) * v[i];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Radial operator coefficients
// ---------------------------------------------------------------------------

/// Closed-form samples of the dilation function and its radial derivatives,
/// plus the field weight w and the per-axis dilation exponents z.
struct OperatorCoefficients {
  Vec lambda;
  Vec grad_lambda;
  Vec laplace_lambda;
  double w = 0.0;
  Vec z;

  static OperatorCoefficients from_profile(const RadialGrid& g, const KappaProfile& prof,
                                           Vec z_in) {
    OperatorCoefficients c;
    c.w = prof.w();
    c.z = std::move(z_in);
    c.lambda.resize(g.n);
    c.grad_lambda.resize(g.n);
    c.laplace_lambda.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      const double r = g.r(i);
      c.lambda[i] = prof.lambda(r);
      c.grad_lambda[i] = prof.lambda(r, DerivOrder::first);
      if (i == 0 && g.has_origin()) {
        c.laplace_lambda[0] = 3.0 * prof.lambda(0.0, DerivOrder::second);
      } else {
        c.laplace_lambda[i] =
            prof.lambda(r, DerivOrder::second) + (2.0 / r) * c.grad_lambda[i];
      }
    }
    return c;
  }

  static OperatorCoefficients from_arrays(Vec lambda, Vec grad, Vec lap, double w, Vec z) {
    if (lambda.size() != grad.size() || lambda.size() != lap.size())
      throw std::invalid_argument("OperatorCoefficients: array length mismatch");
    OperatorCoefficients c;
    c.lambda = std::move(lambda);
    c.grad_lambda = std::move(grad);
    c.laplace_lambda = std::move(lap);
    c.w = w;
    c.z = std::move(z);
    return c;
  }

  static OperatorCoefficients zero(const RadialGrid& g, double w, Vec z) {
    return from_arrays(Vec(g.n, 0.0), Vec(g.n, 0.0), Vec(g.n, 0.0), w, std::move(z));
  }

  void require_size(std::size_t n) const {
    if (lambda.size() != n)
      throw std::invalid_argument("OperatorCoefficients: wrong grid size");
  }

  Vec kappa_tilde() const {
    Vec k(lambda.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = -std::expm1(-w * lambda[i]);
    return k;
  }

  /// All z entries equal is required by the spherically symmetric reduction.
  double spatial_z() const {
    if (z.empty()) throw std::invalid_argument("OperatorCoefficients: empty z");
    for (double v : z)
      if (v != z[0])
        throw std::invalid_argument(
            "OperatorCoefficients: radial reduction requires equal z entries");
    return z[0];
  }
};

// ---------------------------------------------------------------------------
// Modified Laplacian and friends (radial)
// ---------------------------------------------------------------------------

/// Lap u + 2 w grad(lambda).grad(u) + w (Lap lambda + w grad(lambda)^2) u.
inline Vec modified_laplacian_apply(const Vec& u, const RadialGrid& g,
                                    const OperatorCoefficients& c) {
  c.require_size(g.n);
  Vec out = radial_laplacian_apply(u, g);
  const Vec du = radial_d1(u, g);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double gl = c.grad_lambda[i];
    out[i] += 2.0 * c.w * gl * du[i] + c.w * (c.laplace_lambda[i] + c.w * gl * gl) * u[i];
  }
  return out;
}

/// The conjugation route e^{-w lambda} Lap(e^{w lambda} u); agrees with
/// modified_laplacian_apply to discretization error. Kept as an independent
/// algebraic path, not a replacement.
inline Vec conjugated_laplacian_apply(const Vec& u, const RadialGrid& g,
                                      const OperatorCoefficients& c) {
  c.require_size(g.n);
  Vec scaled(g.n);
  for (std::size_t i = 0; i < g.n; ++i) scaled[i] = std::exp(c.w * c.lambda[i]) * u[i];
  Vec out = radial_laplacian_apply(scaled, g);
  for (std::size_t i = 0; i < g.n; ++i) out[i] *= std::exp(-c.w * c.lambda[i]);
  return out;
}

/// Source side: the modified Laplacian applied to kappa_tilde * phi_d with the
/// same stencil as modified_laplacian_apply.
inline Vec modified_rhs_assemble(const Vec& phi_d, const RadialGrid& g,
                                 const OperatorCoefficients& c) {
  if (phi_d.size() != g.n)
    throw std::invalid_argument("modified_rhs_assemble: field size mismatch");
  c.require_size(g.n);
  const Vec kt = c.kappa_tilde();
  Vec k(g.n);
  for (std::size_t i = 0; i < g.n; ++i) k[i] = kt[i] * phi_d[i];
  return modified_laplacian_apply(k, g, c);
}

inline Vec modified_rhs_assemble(double phi_d, const RadialGrid& g,
                                 const OperatorCoefficients& c) {
  return modified_rhs_assemble(Vec(g.n, phi_d), g, c);
}

/// Residual of the decoupled stationary component equation
///   e^{-z lam} Lap(e^{w lam} phi_hat) - e^{-z lam} Lap((e^{w lam} - 1) phi_d)
/// in the spherically symmetric reduction (equal z entries required).
inline Vec appendix_laplace_residual(const Vec& phi_hat, const Vec& phi_d,
                                     const RadialGrid& g, const OperatorCoefficients& c) {
  if (phi_hat.size() != g.n || phi_d.size() != g.n)
    throw std::invalid_argument("appendix_laplace_residual: field size mismatch");
  c.require_size(g.n);
  const double z = c.spatial_z();
  Vec u(g.n), v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    u[i] = std::exp(c.w * c.lambda[i]) * phi_hat[i];
    // e^{w lam} (1 - e^{-w lam}) = expm1(w lam)
    v[i] = std::expm1(c.w * c.lambda[i]) * phi_d[i];
  }
  const Vec lu = radial_laplacian_apply(u, g);
  const Vec lv = radial_laplacian_apply(v, g);
  Vec out(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    out[i] = std::exp(-z * c.lambda[i]) * (lu[i] - lv[i]);
  return out;
}

/// Stationary gauge residual for the radial spatial component:
///   e^{-z lam} div(e^{w lam} A_hat) - e^{-z lam} div((e^{w lam} - 1) A_d).
inline Vec coulomb_gauge_residual(const Vec& A_hat_r, const Vec& A_d_r,
                                  const RadialGrid& g, const OperatorCoefficients& c) {
  if (A_hat_r.size() != g.n || A_d_r.size() != g.n)
    throw std::invalid_argument("coulomb_gauge_residual: field size mismatch");
  c.require_size(g.n);
  const double z = c.spatial_z();
  Vec u(g.n), v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    u[i] = std::exp(c.w * c.lambda[i]) * A_hat_r[i];
    v[i] = std::expm1(c.w * c.lambda[i]) * A_d_r[i];
  }
  const Vec du = radial_divergence(u, g);
  const Vec dv = radial_divergence(v, g);
  Vec out(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    out[i] = std::exp(-z * c.lambda[i]) * (du[i] - dv[i]);
  return out;
}

// ---------------------------------------------------------------------------
// 1+1D spacetime operators
// ---------------------------------------------------------------------------

/// Stationary dilation profile on a spacetime grid plus per-component field
/// weights w and per-axis exponents z = (z0, z1).
struct SpacetimeCoefficients {
  Vec lambda_x;  // size nx
  Vec w;         // per-component Weyl weights
  Vec z;         // (time, space)

  static SpacetimeCoefficients stationary(const SpacetimeGrid1p1& g, Vec lambda_x, Vec w,
                                          Vec z) {
    if (lambda_x.size() != g.nx)
      throw std::invalid_argument("SpacetimeCoefficients: lambda_x size mismatch");
    if (z.size() != 2)
      throw std::invalid_argument("SpacetimeCoefficients: z must have 2 entries");
    if (w.empty()) throw std::invalid_argument("SpacetimeCoefficients: empty w");
    return SpacetimeCoefficients{std::move(lambda_x), std::move(w), std::move(z)};
  }

  /// Builds from a full (t, x) sample; rejects any time variation.
  static SpacetimeCoefficients from_field(const SpacetimeGrid1p1& g, const Vec& lambda_tx,
                                          Vec w, Vec z) {
    if (lambda_tx.size() != g.size())
      throw std::invalid_argument("SpacetimeCoefficients: lambda field size mismatch");
    for (std::size_t ix = 0; ix < g.nx; ++ix)
      for (std::size_t it = 1; it < g.nt; ++it)
        if (lambda_tx[g.idx(it, ix)] != lambda_tx[g.idx(0, ix)])
          throw std::invalid_argument(
              "SpacetimeCoefficients: lambda must be stationary (no time dependence)");
    Vec lx(g.nx);
    for (std::size_t ix = 0; ix < g.nx; ++ix) lx[ix] = lambda_tx[g.idx(0, ix)];
    return stationary(g, std::move(lx), std::move(w), std::move(z));
  }

  double w_at(std::size_t mu) const {
    if (mu >= w.size())
      throw std::out_of_range("SpacetimeCoefficients: component index out of range");
    return w[mu];
  }
};

namespace detail {

/// -d2/dt2 f + d2/dx2 f on interior nodes; boundary ring zero.
inline Vec dalembert_stencil(const SpacetimeGrid1p1& g, const Vec& f) {
  if (f.size() != g.size())
    throw std::invalid_argument("dalembert_stencil: field size mismatch");
  const double dt2 = g.dt * g.dt, dx2 = g.dx * g.dx;
  Vec out(g.size(), 0.0);
  for (std::size_t it = 1; it + 1 < g.nt; ++it)
    for (std::size_t ix = 1; ix + 1 < g.nx; ++ix) {
      const std::size_t k = g.idx(it, ix);
      out[k] = -(f[k + g.nx] - 2.0 * f[k] + f[k - g.nx]) / dt2 +
               (f[k + 1] - 2.0 * f[k] + f[k - 1]) / dx2;
    }
  return out;
}

/// -dt f0 + dx f1 (centered) on interior nodes; boundary ring zero.
inline Vec lorenz_stencil(const SpacetimeGrid1p1& g, const Vec& f0, const Vec& f1) {
  if (f0.size() != g.size() || f1.size() != g.size())
    throw std::invalid_argument("lorenz_stencil: field size mismatch");
  Vec out(g.size(), 0.0);
  for (std::size_t it = 1; it + 1 < g.nt; ++it)
    for (std::size_t ix = 1; ix + 1 < g.nx; ++ix) {
      const std::size_t k = g.idx(it, ix);
      out[k] = -(f0[k + g.nx] - f0[k - g.nx]) / (2.0 * g.dt) +
               (f1[k + 1] - f1[k - 1]) / (2.0 * g.dx);
    }
  return out;
}

/// e^{-z0 lam} d2/dt2 f - e^{-z1 lam} d2/dx2 f on interior nodes.
inline Vec weighted_box_stencil(const SpacetimeGrid1p1& g, const Vec& f,
                                const Vec& lambda_x, double z0, double z1) {
  if (f.size() != g.size())
    throw std::invalid_argument("weighted_box_stencil: field size mismatch");
  const double dt2 = g.dt * g.dt, dx2 = g.dx * g.dx;
  Vec out(g.size(), 0.0);
  for (std::size_t it = 1; it + 1 < g.nt; ++it)
    for (std::size_t ix = 1; ix + 1 < g.nx; ++ix) {
      const std::size_t k = g.idx(it, ix);
      const double wt = std::exp(-z0 * lambda_x[ix]);
      const double wx = std::exp(-z1 * lambda_x[ix]);
      out[k] = wt * (f[k + g.nx] - 2.0 * f[k] + f[k - g.nx]) / dt2 -
               wx * (f[k + 1] - 2.0 * f[k] + f[k - 1]) / dx2;
    }
  return out;
}

}  // namespace detail

/// Classical d'Alembert residual -phi_tt + phi_xx; the lambda == 0 reduction
/// of the wave residual below, bit for bit.
inline Vec classical_wave_residual(const SpacetimeGrid1p1& g, const Vec& phi) {
  return detail::dalembert_stencil(g, phi);
}

/// Classical Lorenz-condition residual -dt A0 + dx A1.
inline Vec classical_lorenz_residual(const SpacetimeGrid1p1& g, const Vec& A0,
                                     const Vec& A1) {
  return detail::lorenz_stencil(g, A0, A1);
}

enum class WaveForm {
  conjugated,         // box applied to e^{w lam}(phi_hat - K phi_d)
  dilation_weighted,  // e^{-z lam}-weighted box of e^{w lam} phi_hat minus source
};

/// Wave-equation residual for component mu on a stationary dilation profile.
inline Vec wave_residual(const SpacetimeGrid1p1& g, const Vec& phi_hat, const Vec& phi_d,
                         const SpacetimeCoefficients& c, std::size_t mu,
                         WaveForm form = WaveForm::conjugated) {
  if (phi_hat.size() != g.size() || phi_d.size() != g.size())
    throw std::invalid_argument("wave_residual: field size mismatch");
  const double w = c.w_at(mu);
  if (form == WaveForm::conjugated) {
    Vec m(g.size());
    for (std::size_t it = 0; it < g.nt; ++it)
      for (std::size_t ix = 0; ix < g.nx; ++ix) {
        const std::size_t k = g.idx(it, ix);
        const double K = -std::expm1(-w * c.lambda_x[ix]);
        m[k] = std::exp(w * c.lambda_x[ix]) * (phi_hat[k] - K * phi_d[k]);
      }
    return detail::dalembert_stencil(g, m);
  }
  // dilation-weighted form with its source term
  Vec u(g.size()), v(g.size());
  for (std::size_t it = 0; it < g.nt; ++it)
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const std::size_t k = g.idx(it, ix);
      u[k] = std::exp(w * c.lambda_x[ix]) * phi_hat[k];
      v[k] = std::expm1(w * c.lambda_x[ix]) * phi_d[k];
    }
  const Vec bu = detail::weighted_box_stencil(g, u, c.lambda_x, c.z[0], c.z[1]);
  const Vec bv = detail::weighted_box_stencil(g, v, c.lambda_x, c.z[0], c.z[1]);
  Vec out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = bu[k] - bv[k];
  return out;
}

/// Conservation (Lorenz-condition) residual
///   -dt(e^{w0 lam}(A0_hat - K0 A0_d)) + dj(e^{wj lam}(Aj_hat - Kj Aj_d)).
/// Components 2 and 3 are carried for interface fidelity; their y/z
/// derivatives vanish identically on this grid.
inline Vec conservation_residual(const SpacetimeGrid1p1& g, const std::array<Vec, 4>& A_hat,
                                 const std::array<Vec, 4>& A_d,
                                 const SpacetimeCoefficients& c) {
  for (int mu = 0; mu < 4; ++mu)
    if (A_hat[mu].size() != g.size() || A_d[mu].size() != g.size())
      throw std::invalid_argument("conservation_residual: field size mismatch");
  if (c.w.size() < 4)
    throw std::invalid_argument("conservation_residual: need 4 component weights");
  auto composite = [&](int mu) {
    Vec m(g.size());
    for (std::size_t it = 0; it < g.nt; ++it)
      for (std::size_t ix = 0; ix < g.nx; ++ix) {
        const std::size_t k = g.idx(it, ix);
        const double K = -std::expm1(-c.w[mu] * c.lambda_x[ix]);
        m[k] = std::exp(c.w[mu] * c.lambda_x[ix]) * (A_hat[mu][k] - K * A_d[mu][k]);
      }
    return m;
  };
  return detail::lorenz_stencil(g, composite(0), composite(1));
}

}  // namespace gwig
