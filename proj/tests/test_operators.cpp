#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "gwig/operators.hpp"
#include "gwig/verifier.hpp"

using namespace gwig;

namespace {

const KappaProfile kProfile(RegularizedDelta(1.0, 10.0), 2.0);

Vec sample(const RadialGrid& g, double (*f)(double)) {
  Vec u(g.n);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = f(g.r(i));
  return u;
}

}  // namespace

TEST(Grids, Validation) {
  EXPECT_THROW(RadialGrid(7, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(RadialGrid(16, 2.0, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(RadialGrid(8, 0.0, 1.0));
  // CFL: dt/dx <= 1
  EXPECT_THROW(SpacetimeGrid1p1(8, 8, 2.0, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(SpacetimeGrid1p1(8, 8, 1.0, 1.0));
}

TEST(Grids, NamedFields) {
  RadialGrid g(16, 0.0, 1.0);
  g.add_field("u")[3] = 7.0;
  EXPECT_EQ(g.field("u")[3], 7.0);
  EXPECT_THROW(g.field("missing"), std::out_of_range);
}

TEST(RadialStencils, QuadraticIsExact) {
  for (double r0 : {0.0, 0.5}) {
    RadialGrid g(64, r0, 10.0);
    const Vec u = sample(g, [](double r) { return r * r; });
    const Vec lap = radial_laplacian_apply(u, g);
    for (std::size_t i = 0; i < g.n; ++i) EXPECT_NEAR(lap[i], 6.0, 1e-10);
  }
}

TEST(RadialStencils, HarmonicOneOverR) {
  RadialGrid g(128, 0.5, 10.0);
  const Vec u = sample(g, [](double r) { return 1.0 / r; });
  const Vec lap = radial_laplacian_apply(u, g);
  // centered radial stencil is exact on 1/r; only the one-sided ends deviate
  for (std::size_t i = 1; i + 1 < g.n; ++i) EXPECT_NEAR(lap[i], 0.0, 1e-9);
  EXPECT_NEAR(lap[0], 0.0, 1e-2);
  EXPECT_NEAR(lap[g.n - 1], 0.0, 1e-2);
}

TEST(ModifiedLaplacian, ZeroLambdaIsBitIdenticalToPlain) {
  RadialGrid g(64, 0.0, 5.0);
  const OperatorCoefficients c0 = OperatorCoefficients::zero(g, 2.0, {1.0});
  Rng rng(17);
  Vec u(g.n);
  for (auto& x : u) x = rng.uniform(-2.0, 2.0);
  const Vec a = modified_laplacian_apply(u, g, c0);
  const Vec b = radial_laplacian_apply(u, g);
  for (std::size_t i = 0; i < g.n; ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(ModifiedLaplacian, ConjugationIdentityConverges) {
  Rng rng(21);
  const auto u_field = detail::FourierField::random(rng, 5, -1.0, 1.0);
  const ConvergenceStudy s = convergence_order(
      [&](std::size_t n) { return conjugation_identity_error(n, u_field, kProfile); },
      {256, 512, 1024, 2048});
  EXPECT_GE(s.fitted_order, 1.9);
  EXPECT_LT(s.residual_norms.back(), s.residual_norms.front());
}

TEST(ModifiedLaplacian, BrokenMiddleTermFailsConjugationIdentity) {
  // mutation sanity: a sign flip in the transport term must be caught
  auto broken = [](const Vec& u, const RadialGrid& g, const OperatorCoefficients& c) {
    Vec out = radial_laplacian_apply(u, g);
    const Vec du = radial_d1(u, g);
    for (std::size_t i = 0; i < g.n; ++i) {
      const double gl = c.grad_lambda[i];
      out[i] += -2.0 * c.w * gl * du[i] + c.w * (c.laplace_lambda[i] + c.w * gl * gl) * u[i];
    }
    return out;
  };
  Rng rng(21);
  const auto u_field = detail::FourierField::random(rng, 5, -1.0, 1.0);
  const auto [good, h1] = conjugation_identity_error(1024, u_field, kProfile);
  const auto [bad, h2] = conjugation_identity_error(1024, u_field, kProfile, broken);
  EXPECT_GT(bad, 100.0 * good);
}

TEST(ModifiedLaplacian, Linearity) {
  RadialGrid g(128, 0.5, 10.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, kProfile, {1.0});
  Rng rng(23);
  Vec u(g.n), v(g.n);
  for (auto& x : u) x = rng.uniform(-2.0, 2.0);
  for (auto& x : v) x = rng.uniform(-2.0, 2.0);
  const double al = 1.7, be = -0.4;
  Vec mix(g.n);
  for (std::size_t i = 0; i < g.n; ++i) mix[i] = al * u[i] + be * v[i];
  const Vec lm = modified_laplacian_apply(mix, g, c);
  const Vec lu = modified_laplacian_apply(u, g, c);
  const Vec lv = modified_laplacian_apply(v, g, c);
  double scale = 1.0;
  for (std::size_t i = 0; i < g.n; ++i) scale = std::max(scale, std::fabs(lu[i]) + std::fabs(lv[i]));
  for (std::size_t i = 0; i < g.n; ++i)
    EXPECT_NEAR(lm[i], al * lu[i] + be * lv[i], 1e-12 * scale);
}

TEST(ModifiedRhs, NullDarkFieldGivesZero) {
  RadialGrid g(64, 0.0, 10.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, kProfile, {1.0});
  const Vec rhs = modified_rhs_assemble(0.0, g, c);
  for (double v : rhs) EXPECT_EQ(v, 0.0);
}

TEST(ModifiedRhs, ZeroLambdaGivesZero) {
  RadialGrid g(64, 0.0, 10.0);
  const OperatorCoefficients c0 = OperatorCoefficients::zero(g, 2.0, {1.0});
  const Vec rhs = modified_rhs_assemble(1.0, g, c0);
  for (double v : rhs) EXPECT_EQ(v, 0.0);
}

TEST(ModifiedRhs, MatchesOperatorOnKappaSamples) {
  RadialGrid g(128, 0.0, 10.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, kProfile, {1.0});
  Vec k(g.n);
  for (std::size_t i = 0; i < g.n; ++i) k[i] = kProfile.eval(g.r(i));
  const Vec via_rhs = modified_rhs_assemble(1.0, g, c);
  const Vec direct = modified_laplacian_apply(k, g, c);
  for (std::size_t i = 0; i < g.n; ++i)
    EXPECT_NEAR(via_rhs[i], direct[i], 1e-9 * std::max(1.0, std::fabs(direct[i])));
}

TEST(ModifiedRhs, SupportConcentratedNearCore) {
  RadialGrid g(2048, 0.0, 20.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, kProfile, {1.0});
  const Vec rhs = modified_rhs_assemble(1.0, g, c);
  double far = 0.0, near = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (g.r(i) > 15.0) far = std::max(far, std::fabs(rhs[i]));
    if (g.r(i) < 5.0) near = std::max(near, std::fabs(rhs[i]));
  }
  EXPECT_GT(near, 1e3 * far);
}

TEST(StationaryComponentResidual, ConstantFieldsVanish) {
  RadialGrid g(256, 0.5, 10.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, kProfile, {1.0});
  const Vec phi(g.n, 0.7);
  const Vec res = appendix_laplace_residual(phi, phi, g, c);
  for (double v : res) EXPECT_NEAR(v, 0.0, 1e-8);
}

TEST(StationaryComponentResidual, ZeroLambdaReducesToPlainLaplacian) {
  RadialGrid g(64, 0.5, 10.0);
  const OperatorCoefficients c0 = OperatorCoefficients::zero(g, 2.0, {1.0});
  Rng rng(29);
  Vec phi(g.n), phid(g.n, 0.4);
  for (auto& x : phi) x = rng.uniform(-2.0, 2.0);
  const Vec res = appendix_laplace_residual(phi, phid, g, c0);
  const Vec plain = radial_laplacian_apply(phi, g);
  for (std::size_t i = 0; i < g.n; ++i) EXPECT_EQ(res[i], plain[i]);
}

TEST(StationaryComponentResidual, ManufacturedSolutionConverges) {
  const ConvergenceStudy s = convergence_order(
      [](std::size_t n) { return appendix_laplace_manufactured_residual(n); },
      {1024, 2048, 4096, 8192});
  EXPECT_GE(s.fitted_order, 1.9);
}

TEST(StationaryComponentResidual, UnequalZRejected) {
  RadialGrid g(64, 0.5, 10.0);
  const OperatorCoefficients c =
      OperatorCoefficients::from_profile(g, kProfile, {1.0, 2.0});
  const Vec phi(g.n, 1.0);
  EXPECT_THROW(appendix_laplace_residual(phi, phi, g, c), std::invalid_argument);
}

TEST(CoulombGauge, TrivialAndClassicalCases) {
  RadialGrid g(128, 1.0, 12.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, kProfile, {1.0});
  // A_hat == A_d constant: residual collapses to rounding noise
  const Vec A(g.n, 0.6);
  const Vec res = coulomb_gauge_residual(A, A, g, c);
  for (double v : res) EXPECT_NEAR(v, 0.0, 1e-8);

  // lambda == 0 with divergence-free classical field: exact stencil zero in
  // the interior (centered stencil is exact on 1/r^2 divergence... verified
  // against the plain divergence path bit for bit)
  const OperatorCoefficients c0 = OperatorCoefficients::zero(g, 2.0, {1.0});
  Rng rng(31);
  Vec Ah(g.n), Ad(g.n, 0.0);
  for (auto& x : Ah) x = rng.uniform(-1.0, 1.0);
  const Vec r0 = coulomb_gauge_residual(Ah, Ad, g, c0);
  const Vec plain = radial_divergence(Ah, g);
  for (std::size_t i = 0; i < g.n; ++i) EXPECT_EQ(r0[i], plain[i]);
}

TEST(CoulombGauge, ManufacturedSolutionConverges) {
  const ConvergenceStudy s = convergence_order(
      [](std::size_t n) { return coulomb_manufactured_residual(n); },
      {512, 1024, 2048, 4096});
  EXPECT_GE(s.fitted_order, 1.9);
}

TEST(WaveResidual, ClassicalTravelingWaveConverges) {
  const ConvergenceStudy s = convergence_order(
      [](std::size_t nx) {
        return wave_manufactured_residual_with_bump(nx, WaveForm::conjugated, 0.0);
      },
      {129, 257, 513, 1025});
  EXPECT_GE(s.fitted_order, 1.9);
}

TEST(WaveResidual, ManufacturedSolutionConverges) {
  const ConvergenceStudy s = convergence_order(
      [](std::size_t nx) {
        return wave_manufactured_residual_with_bump(nx, WaveForm::conjugated, 0.8);
      },
      {129, 257, 513, 1025});
  EXPECT_GE(s.fitted_order, 1.9);
}

TEST(WaveResidual, WeightedFormConvergesToo) {
  const ConvergenceStudy s = convergence_order(
      [](std::size_t nx) {
        return wave_manufactured_residual_with_bump(nx, WaveForm::dilation_weighted, 0.8);
      },
      {129, 257, 513, 1025});
  EXPECT_GE(s.fitted_order, 1.9);
}

TEST(WaveResidual, ConstantDarkFieldPinnedSolutionVanishes) {
  SpacetimeGrid1p1 g(33, 65, 1.0, 4.0);
  const Vec lam = [&] {
    Vec l(g.nx);
    for (std::size_t ix = 0; ix < g.nx; ++ix)
      l[ix] = 0.5 * std::exp(-std::pow((g.x(ix) - 2.0) / 0.7, 2.0));
    return l;
  }();
  const SpacetimeCoefficients c =
      SpacetimeCoefficients::stationary(g, lam, {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
  const Vec phi(g.size(), 0.7);
  const Vec res = wave_residual(g, phi, phi, c, 0);
  for (double v : res) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(WaveResidual, ZeroLambdaBitIdenticalToClassical) {
  SpacetimeGrid1p1 g(16, 32, 0.5, 2.0);
  const SpacetimeCoefficients c = SpacetimeCoefficients::stationary(
      g, Vec(g.nx, 0.0), {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
  Rng rng(37);
  Vec phi(g.size()), phid(g.size(), 0.3);
  for (auto& x : phi) x = rng.uniform(-2.0, 2.0);
  const Vec a = wave_residual(g, phi, phid, c, 0);
  const Vec b = classical_wave_residual(g, phi);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(WaveResidual, TwoFormsCrossValidate) {
  // with z0 == z1 the weighted form equals -e^{-z lam} times the conjugated one
  SpacetimeGrid1p1 g(65, 129, 1.0, 4.0);
  Vec lam(g.nx);
  for (std::size_t ix = 0; ix < g.nx; ++ix)
    lam[ix] = 0.8 * std::exp(-std::pow((g.x(ix) - 2.0) / 0.6, 2.0));
  const SpacetimeCoefficients c =
      SpacetimeCoefficients::stationary(g, lam, {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
  Vec phi(g.size()), phid(g.size(), 0.7);
  for (std::size_t it = 0; it < g.nt; ++it)
    for (std::size_t ix = 0; ix < g.nx; ++ix)
      phi[g.idx(it, ix)] = std::sin(2.0 * (g.x(ix) - g.t(it))) + 0.2 * g.x(ix);
  const Vec r49 = wave_residual(g, phi, phid, c, 0, WaveForm::conjugated);
  const Vec r50 = wave_residual(g, phi, phid, c, 0, WaveForm::dilation_weighted);
  const double scale = 1.0 / (g.dt * g.dt);
  for (std::size_t it = 1; it + 1 < g.nt; ++it)
    for (std::size_t ix = 1; ix + 1 < g.nx; ++ix) {
      const std::size_t k = g.idx(it, ix);
      EXPECT_NEAR(r50[k], -std::exp(-lam[ix]) * r49[k], 1e-12 * scale);
    }
}

TEST(SpacetimeCoefficients, NonStationaryLambdaRejected) {
  SpacetimeGrid1p1 g(9, 17, 0.5, 1.0);
  Vec lam(g.size());
  for (std::size_t it = 0; it < g.nt; ++it)
    for (std::size_t ix = 0; ix < g.nx; ++ix) lam[g.idx(it, ix)] = 0.1 * g.t(it);
  EXPECT_THROW(SpacetimeCoefficients::from_field(g, lam, {2.0}, {1.0, 1.0}),
               std::invalid_argument);
  // stationary samples pass
  Vec lam_ok(g.size(), 0.25);
  EXPECT_NO_THROW(SpacetimeCoefficients::from_field(g, lam_ok, {2.0}, {1.0, 1.0}));
}

TEST(ConservationResidual, ConstantFieldsVanish) {
  SpacetimeGrid1p1 g(17, 33, 0.5, 2.0);
  Vec lam(g.nx);
  for (std::size_t ix = 0; ix < g.nx; ++ix)
    lam[ix] = 0.4 * std::exp(-std::pow((g.x(ix) - 1.0) / 0.5, 2.0));
  const SpacetimeCoefficients c =
      SpacetimeCoefficients::stationary(g, lam, {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
  std::array<Vec, 4> A, Ad;
  for (int mu = 0; mu < 4; ++mu) {
    A[mu].assign(g.size(), 0.3 * (mu + 1));
    Ad[mu] = A[mu];
  }
  const Vec res = conservation_residual(g, A, Ad, c);
  for (double v : res) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(ConservationResidual, ManufacturedLorenzWaveConverges) {
  const ConvergenceStudy s = convergence_order(
      [](std::size_t nx) { return conservation_manufactured_residual(nx); },
      {129, 257, 513, 1025});
  EXPECT_GE(s.fitted_order, 1.9);
}

TEST(ConservationResidual, ZeroLambdaBitIdenticalToClassical) {
  SpacetimeGrid1p1 g(16, 32, 0.5, 2.0);
  const SpacetimeCoefficients c = SpacetimeCoefficients::stationary(
      g, Vec(g.nx, 0.0), {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
  Rng rng(41);
  std::array<Vec, 4> A, Ad;
  for (int mu = 0; mu < 4; ++mu) {
    A[mu].assign(g.size(), 0.0);
    Ad[mu].assign(g.size(), 0.1 * (mu + 1));
    for (auto& x : A[mu]) x = rng.uniform(-1.0, 1.0);
  }
  const Vec a = conservation_residual(g, A, Ad, c);
  const Vec b = classical_lorenz_residual(g, A[0], A[1]);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(ConvergenceOrder, ValidatesInputsAndTrivialCase) {
  auto flat = [](std::size_t n) {
    return std::pair<double, double>(1e-16, 1.0 / static_cast<double>(n));
  };
  EXPECT_THROW(convergence_order(flat, {64, 128}), std::invalid_argument);
  EXPECT_THROW(convergence_order(flat, {64, 96, 128}), std::invalid_argument);
  const ConvergenceStudy s = convergence_order(flat, {64, 128, 256});
  EXPECT_TRUE(s.trivially_small);
  EXPECT_TRUE(std::isinf(s.fitted_order));
}

TEST(ConvergenceOrder, QuadraticExactness) {
  // plain Laplacian of r^2 is stencil-exact; power-of-two spacing keeps the
  // node values exactly representable so the residual sits at rounding level
  const ConvergenceStudy s = convergence_order(
      [](std::size_t n) {
        RadialGrid g(n, 0.0, 8.0);
        Vec u(g.n);
        for (std::size_t i = 0; i < g.n; ++i) u[i] = g.r(i) * g.r(i);
        const Vec lap = radial_laplacian_apply(u, g);
        double worst = 0.0;
        for (double v : lap) worst = std::max(worst, std::fabs(v - 6.0));
        return std::pair<double, double>(worst, g.h);
      },
      {65, 129, 257});
  EXPECT_TRUE(s.trivially_small);
}
