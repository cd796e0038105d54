#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "gwig/verifier.hpp"

using namespace gwig;

namespace {

const ParticleModel kUnit{RegularizedDelta(1.0, 10.0)};

double solve_error(std::size_t n, double phi_d, const ParticleModel& m = kUnit) {
  RadialGrid g(n, 0.0, 20.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, m.profile(), {1.0});
  const Vec u = brute_force_elliptic_solve(g, c, phi_d, 1.0 / 20.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double r = g.r(i);
    if (r < 0.05 || r > 19.0) continue;
    const double exact =
        (phi_d == 0.0) ? null_dark_potential(r, m) : particle_potential(r, m);
    worst = std::max(worst, std::fabs(u[i] - exact) / std::fabs(exact));
  }
  return worst;
}

}  // namespace

TEST(BruteForceSolve, ClassicalCalibrationIsExact) {
  // lambda == 0, outer value 1/R: the discrete solution is sampled 1/r
  RadialGrid g(257, 0.0, 20.0);
  const OperatorCoefficients c0 = OperatorCoefficients::zero(g, 2.0, {1.0});
  const Vec u = brute_force_elliptic_solve(g, c0, 0.0, 1.0 / 20.0);
  for (std::size_t i = 1; i < g.n; ++i)
    EXPECT_NEAR(u[i], 1.0 / g.r(i), 1e-12) << "node " << i;
}

TEST(BruteForceSolve, MatchesClosedFormAtTargetResolution) {
  const double err = solve_error(4096, 1.0);
  EXPECT_LE(err, 1e-3);
  EXPECT_LE(err, 5e-4);  // frozen level from the build-time study
  const double err_null = solve_error(4096, 0.0);
  EXPECT_LE(err_null, 1e-3);
}

TEST(BruteForceSolve, ErrorImprovesMonotonicallyWithResolution) {
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n : {512u, 1024u, 2048u, 4096u}) {
    const double e = solve_error(n, 1.0);
    EXPECT_LT(e, prev) << n;
    prev = e;
  }
}

TEST(BruteForceSolve, WrongWeightClosedFormIsRejectedByComparison) {
  // mutation sanity: comparing the solve against a w = 3 closed form must fail
  RadialGrid g(2048, 0.0, 20.0);
  const OperatorCoefficients c = OperatorCoefficients::from_profile(g, kUnit.profile(), {1.0});
  const Vec u = brute_force_elliptic_solve(g, c, 1.0, 1.0 / 20.0);
  const ParticleModel wrong{RegularizedDelta(1.0, 10.0), 3.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double r = g.r(i);
    if (r < 0.05 || r > 19.0) continue;
    const double bad = particle_potential(r, wrong);
    worst = std::max(worst, std::fabs(u[i] - bad) / std::fabs(bad));
  }
  EXPECT_GT(worst, 1e-2);
}

TEST(BruteForceSolve, RequiresOriginGrid) {
  RadialGrid g(64, 1.0, 20.0);
  const OperatorCoefficients c0 = OperatorCoefficients::zero(g, 2.0, {1.0});
  EXPECT_THROW(brute_force_elliptic_solve(g, c0, 1.0, 0.05), std::invalid_argument);
}

TEST(BruteForceSolve, SingularSystemDiagnosed) {
  RadialGrid g(64, 0.0, 10.0);
  // zero-order coefficient tuned to null the first pivot
  const double w = 2.0;
  Vec lap(g.n, 0.0);
  lap[0] = 6.0 / (g.h * g.h) / w;
  const OperatorCoefficients c =
      OperatorCoefficients::from_arrays(Vec(g.n, 0.0), Vec(g.n, 0.0), lap, w, {1.0});
  EXPECT_THROW(brute_force_elliptic_solve(g, c, 1.0, 0.1), std::runtime_error);
}

TEST(TotalCharge, UnitMagnitudeForSmallCores) {
  for (double a : {0.01, 0.05, 0.1}) {
    const ParticleModel m{RegularizedDelta(a, 10.0)};
    const double q = total_charge(m);
    EXPECT_NEAR(std::fabs(q), 1.0, 1e-3) << a;
    EXPECT_LT(q, 0.0);  // the model formula integrates to -kappa_a(0)
  }
}

TEST(TotalCharge, MatchesResidualCoefficientExactly) {
  // integration by parts collapses the integral to -kappa_a(0)
  for (double a : {1.0, 0.5}) {
    const ParticleModel m{RegularizedDelta(a, 10.0)};
    const double q = total_charge(m);
    EXPECT_NEAR(q, -m.profile().eval(0.0), 1e-9) << a;
  }
}

TEST(TotalCharge, VanishesForDegenerateCore) {
  const ParticleModel m{RegularizedDelta(1e9, 10.0)};
  EXPECT_NEAR(total_charge(m), 0.0, 1e-6);
}

TEST(TotalCharge, QuadratureSchemesAgree) {
  const ParticleModel m{RegularizedDelta(0.05, 10.0)};
  const double adaptive = total_charge(m, Quadrature::adaptive);
  const double fixed = total_charge(m, Quadrature::fixed);
  EXPECT_NEAR(adaptive, fixed, 1e-8);
  const double half = total_charge(m, Quadrature::fixed, 1u << 17);
  EXPECT_NEAR(fixed, half, 1e-6);
}

TEST(CartesianSmoke, CoarseBoxResidualSmall) {
  EXPECT_LE(cartesian_stencil_smoke(kUnit, 48, 8.0), 1e-2);
}

TEST(PropertySuites, DeterministicForFixedSeed) {
  const VerificationReport a = run_property_suites(0);
  const VerificationReport b = run_property_suites(0);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].name, b.checks[i].name);
    EXPECT_EQ(a.checks[i].measured, b.checks[i].measured);
    EXPECT_EQ(a.checks[i].pass, b.checks[i].pass);
  }
}

TEST(PropertySuites, OnlyTheFarFieldRadiusPinsFail) {
  // the exponential-tail bound pinned at r >= 5 starts holding only near
  // r ~ 5.5 (phi) / 5.2 (E); everything else must pass
  const VerificationReport rep = run_property_suites(0);
  std::set<std::string> failed;
  for (const auto& c : rep.checks)
    if (!c.pass) failed.insert(c.name);
  const std::set<std::string> expected = {"closed.farfield_phi_exp_bound",
                                          "closed.farfield_E_exp_bound"};
  EXPECT_EQ(failed, expected);
}

TEST(PropertySuites, SeedVariationStillPassesEverythingElse) {
  const VerificationReport rep = run_property_suites(12345);
  for (const auto& c : rep.checks) {
    if (c.name.rfind("closed.farfield", 0) == 0) continue;
    EXPECT_TRUE(c.pass) << c.name << " measured " << c.measured;
  }
}

TEST(VerifierChecks, AllPass) {
  const VerificationReport rep = run_verifier_checks();
  for (const auto& c : rep.checks)
    EXPECT_TRUE(c.pass) << c.name << " measured " << c.measured;
}

TEST(Report, OverallIsConjunction) {
  VerificationReport rep;
  rep.add_max("a", 0.5, 1.0);
  EXPECT_TRUE(rep.overall());
  rep.add_min("b", 1.5, 1.9);
  EXPECT_FALSE(rep.overall());
}
