#pragma once

// Command implementations behind the `gwig` executable. Exit codes:
// 0 success, 1 verification/runtime failure, 2 usage or config error.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "gwig/closed_forms.hpp"
#include "gwig/config.hpp"
#include "gwig/io.hpp"
#include "gwig/operators.hpp"
#include "gwig/verifier.hpp"
#include "gwig/weyl_core.hpp"

namespace gwig {

inline std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty() || std::filesystem::path(file).is_absolute()) return file;
  return (std::filesystem::path(dir) / file).string();
}

// ---------------------------------------------------------------------------
// particle: closed-form curves as CSV + SVG
// ---------------------------------------------------------------------------

inline int cmd_particle(const RunConfig& cfg, const std::string& out_dir = "") {
  try {
    const ParticleModel model{RegularizedDelta(cfg.a, cfg.beta), cfg.w};
    const std::size_t n = cfg.grid_n;
    const double h = cfg.grid_r_max / static_cast<double>(n);

    const bool dimensional = std::isfinite(cfg.Q) && std::isfinite(cfg.epsilon0);
    std::vector<std::string> header = {"r_breve", "phi_breve", "E_breve", "rho_breve",
                                       "kappa_a", "inv_r", "inv_r2"};
    if (dimensional) {
      header.insert(header.end(), {"r", "phi", "E", "rho"});
    }
    const double phi_a = dimensional ? cfg.Q / (4.0 * M_PI * cfg.epsilon0 * cfg.a) : 0.0;
    const double E_a = dimensional ? phi_a / cfg.a : 0.0;
    const double rho_0 = dimensional ? cfg.Q / (4.0 / 3.0 * M_PI * cfg.a * cfg.a * cfg.a) : 0.0;

    std::vector<Vec> rows;
    Vec rs(n), phis(n), Es(n), rhos(n);
    const KappaProfile prof = model.profile();
    for (std::size_t i = 1; i <= n; ++i) {
      const double r = static_cast<double>(i) * h;
      const double phi = particle_potential(r, model);
      const double E = particle_field(r, model);
      const double rho = particle_charge_density(r, model);
      const double kap = prof.eval(r);
      rs[i - 1] = r;
      phis[i - 1] = phi;
      Es[i - 1] = E;
      rhos[i - 1] = rho;
      Vec row = {r, phi, E, rho, kap, 1.0 / r, 1.0 / (r * r)};
      if (dimensional) {
        row.insert(row.end(), {r * cfg.a, phi * phi_a, E * E_a, rho * rho_0});
      }
      rows.push_back(std::move(row));
    }
    atomic_write_file(join_path(out_dir, cfg.out_csv), render_csv(header, rows));
    atomic_write_file(join_path(out_dir, cfg.out_svg),
                      render_particle_svg(rs, phis, Es, rhos));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "particle: " << e.what() << "\n";
    return 1;
  }
}

// ---------------------------------------------------------------------------
// verify: property suites + solver/charge oracles, written as a report
// ---------------------------------------------------------------------------

inline int cmd_verify(const RunConfig& cfg, const std::string& out_dir = "") {
  try {
    VerificationReport rep = run_property_suites(cfg.seed);
    const VerificationReport extra = run_verifier_checks();
    rep.checks.insert(rep.checks.end(), extra.checks.begin(), extra.checks.end());

    const std::vector<std::pair<std::string, std::string>> header = {
        {"tool", "gwig verify"}, {"seed", std::to_string(cfg.seed)},
        {"a", fmt17(cfg.a)},     {"beta", fmt17(cfg.beta)},
        {"w", fmt17(cfg.w)},
    };
    atomic_write_file(join_path(out_dir, cfg.out_report),
                      render_verification_report(rep, header));
    for (const auto& c : rep.checks) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                << "  measured=" << fmt6(c.measured) << " tol=" << fmt6(c.tolerance);
      if (!c.notes.empty()) std::cout << "  (" << c.notes << ")";
      std::cout << "\n";
    }
    std::cout << (rep.overall() ? "overall: PASS" : "overall: FAIL") << "\n";
    return rep.overall() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 1;
  }
}

// ---------------------------------------------------------------------------
// wave: residual refinement study as CSV
// ---------------------------------------------------------------------------

inline int cmd_wave(const RunConfig& cfg, const std::string& out_dir = "") {
  if (cfg.wave_lambda == "moving") {
    // a time-varying dilation profile is outside the stationary contract
    try {
      SpacetimeGrid1p1 g(17, 33, 0.5, 2.0);
      Vec lam(g.size());
      for (std::size_t it = 0; it < g.nt; ++it)
        for (std::size_t ix = 0; ix < g.nx; ++ix)
          lam[g.idx(it, ix)] = 0.1 * g.t(it) * g.x(ix);
      SpacetimeCoefficients::from_field(g, lam, {2.0, 2.0, 2.0, 2.0}, {1.0, 1.0});
    } catch (const std::invalid_argument& e) {
      std::cerr << "wave: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "wave: moving profile unexpectedly accepted\n";
    return 1;
  }
  try {
    const double bump = (cfg.wave_lambda == "none") ? 0.0 : 0.8;
    std::vector<std::size_t> grids;
    for (std::size_t k = 0; k < cfg.wave_levels; ++k)
      grids.push_back(((cfg.wave_nx - 1) << k) + 1);

    const ConvergenceStudy study = convergence_order(
        [bump](std::size_t nx) {
          return wave_manufactured_residual_with_bump(nx, WaveForm::conjugated, bump);
        },
        grids);

    std::vector<Vec> rows;
    for (std::size_t k = 0; k < study.grid_sizes.size(); ++k) {
      const std::size_t nx = study.grid_sizes[k];
      const std::size_t nt = (nx - 1) / 2 + 1;
      rows.push_back({static_cast<double>(k), static_cast<double>(nt),
                      static_cast<double>(nx), study.spacings[k] / 2.0, study.spacings[k],
                      study.residual_norms[k], study.fitted_order});
    }
    atomic_write_file(
        join_path(out_dir, cfg.out_csv),
        render_csv({"level", "nt", "nx", "dt", "dx", "residual_max", "fitted_order"}, rows));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "wave: " << e.what() << "\n";
    return 1;
  }
}

// ---------------------------------------------------------------------------
// metric: observer representations of a given metric
// ---------------------------------------------------------------------------

inline int cmd_metric(const RunConfig& cfg, std::ostream& out = std::cout) {
  std::size_t d = 1;
  while (d * d < cfg.metric_g.size()) ++d;
  Mat g(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = cfg.metric_g[i * d + j];
  if (!g.is_symmetric()) {
    std::cerr << "metric: g must be symmetric\n";
    return 2;
  }
  Vec z = cfg.metric_z.empty() ? cfg.z : cfg.metric_z;
  if (z.size() < d) z.resize(d, z.back());
  z.resize(d);
  double kappa = cfg.metric_kappa;
  try {
    const MetricRep rep = metric_representations(g, kappa, z);
    const Vec chi = dilation_tensor(kappa, z);
    const double sigma = dilation_density(kappa, z);
    // round-trip the representation invariants before printing
    const double lam = -std::log1p(-kappa);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const double back = std::exp(z[i] * lam) * rep.g_hat_W(i, j) * std::exp(z[j] * lam);
        if (std::fabs(back - rep.g_hat_R(i, j)) >
            1e-12 * std::max(1.0, std::fabs(back))) {
          std::cerr << "metric: representation round-trip failed\n";
          return 1;
        }
      }

    auto print_matrix = [&out, d](const std::string& name, const Mat& m) {
      out << name << " =\n";
      for (std::size_t i = 0; i < d; ++i) {
        out << "  ";
        for (std::size_t j = 0; j < d; ++j) out << fmt6(m(i, j)) << (j + 1 < d ? " " : "");
        out << "\n";
      }
    };
    out << "kappa = " << fmt6(kappa) << "\n";
    out << "z =";
    for (double v : z) out << " " << fmt6(v);
    out << "\n";
    print_matrix("g", rep.g);
    print_matrix("g_hat_W", rep.g_hat_W);
    print_matrix("g_hat_R", rep.g_hat_R);
    out << "chi =";
    for (double v : chi) out << " " << fmt17(v);
    out << "\n";
    out << "sigma = " << fmt17(sigma) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "metric: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gwig
