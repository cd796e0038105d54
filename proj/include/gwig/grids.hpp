#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwig/linalg.hpp"

namespace gwig {

/// Uniform radial grid r_i = r_min + i h carrying named sampled fields.
struct RadialGrid {
  std::size_t n = 0;
  double h = 0.0;
  double r_min = 0.0;
  std::map<std::string, Vec> fields;

  RadialGrid(std::size_t n_nodes, double r_min_in, double r_max) {
    if (n_nodes < 8) throw std::invalid_argument("RadialGrid: need at least 8 nodes");
    if (!(r_min_in >= 0.0) || !(r_max > r_min_in))
      throw std::invalid_argument("RadialGrid: require 0 <= r_min < r_max");
    n = n_nodes;
    r_min = r_min_in;
    h = (r_max - r_min_in) / static_cast<double>(n_nodes - 1);
  }

  double r(std::size_t i) const { return r_min + static_cast<double>(i) * h; }
  double r_max() const { return r(n - 1); }
  bool has_origin() const { return r_min == 0.0; }

  Vec nodes() const {
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = r(i);
    return out;
  }

  Vec& add_field(const std::string& name) {
    auto [it, inserted] = fields.try_emplace(name, Vec(n, 0.0));
    if (!inserted) it->second.assign(n, 0.0);
    return it->second;
  }

  const Vec& field(const std::string& name) const {
    auto it = fields.find(name);
    if (it == fields.end())
      throw std::out_of_range("RadialGrid: no field named '" + name + "'");
    return it->second;
  }
};

/// Uniform 1+1D spacetime grid, row-major in (t, x). Holds dt/dx <= 1, the
/// unit-speed CFL bound the residual checks are calibrated for.
struct SpacetimeGrid1p1 {
  std::size_t nt = 0, nx = 0;
  double dt = 0.0, dx = 0.0;
  std::map<std::string, Vec> fields;

  SpacetimeGrid1p1(std::size_t nt_in, std::size_t nx_in, double t_extent, double x_extent) {
    if (nt_in < 4 || nx_in < 4)
      throw std::invalid_argument("SpacetimeGrid1p1: need at least 4 nodes per axis");
    if (!(t_extent > 0.0) || !(x_extent > 0.0))
      throw std::invalid_argument("SpacetimeGrid1p1: extents must be positive");
    nt = nt_in;
    nx = nx_in;
    dt = t_extent / static_cast<double>(nt - 1);
    dx = x_extent / static_cast<double>(nx - 1);
    if (dt > dx * (1.0 + 1e-12))
      throw std::invalid_argument("SpacetimeGrid1p1: dt/dx exceeds the CFL bound 1");
  }

  std::size_t size() const { return nt * nx; }
  std::size_t idx(std::size_t it, std::size_t ix) const { return it * nx + ix; }
  double t(std::size_t it) const { return static_cast<double>(it) * dt; }
  double x(std::size_t ix) const { return static_cast<double>(ix) * dx; }

  Vec& add_field(const std::string& name) {
    auto [it, inserted] = fields.try_emplace(name, Vec(size(), 0.0));
    if (!inserted) it->second.assign(size(), 0.0);
    return it->second;
  }

  const Vec& field(const std::string& name) const {
    auto it = fields.find(name);
    if (it == fields.end())
      throw std::out_of_range("SpacetimeGrid1p1: no field named '" + name + "'");
    return it->second;
  }
};

}  // namespace gwig
