#pragma once

// Affine tangent/cotangent transforms with anisotropic Weyl weights, the
// induced metric map, observer representations, and dilation densities.
// Everything here is pure value-semantics algebra on small dense objects.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "gwig/linalg.hpp"

namespace gwig {

// kappa is a free affinity parameter on [0, 1); exact 1 is a collapsed state
// that only the forward transform may represent.
inline constexpr double kKappaEps = 1e-12;

inline void require_kappa(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0 - kKappaEps))
    throw std::domain_error("kappa must lie in [0, 1 - 1e-12], got " +
                            std::to_string(kappa));
}

enum class KappaLambdaDirection { kappa_to_lambda, lambda_to_kappa };

/// Converts between the affinity parameter kappa in [0,1) and the dilation
/// function lambda in [0,inf) via e^{-lambda} = 1 - kappa.
inline double kappa_lambda_roundtrip(double x, KappaLambdaDirection dir) {
  if (dir == KappaLambdaDirection::kappa_to_lambda) {
    require_kappa(x);
    return -std::log1p(-x);
  }
  if (!(x >= 0.0)) throw std::domain_error("lambda must be >= 0");
  return -std::expm1(-x);
}

/// Per-axis dilation exponents z and per-component field weights w.
struct WeylWeights {
  Vec z;
  Vec w;

  WeylWeights(Vec z_in, Vec w_in) : z(std::move(z_in)), w(std::move(w_in)) {
    if (z.empty() || z.size() != w.size())
      throw std::invalid_argument("WeylWeights: z and w must be non-empty, equal length");
    for (double v : z)
      if (!std::isfinite(v)) throw std::invalid_argument("WeylWeights: non-finite z entry");
    for (double v : w)
      if (!std::isfinite(v)) throw std::invalid_argument("WeylWeights: non-finite w entry");
  }

  std::size_t dim() const { return z.size(); }
};

/// A (kappa, lambda) pair kept consistent with e^{-lambda} = 1 - kappa.
class DilationScalar {
 public:
  static DilationScalar from_kappa(double kappa) {
    require_kappa(kappa);
    return DilationScalar(kappa, -std::log1p(-kappa), true);
  }

  static DilationScalar from_lambda(double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("DilationScalar: lambda must be >= 0");
    return DilationScalar(-std::expm1(-lambda), lambda, true);
  }

  DilationScalar(double kappa, double lambda) : kappa_(kappa), lambda_(lambda) {
    require_kappa(kappa);
    if (!(lambda >= 0.0)) throw std::domain_error("DilationScalar: lambda must be >= 0");
    const double resid = std::fabs(std::exp(-lambda) - (1.0 - kappa));
    if (resid > 4e-16 * std::max(1.0, std::exp(-lambda)))
      throw std::invalid_argument("DilationScalar: e^{-lambda} != 1 - kappa");
  }

  double kappa() const { return kappa_; }
  double lambda() const { return lambda_; }

 private:
  DilationScalar(double k, double l, bool) : kappa_(k), lambda_(l) {}
  double kappa_;
  double lambda_;
};

/// Diagonal affine tensor K_j = 1 - (1-kappa)^{w_j} together with the fixed
/// point (the dark/primary field components) of the bundle morphism.
struct AffineKappaTensor {
  Vec entries;      // K_j in [0, 1]
  Vec fixed_point;  // v_d or alpha^d components

  std::size_t dim() const { return entries.size(); }
};

inline AffineKappaTensor kappa_tensor(double kappa, const Vec& w, Vec fixed_point) {
  require_kappa(kappa);
  if (w.size() != fixed_point.size())
    throw std::invalid_argument("kappa_tensor: w and fixed_point length mismatch");
  const double log_one_minus_kappa = std::log1p(-kappa);
  Vec entries(w.size());
  for (std::size_t j = 0; j < w.size(); ++j)
    entries[j] = -std::expm1(w[j] * log_one_minus_kappa);
  return AffineKappaTensor{std::move(entries), std::move(fixed_point)};
}

/// v_hat_j = (1 - K_j) v_j + K_j (fixed_point)_j. K_j = 1 is a valid collapsed
/// state here: the output is pinned to the fixed point.
inline Vec forward_transform(const Vec& v, const AffineKappaTensor& K) {
  if (v.size() != K.dim())
    throw std::invalid_argument("forward_transform: dimension mismatch");
  Vec out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    out[j] = (1.0 - K.entries[j]) * v[j] + K.entries[j] * K.fixed_point[j];
  return out;
}

inline Vec inverse_transform(const Vec& v_hat, const AffineKappaTensor& K) {
  if (v_hat.size() != K.dim())
    throw std::invalid_argument("inverse_transform: dimension mismatch");
  Vec out(v_hat.size());
  for (std::size_t j = 0; j < v_hat.size(); ++j) {
    const double one_minus_k = 1.0 - K.entries[j];
    if (one_minus_k <= 0.0)
      throw std::domain_error("inverse_transform: K_j = 1 collapses the space");
    out[j] = (v_hat[j] - K.entries[j] * K.fixed_point[j]) / one_minus_k;
  }
  return out;
}

/// Affine map x -> linear x + offset.
struct AffineMap {
  Mat linear;
  Vec offset;

  Vec apply(const Vec& v) const {
    Vec out = linear.apply(v);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += offset[i];
    return out;
  }

  /// this(inner(x))
  AffineMap compose(const AffineMap& inner) const {
    AffineMap out{linear * inner.linear, linear.apply(inner.offset)};
    for (std::size_t i = 0; i < out.offset.size(); ++i) out.offset[i] += offset[i];
    return out;
  }

  AffineMap inverse() const {
    Mat li = linear.inverse();
    Vec o = li.apply(offset);
    for (double& v : o) v = -v;
    return AffineMap{std::move(li), std::move(o)};
  }
};

/// The map h with h(v_hat) = alpha_hat for alpha = g(v), taking
/// alpha^d = g(v_d). Linear part D g D^{-1} with D = diag((1-kappa)^{w_j});
/// the offset vanishes exactly when the weights are all equal or g is
/// diagonal, and is nonzero in general.
inline AffineMap induced_metric(const Mat& g, double kappa, const Vec& w, const Vec& v_d) {
  require_kappa(kappa);
  const std::size_t d = g.dim();
  if (w.size() != d || v_d.size() != d)
    throw std::invalid_argument("induced_metric: dimension mismatch");
  g.inverse();  // reject singular g up front

  const double log_one_minus_kappa = std::log1p(-kappa);
  Vec D(d), K(d);
  for (std::size_t j = 0; j < d; ++j) {
    D[j] = std::exp(w[j] * log_one_minus_kappa);
    K[j] = 1.0 - D[j];
  }

  Mat conj(d);  // D g D^{-1}
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) conj(i, j) = g(i, j) * (D[i] / D[j]);

  // offset = K (g v_d) - (D g D^{-1}) (K v_d)
  Vec gvd = g.apply(v_d);
  Vec kvd(d);
  for (std::size_t j = 0; j < d; ++j) kvd[j] = K[j] * v_d[j];
  Vec off = conj.apply(kvd);
  for (std::size_t i = 0; i < d; ++i) off[i] = K[i] * gvd[i] - off[i];

  return AffineMap{std::move(conj), std::move(off)};
}

/// Diagonal entries chi_j = (1-kappa)^{z_j} of the dilation tensor.
inline Vec dilation_tensor(double kappa, const Vec& z) {
  require_kappa(kappa);
  const double log_one_minus_kappa = std::log1p(-kappa);
  Vec chi(z.size());
  for (std::size_t j = 0; j < z.size(); ++j)
    chi[j] = std::exp(z[j] * log_one_minus_kappa);
  return chi;
}

/// The transformed metric in its two observer representations:
/// (g_W)_ij = chi_j g_ij on the standard dual frame, and
/// (g_R)_ij = chi_i^{-1} g_ij on the dilated one.
struct MetricRep {
  Mat g;
  Mat g_hat_W;
  Mat g_hat_R;
};

inline MetricRep metric_representations(const Mat& g, double kappa, const Vec& z) {
  require_kappa(kappa);
  if (z.size() != g.dim())
    throw std::invalid_argument("metric_representations: z length mismatch");
  if (!g.is_symmetric())
    throw std::invalid_argument("metric_representations: g must be symmetric");
  const Vec chi = dilation_tensor(kappa, z);
  const std::size_t d = g.dim();
  MetricRep rep{g, Mat(d), Mat(d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      rep.g_hat_W(i, j) = chi[j] * g(i, j);
      rep.g_hat_R(i, j) = g(i, j) / chi[i];
    }
  return rep;
}

enum class Observer { R, W };

/// Pairing of a transformed 1-form with a transformed vector as seen by the
/// given observer. The W observer picks up one dilation factor per component.
inline double observer_pairing(const Vec& alpha_hat, const Vec& v_hat, double kappa,
                               const Vec& z, Observer obs) {
  if (alpha_hat.size() != v_hat.size() || alpha_hat.size() != z.size())
    throw std::invalid_argument("observer_pairing: length mismatch");
  require_kappa(kappa);
  double s = 0.0;
  if (obs == Observer::R) {
    for (std::size_t j = 0; j < z.size(); ++j) s += alpha_hat[j] * v_hat[j];
  } else {
    const Vec chi = dilation_tensor(kappa, z);
    for (std::size_t j = 0; j < z.size(); ++j) s += chi[j] * alpha_hat[j] * v_hat[j];
  }
  return s;
}

/// sigma = (1-kappa)^{-(1/2) sum z_j}; satisfies sigma^2 |det chi| = 1.
inline double dilation_density(double kappa, const Vec& z) {
  require_kappa(kappa);
  double zsum = 0.0;
  for (double v : z) zsum += v;
  return std::exp(-0.5 * zsum * std::log1p(-kappa));
}

}  // namespace gwig
