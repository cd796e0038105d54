#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwig {

using Vec = std::vector<double>;

/// Dense row-major d x d matrix for small spacetime dimensions (d <= 8).
class Mat {
 public:
  Mat() = default;

  explicit Mat(std::size_t n) : n_(n), a_(n * n, 0.0) { check_dim(n); }

  Mat(std::size_t n, std::initializer_list<double> entries) : Mat(n) {
    if (entries.size() != n * n)
      throw std::invalid_argument("Mat: initializer size does not match dimension");
    std::size_t k = 0;
    for (double v : entries) a_[k++] = v;
  }

  static Mat identity(std::size_t n) {
    Mat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat diagonal(const Vec& d) {
    Mat m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t dim() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Vec apply(const Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("Mat::apply: dimension mismatch");
    Vec out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  Mat operator*(const Mat& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Mat::operator*: dimension mismatch");
    Mat out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) out(i, j) += aik * o(k, j);
      }
    return out;
  }

  bool is_symmetric(double tol = 1e-12) const {
    double scale = 1.0;
    for (double v : a_) scale = std::max(scale, std::fabs(v));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
    return true;
  }

  /// Inverse by Gauss-Jordan with partial pivoting. Throws on singular input.
  Mat inverse() const {
    const std::size_t n = n_;
    Mat a = *this;
    Mat inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
      if (std::fabs(a(piv, col)) < 1e-300)
        throw std::runtime_error("Mat::inverse: singular matrix");
      if (piv != col) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(piv, j), a(col, j));
          std::swap(inv(piv, j), inv(col, j));
        }
      }
      const double d = a(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(col, j) /= d;
        inv(col, j) /= d;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = a(r, col);
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

 private:
  static void check_dim(std::size_t n) {
    if (n < 1 || n > 8)
      throw std::invalid_argument("Mat: dimension must be in [1, 8], got " +
                                  std::to_string(n));
  }

  std::size_t n_ = 0;
  std::vector<double> a_;
};

inline double max_abs(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace gwig
