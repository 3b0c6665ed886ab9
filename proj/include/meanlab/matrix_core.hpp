#ifndef MEANLAB_MATRIX_CORE_HPP
#define MEANLAB_MATRIX_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meanlab/rng.hpp"
#include "meanlab/scalar_means.hpp"

namespace meanlab {

/// Square dense real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  Matrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
    if (data_.size() != n * n)
      throw std::invalid_argument("Matrix: expected " + std::to_string(n * n) + " entries");
  }
  Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw std::invalid_argument("Matrix: rows must be square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::vector<double>& d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<double>& data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(double c) {
    for (double& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double c) { return a *= c; }
  friend Matrix operator*(double c, Matrix a) { return a *= c; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.require_same(b);
    const std::size_t n = a.n_;
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  /// Entrywise product.
  friend Matrix hadamard(const Matrix& a, const Matrix& b) {
    a.require_same(b);
    Matrix c(a.n_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] * b.data_[k];
    return c;
  }

  double frobenius() const {
    double scale = 0.0;
    for (double x : data_) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (double x : data_) sum += (x / scale) * (x / scale);
    return scale * std::sqrt(sum);
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
  }

  /// max |A - A^T|.
  double asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
  }

  bool operator==(const Matrix&) const = default;

 private:
  void require_same(const Matrix& o) const {
    if (o.n_ != n_)
      throw std::invalid_argument("dimension mismatch: " + std::to_string(n_) + " vs " +
                                  std::to_string(o.n_));
  }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Arbitrary square matrix (the X argument of a matrix mean).
using GeneralMatrix = Matrix;

/// Real symmetric matrix; symmetrized as (M + M^T)/2 on construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m) : m_(m.size()) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
      m_(i, i) = m(i, i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = 0.5 * (m(i, j) + m(j, i));
        m_(i, j) = v;
        m_(j, i) = v;
      }
    }
  }

  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// Eigenvalues (nonincreasing) and matching orthonormal eigenvector columns.
struct Spectrum {
  std::vector<double> values;
  Matrix basis;
};

/// Cyclic Jacobi rotations. Sweeps until the off-diagonal Frobenius mass is
/// below 1e-14 ||M||_F.
inline Spectrum eig_sym(const SymMatrix& sym) {
  const Matrix& m = sym.matrix();
  if (!m.all_finite()) throw DomainError("eig_sym: non-finite entries");
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix v = Matrix::identity(n);
  const double norm = a.frobenius();
  const double target = 1e-14 * norm;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_norm();
    if (off == 0.0 || off <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double x = a(k, p);
          const double y = a(k, q);
          a(k, p) = c * x - s * y;
          a(k, q) = s * x + c * y;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double x = a(p, k);
          const double y = a(q, k);
          a(p, k) = c * x - s * y;
          a(q, k) = s * x + c * y;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double x = v(k, p);
          const double y = v(k, q);
          v(k, p) = c * x - s * y;
          v(k, q) = s * x + c * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  Spectrum out{std::vector<double>(n), Matrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.basis(r, c) = v(r, order[c]);
  }
  return out;
}

/// U diag(f(lambda)) U^T.
template <typename Fn>
Matrix spectral_apply(const Spectrum& spec, Fn&& f) {
  const std::size_t n = spec.values.size();
  std::vector<double> fv(n);
  for (std::size_t i = 0; i < n; ++i) fv[i] = f(spec.values[i]);
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += spec.basis(i, k) * fv[k] * spec.basis(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  return out;
}

inline constexpr double kPsdRelativeTolerance = 1e-10;
/// lambda_min > kInvertibleRatio * lambda_max is required for negative powers.
inline constexpr double kInvertibleRatio = 1e-12;

/// Symmetric positive semidefinite matrix with its decomposition, computed
/// once on construction. Eigenvalues below -1e-10 ||S|| are rejected; the
/// remaining tiny negatives are clamped to zero.
class PsdMatrix {
 public:
  explicit PsdMatrix(const SymMatrix& s) : base_(s), spectrum_(eig_sym(s)) {
    const double scale = spectral_radius();
    for (double& lam : spectrum_.values) {
      if (lam < -kPsdRelativeTolerance * std::max(scale, 1e-300))
        throw DomainError("PsdMatrix: eigenvalue " + std::to_string(lam) +
                          " is negative beyond tolerance");
      lam = std::max(lam, 0.0);
    }
  }
  explicit PsdMatrix(const Matrix& m) : PsdMatrix(SymMatrix(m)) {}

  /// Assembles from a known decomposition; values must be nonincreasing and >= 0.
  PsdMatrix(std::vector<double> values, Matrix basis)
      : spectrum_{std::move(values), std::move(basis)} {
    for (double lam : spectrum_.values)
      if (!(lam >= 0.0)) throw DomainError("PsdMatrix: eigenvalues must be >= 0");
    base_ = SymMatrix(spectral_apply(spectrum_, [](double x) { return x; }));
  }

  std::size_t size() const noexcept { return base_.size(); }
  const SymMatrix& sym() const noexcept { return base_; }
  const Matrix& matrix() const noexcept { return base_.matrix(); }
  const std::vector<double>& eigenvalues() const noexcept { return spectrum_.values; }
  const Matrix& basis() const noexcept { return spectrum_.basis; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }

  double max_eigenvalue() const { return spectrum_.values.empty() ? 0.0 : spectrum_.values.front(); }
  double min_eigenvalue() const { return spectrum_.values.empty() ? 0.0 : spectrum_.values.back(); }

  bool strictly_positive() const {
    return min_eigenvalue() > kInvertibleRatio * max_eigenvalue() && min_eigenvalue() > 0.0;
  }

 private:
  double spectral_radius() const {
    double r = 0.0;
    for (double lam : spectrum_.values) r = std::max(r, std::abs(lam));
    return r;
  }

  SymMatrix base_;
  Spectrum spectrum_;
};

/// S^v via U diag(lambda^v) U^T. Negative v requires S strictly positive.
inline SymMatrix psd_power(const PsdMatrix& s, double v) {
  if (v < 0.0 && !s.strictly_positive())
    throw DomainError("psd_power: negative power of a singular matrix; regularize first");
  if (v == 1.0) return s.sym();
  return SymMatrix(spectral_apply(s.spectrum(), [v](double lam) { return std::pow(lam, v); }));
}

/// S + eps I, sharing the eigenbasis.
inline PsdMatrix regularize(const PsdMatrix& s, double eps) {
  if (!(eps >= 0.0)) throw DomainError("regularize: eps must be >= 0");
  if (eps == 0.0) return s;
  std::vector<double> shifted = s.eigenvalues();
  for (double& lam : shifted) lam += eps;
  return PsdMatrix(std::move(shifted), s.basis());
}

inline double min_eigenvalue(const SymMatrix& m) {
  const auto spec = eig_sym(m);
  return spec.values.empty() ? 0.0 : spec.values.back();
}

/// max |lambda|.
inline double spectral_norm(const SymMatrix& m) {
  const auto spec = eig_sym(m);
  double r = 0.0;
  for (double lam : spec.values) r = std::max(r, std::abs(lam));
  return r;
}

/// A <= B in the Loewner order: lambda_min(B - A) >= -tol max(1, ||B - A||).
inline bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol = 1e-10) {
  if (a.size() != b.size()) throw std::invalid_argument("loewner_leq: dimension mismatch");
  const SymMatrix diff(b.matrix() - a.matrix());
  const auto spec = eig_sym(diff);
  double radius = 0.0;
  for (double lam : spec.values) radius = std::max(radius, std::abs(lam));
  const double lmin = spec.values.empty() ? 0.0 : spec.values.back();
  return lmin >= -tol * std::max(1.0, radius);
}

/// Orthogonal matrix from modified Gram-Schmidt (two passes) on a Gaussian matrix.
inline Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Matrix q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.normal();
  for (std::size_t c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += q(r, prev) * q(r, c);
        for (std::size_t r = 0; r < n; ++r) q(r, c) -= dot * q(r, prev);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += q(r, c) * q(r, c);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) q(r, c) /= norm;
  }
  return q;
}

struct ConditionRange {
  double min_eigenvalue = 1e-2;
  double max_eigenvalue = 1.0;
};

/// Deterministic random PSD matrix: Haar-like orthogonal basis and
/// eigenvalues log-uniform in the condition range.
inline PsdMatrix random_psd(std::size_t n, std::uint64_t seed, ConditionRange range = {}) {
  if (n == 0) throw DomainError("random_psd: n must be >= 1");
  if (!(range.min_eigenvalue > 0.0) || !(range.max_eigenvalue >= range.min_eigenvalue))
    throw DomainError("random_psd: need 0 < min_eigenvalue <= max_eigenvalue");
  Rng rng(seed);
  const Matrix q = random_orthogonal(n, rng);
  std::vector<double> lam(n);
  for (double& x : lam) x = rng.log_uniform(range.min_eigenvalue, range.max_eigenvalue);
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return PsdMatrix(std::move(lam), q);
}

/// Deterministic matrix with standard normal entries.
inline GeneralMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random_matrix: n must be >= 1");
  Rng rng(seed);
  GeneralMatrix x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.normal();
  return x;
}

/// Text format: dimension n, then n*n whitespace-separated entries in row-major order.
inline Matrix read_matrix(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n <= 0) throw std::runtime_error("matrix file: bad dimension header");
  std::vector<double> entries(static_cast<std::size_t>(n * n));
  for (double& x : entries)
    if (!(in >> x)) throw std::runtime_error("matrix file: expected " + std::to_string(n * n) + " entries");
  return Matrix(static_cast<std::size_t>(n), std::move(entries));
}

inline Matrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

inline void write_matrix(std::ostream& out, const Matrix& m) {
  const auto old_precision = out.precision(17);
  out << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace meanlab

#endif  // MEANLAB_MATRIX_CORE_HPP
