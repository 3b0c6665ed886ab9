#ifndef MEANLAB_MATRIX_MEANS_HPP
#define MEANLAB_MATRIX_MEANS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "meanlab/matrix_core.hpp"
#include "meanlab/quadrature.hpp"
#include "meanlab/scalar_means.hpp"

namespace meanlab {

inline constexpr std::size_t kDefaultQuadratureNodes = 64;

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, std::size_t c) {
  if (a != b || a != c) throw std::invalid_argument("matrix mean: dimension mismatch");
}

}  // namespace detail

/// M(S,T)X = U ([M(lambda_i, mu_j)] o (U^T X V)) V^T.
/// Zero eigenvalues use the continuous extension of the scalar mean.
inline GeneralMatrix hadamard_mean(const MeanKind& kind, const PsdMatrix& s,
                                   const PsdMatrix& t, const GeneralMatrix& x) {
  detail::require_same_size(s.size(), t.size(), x.size());
  const std::size_t n = s.size();
  const Matrix& u = s.basis();
  const Matrix& v = t.basis();
  Matrix weights(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double lam = s.eigenvalues()[i];
      const double mu = t.eigenvalues()[j];
      const double w = evaluate_extended(kind, lam, mu);
      if (!std::isfinite(w))
        throw DomainError("hadamard_mean: " + to_string(kind) + " undefined at eigenvalue pair (" +
                          std::to_string(lam) + ", " + std::to_string(mu) + ")");
      weights(i, j) = w;
    }
  return u * hadamard(weights, u.transpose() * x * v) * v.transpose();
}

/// Closed forms for means of the form sum_k f_k(a) g_k(b):
///   A: (SX + XT)/2, G: S^{1/2} X T^{1/2}, L: int_0^1 S^v X T^{1-v} dv (Gauss-Legendre),
///   Heinz(v): (S^v X T^{1-v} + S^{1-v} X T^v)/2, Heron(s): s G + (1-s) A.
inline GeneralMatrix explicit_map(const MeanKind& kind, const PsdMatrix& s, const PsdMatrix& t,
                                  const GeneralMatrix& x,
                                  std::size_t nodes = kDefaultQuadratureNodes) {
  detail::require_same_size(s.size(), t.size(), x.size());
  auto sandwich = [&](double a, double b) -> Matrix {
    return psd_power(s, a).matrix() * x * psd_power(t, b).matrix();
  };
  switch (kind.family()) {
    case MeanFamily::Arithmetic:
      return (s.matrix() * x + x * t.matrix()) * 0.5;
    case MeanFamily::Geometric:
      return sandwich(0.5, 0.5);
    case MeanFamily::Logarithmic: {
      if (nodes < 2) throw DomainError("explicit_map: quadrature needs >= 2 nodes");
      const auto rule = gauss_legendre(nodes);
      return integrate_unit(rule, [&](double v) { return sandwich(v, 1.0 - v); });
    }
    case MeanFamily::Heinz: {
      const double v = kind.parameter();
      return (sandwich(v, 1.0 - v) + sandwich(1.0 - v, v)) * 0.5;
    }
    case MeanFamily::Heron: {
      const double w = kind.parameter();
      return sandwich(0.5, 0.5) * w + (s.matrix() * x + x * t.matrix()) * (0.5 * (1.0 - w));
    }
    default:
      throw DomainError("explicit_map: " + to_string(kind) + " has no explicit form");
  }
}

struct HadamardMethod {};
struct ExplicitMethod {};
struct QuadratureMethod {
  std::size_t nodes = kDefaultQuadratureNodes;
};

/// Which scalar mean to lift and by which construction.
struct MatrixMeanSpec {
  MeanKind scalar_mean;
  std::variant<HadamardMethod, ExplicitMethod, QuadratureMethod> method;

  MatrixMeanSpec(MeanKind kind, std::variant<HadamardMethod, ExplicitMethod, QuadratureMethod> m)
      : scalar_mean(kind), method(m) {
    const MeanFamily f = kind.family();
    if (std::holds_alternative<QuadratureMethod>(method) && f != MeanFamily::Logarithmic)
      throw DomainError("MatrixMeanSpec: quadrature applies only to the logarithmic mean");
    if (std::holds_alternative<ExplicitMethod>(method) &&
        f != MeanFamily::Arithmetic && f != MeanFamily::Geometric &&
        f != MeanFamily::Logarithmic && f != MeanFamily::Heinz && f != MeanFamily::Heron)
      throw DomainError("MatrixMeanSpec: " + to_string(kind) + " has no explicit form");
  }
};

inline GeneralMatrix apply(const MatrixMeanSpec& spec, const PsdMatrix& s, const PsdMatrix& t,
                           const GeneralMatrix& x) {
  if (std::holds_alternative<HadamardMethod>(spec.method))
    return hadamard_mean(spec.scalar_mean, s, t, x);
  if (const auto* q = std::get_if<QuadratureMethod>(&spec.method))
    return explicit_map(spec.scalar_mean, s, t, x, q->nodes);
  return explicit_map(spec.scalar_mean, s, t, x);
}

/// S nabla_v T = (1 - v) S + v T.
inline SymMatrix op_arith(double v, const SymMatrix& s, const SymMatrix& t) {
  detail::check_unit_interval(v, "op_arith: v");
  return SymMatrix(s.matrix() * (1.0 - v) + t.matrix() * v);
}

/// The congruence S^{1/2} f(C) S^{1/2} with C = S^{-1/2} T S^{-1/2}, shared by
/// every Kubo-Ando mean below. S must be strictly positive definite.
class Congruence {
 public:
  Congruence(const PsdMatrix& s, const SymMatrix& t) : core_(make_core(s, t)) {
    half_ = psd_power(s, 0.5).matrix();
  }

  template <typename Fn>
  SymMatrix apply(Fn&& f) const {
    return SymMatrix(half_ * spectral_apply(core_.spectrum(), f) * half_);
  }

  const Matrix& half() const noexcept { return half_; }
  const PsdMatrix& core() const noexcept { return core_; }

 private:
  static PsdMatrix make_core(const PsdMatrix& s, const SymMatrix& t) {
    if (s.size() != t.size()) throw std::invalid_argument("operator mean: dimension mismatch");
    if (!s.strictly_positive())
      throw DomainError("operator mean: S must be strictly positive definite; regularize first");
    const Matrix neg = psd_power(s, -0.5).matrix();
    return PsdMatrix(SymMatrix(neg * t.matrix() * neg));
  }

  Matrix half_;
  PsdMatrix core_;
};

/// S #_v T = S^{1/2} (S^{-1/2} T S^{-1/2})^v S^{1/2}.
inline SymMatrix op_geom(double v, const PsdMatrix& s, const SymMatrix& t) {
  detail::check_unit_interval(v, "op_geom: v");
  return Congruence(s, t).apply([v](double c) { return std::pow(c, v); });
}

/// S l T = int_0^1 S #_v T dv by Gauss-Legendre quadrature.
inline SymMatrix op_log(const PsdMatrix& s, const SymMatrix& t,
                        std::size_t nodes = kDefaultQuadratureNodes) {
  if (nodes < 2) throw DomainError("op_log: quadrature needs >= 2 nodes");
  const Congruence frame(s, t);
  const auto rule = gauss_legendre(nodes);
  const Matrix integral = integrate_unit(rule, [&](double v) {
    return frame.apply([v](double c) { return std::pow(c, v); }).matrix();
  });
  return SymMatrix(integral);
}

/// Matrix power mean S^{1/2} ((C^p + I)/2)^{1/p} S^{1/2}; p = 0 is rejected
/// (its limit is op_geom(1/2)).
inline SymMatrix op_power_mean(double p, const PsdMatrix& s, const SymMatrix& t) {
  if (p == 0.0 || !std::isfinite(p))
    throw DomainError("op_power_mean: p must be finite and nonzero; use op_geom(0.5) for p = 0");
  const MeanKind kind = MeanKind::binomial(p);
  return Congruence(s, t).apply([&](double c) { return evaluate_extended(kind, c, 1.0); });
}

struct OperatorChainVerdict {
  /// S#T, (S#_{t/2}T) S^{-1} (S#_{1-t}(S nabla T)), S l T, s S#T + (1-s) S nabla T, S nabla T.
  std::array<Matrix, 5> chain;
  Matrix power_mean;
  /// lambda_min of the symmetric part of chain[k+1] - chain[k] (k = 0..3),
  /// then of power_mean - chain[2]; all after scaling so ||S nabla T|| = 1.
  std::array<double, 5> gaps{};
  /// max |M - M^T| of the middle expression of the chain (normalized scale).
  double middle_asymmetry = 0.0;
  double scale = 1.0;
  double tolerance = 1e-9;

  bool holds() const {
    for (double g : gaps)
      if (!(g >= -tolerance)) return false;
    return true;
  }
};

/// Evaluates both operator chains. S must be positive definite, T positive
/// semidefinite; 2/3 <= t <= 1, 0 <= s <= 2/3, p >= 1/3.
inline OperatorChainVerdict operator_chain_check(const PsdMatrix& s_in, const PsdMatrix& t_in, double t,
                                        double s, double p, double tol = 1e-9,
                                        std::size_t nodes = kDefaultQuadratureNodes) {
  if (!(t >= 2.0 / 3.0 && t <= 1.0)) throw DomainError("operator_chain_check: t must lie in [2/3, 1]");
  if (!(s >= 0.0 && s <= 2.0 / 3.0)) throw DomainError("operator_chain_check: s must lie in [0, 2/3]");
  if (!(p >= 1.0 / 3.0) || !std::isfinite(p))
    throw DomainError("operator_chain_check: p must be >= 1/3");
  if (s_in.size() != t_in.size()) throw std::invalid_argument("operator_chain_check: dimension mismatch");

  OperatorChainVerdict out;
  out.tolerance = tol;
  out.scale = spectral_norm(op_arith(0.5, s_in.sym(), t_in.sym()));
  if (!(out.scale > 0.0)) throw DomainError("operator_chain_check: S nabla T vanishes");
  const PsdMatrix sm(SymMatrix(s_in.matrix() * (1.0 / out.scale)));
  const SymMatrix tm(t_in.matrix() * (1.0 / out.scale));

  const SymMatrix arith = op_arith(0.5, sm.sym(), tm);
  const SymMatrix geo = op_geom(0.5, sm, tm);
  const Matrix left = op_geom(t / 2.0, sm, tm).matrix();
  const Matrix right = op_geom(1.0 - t, sm, arith).matrix();
  const Matrix middle = left * psd_power(sm, -1.0).matrix() * right;
  const SymMatrix logm = op_log(sm, tm, nodes);
  const Matrix heron = geo.matrix() * s + arith.matrix() * (1.0 - s);

  out.chain = {geo.matrix(), middle, logm.matrix(), heron, arith.matrix()};
  out.power_mean = op_power_mean(p, sm, tm).matrix();
  out.middle_asymmetry = middle.asymmetry();
  for (std::size_t k = 0; k < 4; ++k)
    out.gaps[k] = min_eigenvalue(SymMatrix(out.chain[k + 1] - out.chain[k]));
  out.gaps[4] = min_eigenvalue(SymMatrix(out.power_mean - out.chain[2]));
  return out;
}

}  // namespace meanlab

#endif  // MEANLAB_MATRIX_MEANS_HPP
