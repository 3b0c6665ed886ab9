#ifndef MEANLAB_NORMS_HPP
#define MEANLAB_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "meanlab/inequality_lab.hpp"
#include "meanlab/matrix_core.hpp"
#include "meanlab/matrix_means.hpp"

namespace meanlab {

inline constexpr double kDefaultNormTolerance = 1e-9;

/// Singular values (nonincreasing) and their prefix sums, the Ky Fan norms.
struct SingularProfile {
  std::vector<double> values;
  std::vector<double> partial_sums;
};

/// Singular values from the symmetric embedding [[0, X], [X^T, 0]], whose
/// eigenvalues are +-sigma_i. This keeps absolute accuracy ~ eps ||X|| even for
/// small sigma_i, unlike the eigenvalues of X^T X.
inline SingularProfile singular_values(const GeneralMatrix& x) {
  if (!x.all_finite()) throw DomainError("singular_values: non-finite entries");
  const std::size_t n = x.size();
  Matrix embed(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      embed(i, n + j) = x(i, j);
      embed(n + j, i) = x(i, j);
    }
  const auto spec = eig_sym(SymMatrix(embed));
  SingularProfile out;
  out.values.assign(spec.values.begin(), spec.values.begin() + static_cast<std::ptrdiff_t>(n));
  for (double& s : out.values) s = std::max(s, 0.0);
  double acc = 0.0;
  for (double s : out.values) out.partial_sums.push_back(acc += s);
  return out;
}

enum class NormFamily { KyFan, Schatten, Frobenius, Operator, Trace };

struct NormKind {
  NormFamily family;
  double parameter = 0.0;  // k for KyFan, p for Schatten

  static NormKind ky_fan(std::size_t k) { return {NormFamily::KyFan, static_cast<double>(k)}; }
  static NormKind schatten(double p) { return {NormFamily::Schatten, p}; }
  static NormKind frobenius() { return {NormFamily::Frobenius}; }
  static NormKind op() { return {NormFamily::Operator}; }
  static NormKind trace() { return {NormFamily::Trace}; }
};

inline double norm(const NormKind& kind, const SingularProfile& sv) {
  const std::size_t n = sv.values.size();
  if (n == 0) return 0.0;
  switch (kind.family) {
    case NormFamily::KyFan: {
      const double k = kind.parameter;
      if (!(k >= 1.0 && k <= static_cast<double>(n)) || k != std::floor(k))
        throw DomainError("KyFan(k) requires integer k in [1, n]");
      return sv.partial_sums[static_cast<std::size_t>(k) - 1];
    }
    case NormFamily::Schatten: {
      const double p = kind.parameter;
      if (!(p >= 1.0)) throw DomainError("Schatten(p) requires p >= 1");
      const double top = sv.values.front();
      if (top == 0.0) return 0.0;
      double sum = 0.0;
      for (double s : sv.values) sum += std::pow(s / top, p);
      return top * std::pow(sum, 1.0 / p);
    }
    case NormFamily::Frobenius: return norm(NormKind::schatten(2.0), sv);
    case NormFamily::Operator: return sv.values.front();
    case NormFamily::Trace: return sv.partial_sums.back();
  }
  throw DomainError("unknown norm family");
}

inline double norm(const NormKind& kind, const GeneralMatrix& x) {
  return norm(kind, singular_values(x));
}

/// Fan dominance: KyFan(k)(Y) <= KyFan(k)(Z) + tol for every k, which is
/// equivalent to |||Y||| <= |||Z||| for every unitarily invariant norm.
inline bool ky_fan_dominates(const GeneralMatrix& y, const GeneralMatrix& z,
                             double tol = kDefaultNormTolerance) {
  if (y.size() != z.size()) throw std::invalid_argument("ky_fan_dominates: dimension mismatch");
  const auto sy = singular_values(y);
  const auto sz = singular_values(z);
  for (std::size_t k = 0; k < sy.partial_sums.size(); ++k)
    if (!(sy.partial_sums[k] <= sz.partial_sums[k] + tol)) return false;
  return true;
}

/// X / ||X||_2; the zero matrix is returned unchanged.
inline GeneralMatrix unit_normalized(const GeneralMatrix& x) {
  const double f = x.frobenius();
  return f > 0.0 ? x * (1.0 / f) : x;
}

/// ||S^{1/2} X T^{1/2}||_2 <= ||K_{2/3}(S,T)X||_2 <= ||int S^v X T^{1-v} dv||_2
///   <= ||H_{2/3}(S,T)X||_2.
inline ChainReport hs_chain_check(const PsdMatrix& s, const PsdMatrix& t, const GeneralMatrix& x,
                                  double tol = kDefaultNormTolerance) {
  const double g = explicit_map(MeanKind::geometric(), s, t, x).frobenius();
  const double k = hadamard_mean(MeanKind::bridge(2.0 / 3.0), s, t, x).frobenius();
  const double l = explicit_map(MeanKind::logarithmic(), s, t, x).frobenius();
  const double h = hadamard_mean(MeanKind::heron(2.0 / 3.0), s, t, x).frobenius();
  return make_chain({"G", "K_2/3", "L", "H_2/3"}, {g, k, l, h}, tol);
}

struct KrBoundVerdict {
  bool lower;  // |||S^{1/2} X T^{1/2}||| <= |||K_r(S,T)X|||
  bool upper;  // |||K_r(S,T)X||| <= |||SX + XT||| / 2
  bool holds() const noexcept { return lower && upper; }
};

inline KrBoundVerdict ui_bound_check_kr_detail(double r, const PsdMatrix& s, const PsdMatrix& t,
                                               const GeneralMatrix& x,
                                               double tol = kDefaultNormTolerance) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("ui_bound_check_Kr: r must lie in [0,1]");
  const auto g = explicit_map(MeanKind::geometric(), s, t, x);
  const auto k = hadamard_mean(MeanKind::bridge(r), s, t, x);
  const auto a = explicit_map(MeanKind::arithmetic(), s, t, x);
  return {ky_fan_dominates(g, k, tol), ky_fan_dominates(k, a, tol)};
}

/// Both Fan-dominance relations G <= K_r <= A on the given instance.
inline bool ui_bound_check_Kr(double r, const PsdMatrix& s, const PsdMatrix& t,
                              const GeneralMatrix& x, double tol = kDefaultNormTolerance) {
  return ui_bound_check_kr_detail(r, s, t, x, tol).holds();
}

}  // namespace meanlab

#endif  // MEANLAB_NORMS_HPP
