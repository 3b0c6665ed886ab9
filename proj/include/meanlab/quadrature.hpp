#ifndef MEANLAB_QUADRATURE_HPP
#define MEANLAB_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "meanlab/scalar_means.hpp"

namespace meanlab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule mapped to [0, 1]; roots of P_n by Newton iteration.
inline QuadratureRule gauss_legendre(std::size_t count) {
  if (count < 1) throw DomainError("gauss_legendre: need at least one node");
  QuadratureRule rule{std::vector<double>(count), std::vector<double>(count)};
  const std::size_t half = (count + 1) / 2;
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= count; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[count - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[count - 1 - i] = 0.5 * w;
  }
  return rule;
}

/// Integral over [0, 1] of f, where f returns anything closed under + and scalar *.
template <typename Fn>
auto integrate_unit(const QuadratureRule& rule, Fn&& f) {
  auto acc = f(rule.nodes[0]) * rule.weights[0];
  for (std::size_t k = 1; k < rule.nodes.size(); ++k) acc = acc + f(rule.nodes[k]) * rule.weights[k];
  return acc;
}

}  // namespace meanlab

#endif  // MEANLAB_QUADRATURE_HPP
