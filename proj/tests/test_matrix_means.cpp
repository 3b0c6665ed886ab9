#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "meanlab/matrix_means.hpp"

using namespace meanlab;

namespace {

struct Instance {
  PsdMatrix s;
  PsdMatrix t;
  Matrix x;
};

Instance instance(std::size_t n, std::uint64_t seed) {
  return {random_psd(n, 3 * seed), random_psd(n, 3 * seed + 1), random_matrix(n, 3 * seed + 2)};
}

double gap(const Matrix& a, const Matrix& b) { return (a - b).frobenius(); }

}  // namespace

TEST(Hadamard, IdentityPair) {
  const PsdMatrix i(Matrix::identity(4));
  const Matrix x = random_matrix(4, 1);
  for (const auto& k : {MeanKind::logarithmic(), MeanKind::heron(0.3), MeanKind::lehmer(0.2),
                        MeanKind::binomial(-1.0), MeanKind::power_diff(3.0)})
    EXPECT_LE(gap(hadamard_mean(k, i, i, x), x), 1e-14) << to_string(k);
}

TEST(Hadamard, DiagonalIsEntrywise) {
  const std::vector<double> lam{3.0, 1.0, 0.5};
  const std::vector<double> mu{2.0, 0.7, 0.1};
  const PsdMatrix s(Matrix::diagonal(lam));
  const PsdMatrix t(Matrix::diagonal(mu));
  const Matrix x = random_matrix(3, 2);
  const auto k = MeanKind::bridge(2.0 / 3.0);
  const Matrix out = hadamard_mean(k, s, t, x);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(out(i, j), bridge(2.0 / 3.0, ScalarPair(lam[i], mu[j])) * x(i, j), 1e-14);
}

TEST(Hadamard, ArithmeticMatchesExplicit) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto in = instance(6, seed);
    const Matrix h = hadamard_mean(MeanKind::arithmetic(), in.s, in.t, in.x);
    const Matrix e = (in.s.matrix() * in.x + in.x * in.t.matrix()) * 0.5;
    EXPECT_LE(gap(h, e), 1e-10);
  }
}

TEST(Hadamard, ExplicitAgreement) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto in = instance(1 + seed % 6, seed);
    for (const auto& k : {MeanKind::geometric(), MeanKind::heinz(0.2), MeanKind::heinz(0.5),
                          MeanKind::heron(0.4)})
      EXPECT_LE(gap(hadamard_mean(k, in.s, in.t, in.x), explicit_map(k, in.s, in.t, in.x)), 1e-12)
          << to_string(k);
    EXPECT_LE(gap(hadamard_mean(MeanKind::logarithmic(), in.s, in.t, in.x),
                  explicit_map(MeanKind::logarithmic(), in.s, in.t, in.x)),
              1e-8);
  }
}

TEST(Hadamard, Linearity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto in = instance(5, seed);
    const Matrix y = random_matrix(5, 1000 + seed);
    const double a = 0.7, b = -2.3;
    const auto k = MeanKind::logarithmic();
    const Matrix lhs = hadamard_mean(k, in.s, in.t, in.x * a + y * b);
    const Matrix rhs = hadamard_mean(k, in.s, in.t, in.x) * a + hadamard_mean(k, in.s, in.t, y) * b;
    EXPECT_LE(gap(lhs, rhs), 1e-10);
  }
}

TEST(Hadamard, SingularUsesLimits) {
  const PsdMatrix s(Matrix::diagonal({2.0, 0.0}));
  const PsdMatrix t(Matrix::diagonal({0.0, 3.0}));
  const Matrix x{{1.0, 1.0}, {1.0, 1.0}};
  const Matrix l = hadamard_mean(MeanKind::logarithmic(), s, t, x);
  EXPECT_EQ(l(0, 0), 0.0);
  EXPECT_NEAR(l(0, 1), logarithmic(ScalarPair(2.0, 3.0)), 1e-15);
  EXPECT_EQ(l(1, 1), 0.0);
  EXPECT_THROW(hadamard_mean(MeanKind::logarithmic(), s, t, Matrix::identity(3)),
               std::invalid_argument);
}

TEST(Explicit, GeometricDiagonal) {
  const PsdMatrix s(Matrix::diagonal({4.0, 1.0}));
  const PsdMatrix t(Matrix::diagonal({9.0, 1.0}));
  const Matrix g = explicit_map(MeanKind::geometric(), s, t, Matrix::identity(2));
  EXPECT_NEAR(g(0, 0), 6.0, 1e-14);
  EXPECT_NEAR(g(1, 1), 1.0, 1e-14);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-15);
  EXPECT_THROW(explicit_map(MeanKind::bridge(0.5), s, t, Matrix::identity(2)), DomainError);
}

TEST(Spec, ValidatesMethod) {
  EXPECT_THROW(MatrixMeanSpec(MeanKind::geometric(), QuadratureMethod{}), DomainError);
  EXPECT_THROW(MatrixMeanSpec(MeanKind::lehmer(0.3), ExplicitMethod{}), DomainError);
  const auto in = instance(4, 3);
  const MatrixMeanSpec q(MeanKind::logarithmic(), QuadratureMethod{32});
  const MatrixMeanSpec h(MeanKind::logarithmic(), HadamardMethod{});
  EXPECT_LE(gap(apply(q, in.s, in.t, in.x), apply(h, in.s, in.t, in.x)), 1e-8);
}

TEST(Operator, ArithAndGeomBasics) {
  const auto s = random_psd(4, 11);
  const auto t = random_psd(4, 12);
  EXPECT_EQ(op_arith(0.0, s.sym(), t.sym()).matrix(), s.matrix());
  EXPECT_LE(gap(op_geom(0.0, s, t.sym()), s.matrix()), 1e-13);
  EXPECT_LE(gap(op_geom(0.37, s, s.sym()), s.matrix()), 1e-13);
  EXPECT_LE(gap(op_geom(1.0, s, t.sym()), t.matrix()), 1e-12);
  EXPECT_THROW(op_geom(1.5, s, t.sym()), DomainError);
  EXPECT_THROW(op_geom(0.5, PsdMatrix(Matrix::diagonal({1.0, 0.0})),
                       SymMatrix(Matrix::identity(2))),
               DomainError);
}

TEST(Operator, CommutingReducesToScalar) {
  const std::vector<double> a{3.0, 0.4, 1.0};
  const std::vector<double> b{0.5, 2.0, 1.0};
  const PsdMatrix s(Matrix::diagonal(a));
  const SymMatrix t(Matrix::diagonal(b));
  const Matrix g = op_geom(0.3, s, t);
  const Matrix l = op_log(s, t);
  const Matrix pm = op_power_mean(1.0 / 3.0, s, t);
  for (std::size_t i = 0; i < 3; ++i) {
    const ScalarPair p(a[i], b[i]);
    EXPECT_NEAR(g(i, i), std::pow(a[i], 0.7) * std::pow(b[i], 0.3), 1e-14);
    EXPECT_NEAR(l(i, i), logarithmic(p), 1e-13);
    EXPECT_NEAR(pm(i, i), binomial(1.0 / 3.0, p), 1e-13);
  }
}

TEST(Operator, PowerMean) {
  const auto s = random_psd(5, 21);
  const auto t = random_psd(5, 22);
  EXPECT_LE(gap(op_power_mean(1.0, s, t.sym()), op_arith(0.5, s.sym(), t.sym())), 1e-12);
  EXPECT_LE(gap(op_power_mean(-0.7, s, s.sym()), s.matrix()), 1e-12);
  EXPECT_THROW(op_power_mean(0.0, s, t.sym()), DomainError);
}

TEST(Operator, LogQuadratureConverges) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_psd(6, 50 + 2 * seed);
    const auto t = random_psd(6, 51 + 2 * seed);
    EXPECT_LE(gap(op_log(s, t.sym(), 32), op_log(s, t.sym(), 64)), 1e-10);
    EXPECT_LE(gap(op_log(s, s.sym()), s.matrix()), 1e-12);
  }
  EXPECT_THROW(op_log(random_psd(2, 1), SymMatrix(Matrix::identity(2)), 1), DomainError);
}

TEST(Operator, LoewnerChainAndPowerMonotonicity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_psd(2 + seed % 6, 70 + 2 * seed);
    const auto t = random_psd(2 + seed % 6, 71 + 2 * seed);
    const auto g = op_geom(0.5, s, t.sym());
    const auto l = op_log(s, t.sym());
    const auto a = op_arith(0.5, s.sym(), t.sym());
    EXPECT_TRUE(loewner_leq(g, l, 1e-9));
    EXPECT_TRUE(loewner_leq(l, a, 1e-9));
    const std::vector<double> ps{1.0 / 3.0, 0.5, 1.0, 2.0};
    for (std::size_t k = 0; k + 1 < ps.size(); ++k)
      EXPECT_TRUE(loewner_leq(op_power_mean(ps[k], s, t.sym()), op_power_mean(ps[k + 1], s, t.sym()),
                              1e-9));
  }
}

TEST(Operator, RegularizationConverges) {
  const PsdMatrix s(Matrix{{1.0, 1.0}, {1.0, 1.0}});
  const SymMatrix t(Matrix{{2.0, 0.5}, {0.5, 1.0}});
  std::vector<Matrix> seq;
  for (double eps : {1e-4, 1e-6, 1e-8, 1e-10}) seq.push_back(op_geom(0.5, regularize(s, eps), t));
  // singular S: successive gaps shrink like sqrt(eps)
  for (std::size_t k = 2; k < seq.size(); ++k)
    EXPECT_LT(gap(seq[k], seq[k - 1]), 0.2 * gap(seq[k - 1], seq[k - 2]));
  EXPECT_LT(gap(seq[3], seq[2]), 2e-4);
}

TEST(OperatorChain, IdentityPair) {
  const PsdMatrix i(Matrix::identity(3));
  const auto v = operator_chain_check(i, i, 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0);
  for (const auto& m : v.chain) EXPECT_LE(gap(m, Matrix::identity(3)), 1e-12);
  EXPECT_TRUE(v.holds());
}

TEST(OperatorChain, CommutingMatchesScalarChain) {
  const std::vector<double> a{3.0, 0.4, 1.0, 8.0};
  const std::vector<double> b{0.5, 2.0, 1.0, 1.0};
  const auto v = operator_chain_check(PsdMatrix(Matrix::diagonal(a)), PsdMatrix(Matrix::diagonal(b)),
                                 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0);
  EXPECT_TRUE(v.holds());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const ScalarPair p(a[i], b[i]);
    EXPECT_NEAR(v.chain[2](i, i) * v.scale, logarithmic(p), 1e-12);
    EXPECT_NEAR(v.chain[3](i, i) * v.scale, heron(2.0 / 3.0, p), 1e-12);
    EXPECT_NEAR(v.chain[1](i, i) * v.scale,
                std::pow(geometric(p), 2.0 / 3.0) * std::pow(arithmetic(p), 1.0 / 3.0), 1e-12);
  }
}

TEST(OperatorChain, RandomPairs) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const auto v = operator_chain_check(random_psd(n, 2 * seed), random_psd(n, 2 * seed + 1), 2.0 / 3.0,
                                   2.0 / 3.0, 1.0 / 3.0);
    EXPECT_TRUE(v.holds()) << seed;
    EXPECT_LE(v.middle_asymmetry, 1e-9) << seed;
  }
}

TEST(OperatorChain, ValidatesParameters) {
  const auto s = random_psd(2, 1);
  EXPECT_THROW(operator_chain_check(s, s, 0.5, 0.5, 1.0), DomainError);
  EXPECT_THROW(operator_chain_check(s, s, 0.8, 0.9, 1.0), DomainError);
  EXPECT_THROW(operator_chain_check(s, s, 0.8, 0.5, 0.2), DomainError);
}
