#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "meanlab/rng.hpp"
#include "meanlab/scalar_means.hpp"

using namespace meanlab;

namespace {

// mpmath at 40 digits, pair (0.3, 7.1)
struct Oracle {
  MeanKind kind;
  double value;
};

const std::vector<Oracle>& oracles() {
  static const std::vector<Oracle> table = {
      {MeanKind::arithmetic(), 3.7},
      {MeanKind::geometric(), 1.4594519519326424},
      {MeanKind::harmonic(), 0.57567567567567568},
      {MeanKind::logarithmic(), 2.1491323462834737},
      {MeanKind::binomial(1.0 / 3.0), 2.1753473176058146},
      {MeanKind::binomial(-2.0), 0.42388584302945537},
      {MeanKind::binomial(3.0), 5.6354154350448629},
      {MeanKind::heron(0.25), 3.1398629879831606},
      {MeanKind::heinz(0.3), 1.7615557029694547},
      {MeanKind::bridge(0.4), 2.5503333796289453},
      {MeanKind::bridge(1.5), 0.91660841614345199},
      {MeanKind::lehmer(0.7), 2.1974832723676304},
      {MeanKind::power_diff(3.0), 4.7414414414414412},
      {MeanKind::power_diff(-1.0), 0.57567567567567568},
      {MeanKind::power_diff(0.5), 1.4594519519326424},
  };
  return table;
}

std::vector<MeanKind> all_kinds() {
  return {MeanKind::arithmetic(),    MeanKind::geometric(),     MeanKind::harmonic(),
          MeanKind::logarithmic(),   MeanKind::binomial(-1.5),  MeanKind::binomial(0.0),
          MeanKind::binomial(1.0 / 3.0), MeanKind::binomial(4.0), MeanKind::heron(0.3),
          MeanKind::heron_hat(0.3),  MeanKind::heinz(0.2),      MeanKind::heinz(0.5),
          MeanKind::bridge(0.0),     MeanKind::bridge(2.0 / 3.0), MeanKind::bridge(1.7),
          MeanKind::lehmer(0.0),     MeanKind::lehmer(0.35),    MeanKind::power_diff(-2.0),
          MeanKind::power_diff(0.0), MeanKind::power_diff(1.0), MeanKind::power_diff(2.5)};
}

}  // namespace

TEST(ScalarPair, RejectsNonPositive) {
  EXPECT_THROW(ScalarPair(0.0, 1.0), DomainError);
  EXPECT_THROW(ScalarPair(1.0, -2.0), DomainError);
  EXPECT_THROW(ScalarPair(std::nan(""), 1.0), DomainError);
  EXPECT_THROW(ScalarPair(INFINITY, 1.0), DomainError);
  EXPECT_DOUBLE_EQ(ScalarPair(2.0, 8.0).ratio(), 0.25);
}

TEST(Classical, DirectFormulas) {
  const ScalarPair p(2.0, 8.0);
  EXPECT_DOUBLE_EQ(arithmetic(p), 5.0);
  EXPECT_DOUBLE_EQ(geometric(p), 4.0);
  EXPECT_DOUBLE_EQ(harmonic(p), 3.2);
}

TEST(Logarithmic, DiagonalAndClosedForm) {
  EXPECT_EQ(logarithmic(ScalarPair(1.0, 1.0)), 1.0);
  EXPECT_NEAR(logarithmic(ScalarPair(std::exp(2.0), 1.0)), 3.1945280494653251, 1e-14);
}

TEST(Logarithmic, NearDiagonalSeries) {
  const double h = 1e-13;
  EXPECT_NEAR(logarithmic(ScalarPair(1.0 + h, 1.0)), 1.0 + 5e-14, 1e-15);
  for (double hh : {1e-8, 3e-9, 1e-10, -1e-8, -4e-11}) {
    const double series = 1.0 + hh / 2.0 - hh * hh / 12.0 + hh * hh * hh / 24.0;
    EXPECT_LE(std::abs(logarithmic(ScalarPair(1.0 + hh, 1.0)) - series), 1e-15) << hh;
  }
}

TEST(Binomial, ClosedFormsAndLimits) {
  EXPECT_NEAR(binomial(1.0 / 3.0, ScalarPair(8.0, 1.0)), 3.375, 1e-14);
  EXPECT_DOUBLE_EQ(binomial(0.0, ScalarPair(2.0, 8.0)), 4.0);
  EXPECT_NEAR(binomial(1.0, ScalarPair(2.0, 8.0)), 5.0, 1e-14);
  EXPECT_NEAR(binomial(1e-9, ScalarPair(2.0, 8.0)), 4.0, 1e-8);
  // huge exponent must not overflow
  EXPECT_NEAR(binomial(400.0, ScalarPair(1e300, 1e299)), 1e300 * std::pow(0.5, 1.0 / 400.0),
              1e286);
}

TEST(Heron, ReducesAndFlips) {
  const ScalarPair p(2.0, 8.0);
  EXPECT_DOUBLE_EQ(heron(0.0, p), 5.0);
  EXPECT_DOUBLE_EQ(heron(1.0, p), 4.0);
  EXPECT_DOUBLE_EQ(heron(0.5, p), 4.5);
  for (double s : {0.0, 0.2, 0.5, 0.9, 1.0}) EXPECT_DOUBLE_EQ(heron(s, p), heron_hat(1.0 - s, p));
  EXPECT_THROW(heron(1.2, p), DomainError);
  EXPECT_THROW(heron_hat(-0.1, p), DomainError);
}

TEST(Heinz, ReducesAndSymmetricInV) {
  const ScalarPair p(2.0, 8.0);
  EXPECT_DOUBLE_EQ(heinz(0.5, p), 4.0);
  EXPECT_DOUBLE_EQ(heinz(0.0, p), 5.0);
  EXPECT_NEAR(heinz(0.25, ScalarPair(16.0, 1.0)), 5.0, 1e-14);
  for (double v : {0.1, 0.3, 0.45}) EXPECT_NEAR(heinz(v, p), heinz(1.0 - v, p), 1e-15);
  EXPECT_THROW(heinz(1.5, p), DomainError);
}

TEST(Bridge, ReducesAndClosedForm) {
  const ScalarPair p(2.0, 8.0);
  EXPECT_DOUBLE_EQ(bridge(0.0, p), 5.0);
  EXPECT_DOUBLE_EQ(bridge(1.0, p), 4.0);
  EXPECT_NEAR(bridge(2.0, p), 3.2, 1e-14);
  EXPECT_NEAR(bridge(2.0 / 3.0, ScalarPair(4.0, 1.0)), 2.1544346900318837, 1e-14);
  EXPECT_THROW(bridge(2.5, p), DomainError);
}

TEST(Lehmer, ReducesToClassical) {
  const ScalarPair p(2.0, 8.0);
  EXPECT_NEAR(lehmer(0.5, p), 4.0, 1e-14);
  EXPECT_NEAR(lehmer(1.0, p), 5.0, 1e-14);
  EXPECT_NEAR(lehmer(0.0, p), 3.2, 1e-14);
  EXPECT_THROW(lehmer(1.1, p), DomainError);
  EXPECT_THROW(MeanKind::lehmer(-0.5), DomainError);
}

TEST(PowerDiff, ReducesAndLimits) {
  const ScalarPair p(2.0, 8.0);
  EXPECT_NEAR(power_diff(2.0, p), 5.0, 1e-14);
  EXPECT_NEAR(power_diff(0.5, p), 4.0, 1e-14);
  EXPECT_NEAR(power_diff(1.0, ScalarPair(std::exp(2.0), 1.0)), 3.1945280494653251, 1e-14);
  const double l = logarithmic(p);
  EXPECT_NEAR(power_diff(0.0, p), 16.0 / l, 1e-13);
  EXPECT_NEAR(power_diff(1.0 + 1e-9, p), l, 1e-8);
  EXPECT_EQ(power_diff(3.0, ScalarPair(2.5, 2.5)), 2.5);
}

TEST(Oracle, HighPrecisionTable) {
  const ScalarPair p(0.3, 7.1);
  for (const auto& o : oracles())
    EXPECT_NEAR(evaluate(o.kind, p), o.value, 4e-15 * o.value) << to_string(o.kind);
}

TEST(Property, SymmetryIsExact) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(11, seed);
    const double a = rng.log_uniform(1e-6, 1e6);
    const double b = rng.log_uniform(1e-6, 1e6);
    for (const auto& k : all_kinds())
      EXPECT_EQ(evaluate(k, ScalarPair(a, b)), evaluate(k, ScalarPair(b, a))) << to_string(k);
  }
}

TEST(Property, Homogeneity) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(12, seed);
    const double a = rng.log_uniform(1e-3, 1e3);
    const double b = rng.log_uniform(1e-3, 1e3);
    const double c = rng.log_uniform(1e-3, 1e3);
    for (const auto& k : all_kinds()) {
      const double base = evaluate(k, ScalarPair(a, b));
      EXPECT_NEAR(evaluate(k, ScalarPair(c * a, c * b)), c * base, 1e-12 * c * base)
          << to_string(k);
    }
  }
}

TEST(Property, Betweenness) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(13, seed);
    const ScalarPair p(rng.log_uniform(1e-6, 1e6), rng.log_uniform(1e-6, 1e6));
    for (const auto& k : all_kinds()) {
      const double v = evaluate(k, p);
      EXPECT_GE(v, p.min() * (1 - 1e-14)) << to_string(k);
      EXPECT_LE(v, p.max() * (1 + 1e-14)) << to_string(k);
    }
  }
}

TEST(Property, ParameterMonotonicity) {
  const std::vector<double> grid{0.0, 0.1, 0.25, 1.0 / 3.0, 0.5, 0.7, 0.9, 1.0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(14, seed);
    const ScalarPair p(rng.log_uniform(1e-4, 1e4), rng.log_uniform(1e-4, 1e4));
    const double slack = 1e-14 * p.max();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double lo = grid[i], hi = grid[i + 1];
      EXPECT_LE(binomial(lo - 2.0, p), binomial(hi - 2.0, p) + slack);
      EXPECT_LE(binomial(lo * 3.0, p), binomial(hi * 3.0, p) + slack);
      EXPECT_GE(bridge(lo * 2.0, p) + slack, bridge(hi * 2.0, p));
      EXPECT_LE(lehmer(lo, p), lehmer(hi, p) + slack);
      EXPECT_GE(heron(lo, p) + slack, heron(hi, p));
    }
  }
}

TEST(Property, Identities) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(15, seed);
    const ScalarPair p(rng.log_uniform(1e-4, 1e4), rng.log_uniform(1e-4, 1e4));
    EXPECT_NEAR(heron(0.5, p), binomial(0.5, p), 1e-13 * heron(0.5, p));
    EXPECT_NEAR(power_diff(0.5, p), geometric(p), 1e-13 * geometric(p));
    EXPECT_NEAR(power_diff(2.0, p), arithmetic(p), 1e-13 * arithmetic(p));
  }
}

TEST(MeanKind, FactoriesValidate) {
  EXPECT_THROW(MeanKind::heron(-0.01), DomainError);
  EXPECT_THROW(MeanKind::heinz(1.01), DomainError);
  EXPECT_THROW(MeanKind::bridge(-1.0), DomainError);
  EXPECT_THROW(MeanKind::binomial(NAN), DomainError);
  EXPECT_THROW(MeanKind::power_diff(INFINITY), DomainError);
  EXPECT_EQ(MeanKind::heron(0.5), MeanKind::heron(0.5));
  EXPECT_FALSE(MeanKind::heron(0.5) == MeanKind::heron_hat(0.5));
}

TEST(Extended, ZeroLimits) {
  EXPECT_DOUBLE_EQ(evaluate_extended(MeanKind::arithmetic(), 3.0, 0.0), 1.5);
  EXPECT_EQ(evaluate_extended(MeanKind::geometric(), 3.0, 0.0), 0.0);
  EXPECT_EQ(evaluate_extended(MeanKind::logarithmic(), 0.0, 3.0), 0.0);
  EXPECT_EQ(evaluate_extended(MeanKind::harmonic(), 0.0, 0.0), 0.0);
  EXPECT_NEAR(evaluate_extended(MeanKind::binomial(1.0), 4.0, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(evaluate_extended(MeanKind::heron(0.25), 4.0, 0.0), 1.5, 1e-15);
  EXPECT_NEAR(evaluate_extended(MeanKind::power_diff(2.0), 4.0, 0.0), 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(evaluate_extended(MeanKind::logarithmic(), 2.0, 8.0),
                   logarithmic(ScalarPair(2.0, 8.0)));
  EXPECT_THROW(evaluate_extended(MeanKind::arithmetic(), -1.0, 1.0), DomainError);
}
