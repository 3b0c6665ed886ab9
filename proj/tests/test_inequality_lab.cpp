#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "meanlab/inequality_lab.hpp"
#include "meanlab/rng.hpp"

using namespace meanlab;

TEST(FundamentalChain, Diagonal) {
  const auto r = fundamental_chain(ScalarPair(1.0, 1.0));
  ASSERT_EQ(r.values.size(), 6u);
  for (double v : r.values) EXPECT_NEAR(v, 1.0, 1e-15);
  EXPECT_TRUE(r.holds());
}

TEST(FundamentalChain, EightOne) {
  // mpmath oracle
  const std::vector<double> expected{2.8284271247461901, 3.3019272488946267, 3.3662884287409146,
                                     3.375, 3.3856180831641267, 4.5};
  const auto r = fundamental_chain(ScalarPair(8.0, 1.0));
  ASSERT_EQ(r.values.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_NEAR(r.values[i], expected[i], 1e-14) << r.labels[i];
  EXPECT_TRUE(r.holds());
  EXPECT_TRUE(fundamental_chain(ScalarPair(1e6, 1.0)).holds());
  EXPECT_TRUE(fundamental_chain(ScalarPair(1.0, 1e-6)).holds());
}

TEST(FundamentalChain, ReportsViolations) {
  const auto r = make_chain({"x", "y", "z"}, {1.0, 0.5, 2.0}, 1e-12);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].index, 0u);
  EXPECT_FALSE(r.holds());
}

TEST(Bounds, ParametersAtBoundary) {
  EXPECT_TRUE(bounds_with_parameters(1.0, 0.0, ScalarPair(7.0, 3.0)).holds);
  EXPECT_TRUE(bounds_with_parameters(2.0 / 3.0, 2.0 / 3.0, ScalarPair(4.0, 1.0)).holds);
  bool broken = false;
  for (double x = 1.01; x < 1e6; x *= 1.3)
    broken = broken || !bounds_with_parameters(0.6, 0.7, ScalarPair(x, 1.0)).holds;
  EXPECT_TRUE(broken);
  EXPECT_THROW(bounds_with_parameters(1.2, 0.0, ScalarPair(2.0, 1.0)), DomainError);
}

TEST(Ratios, LimitAndOracles) {
  EXPECT_EQ(log_ratio(1.0), 2.0 / 3.0);
  EXPECT_EQ(diff_ratio(1.0), 2.0 / 3.0);
  struct Row {
    double x, lr, dr;
  };
  // mpmath oracle
  const std::vector<Row> rows{{100.0, 0.52738008658194616, 0.71610921347627246},
                              {1.001, 0.66666665556665691, 0.66666666944166919},
                              {1.00001, 0.66666666666555557, 0.66666666666694444},
                              {2.0, 0.66142271354149759, 0.66799555613047399},
                              {1e6, 0.31098444058322104, 0.85694935923284983}};
  for (const auto& r : rows) {
    EXPECT_NEAR(log_ratio(r.x), r.lr, 1e-13) << r.x;
    EXPECT_NEAR(diff_ratio(r.x), r.dr, 1e-13) << r.x;
  }
  EXPECT_THROW(log_ratio(0.0), DomainError);
  EXPECT_THROW(diff_ratio(-1.0), DomainError);
}

TEST(Ratios, ReciprocalInvariance) {
  for (double x = 1e-6; x < 1e6; x *= 1.7) {
    EXPECT_NEAR(log_ratio(x), log_ratio(1.0 / x), 1e-13) << x;
    EXPECT_NEAR(diff_ratio(x), diff_ratio(1.0 / x), 1e-13) << x;
  }
}

TEST(Ratios, RangeOnFineGrid) {
  for (double x = 1e-8; x < 1e8; x *= 1.01) {
    const double lr = log_ratio(x);
    const double dr = diff_ratio(x);
    EXPECT_GT(lr, 0.0);
    EXPECT_LE(lr, 2.0 / 3.0);
    EXPECT_GE(dr, 2.0 / 3.0);
    EXPECT_LE(dr, 1.0);
  }
}

TEST(Ratios, SeriesBranchIsContinuous) {
  // the series switch sits at |log x| / 2 = 0.2; the direct branch carries ~1e-14 rounding there
  for (double z : {0.1999999, 0.2, 0.2000001}) {
    const double x = std::exp(2.0 * z);
    EXPECT_NEAR(log_ratio(x), log_ratio(std::nextafter(x, 2.0)), 4e-14);
    EXPECT_NEAR(diff_ratio(x), diff_ratio(std::nextafter(x, 2.0)), 4e-14);
  }
}

TEST(Scan, SharpConstants) {
  const auto [t, s] = scan_sharp_constants(GridSpec{});
  EXPECT_GE(t.extremum, 2.0 / 3.0 - 1e-4);
  EXPECT_LE(t.extremum, 2.0 / 3.0);
  EXPECT_GE(s.extremum, 2.0 / 3.0);
  EXPECT_LE(s.extremum, 2.0 / 3.0 + 1e-4);
}

TEST(Scan, DegenerateGrid) {
  GridSpec g;
  g.points = std::vector<double>{1.0};
  const auto [t, s] = scan_sharp_constants(g);
  EXPECT_EQ(t.extremum, 2.0 / 3.0);
  EXPECT_EQ(s.extremum, 2.0 / 3.0);
}

TEST(Scan, RefinementClosesTheGap) {
  GridSpec coarse;
  coarse.count = 1000;
  coarse.refine_levels = 1;
  GridSpec fine = coarse;
  fine.refine_levels = 3;
  const double c = 2.0 / 3.0;
  const auto [tc, sc] = scan_sharp_constants(coarse);
  const auto [tf, sf] = scan_sharp_constants(fine);
  EXPECT_LE(c - tf.extremum, c - tc.extremum);
  EXPECT_LE(sf.extremum - c, sc.extremum - c);
}

TEST(Refined, OrderOneMatchesFundamental) {
  const ScalarPair p(8.0, 1.0);
  const auto r = refined_chain(RefinementOrder(1), p);
  const auto f = fundamental_chain(p);
  ASSERT_EQ(r.values.size(), 5u);
  EXPECT_NEAR(r.values[0], f.values[0], 1e-14);
  EXPECT_NEAR(r.values[1], f.values[1], 1e-14);
  EXPECT_NEAR(r.values[2], f.values[2], 1e-14);
  EXPECT_NEAR(r.values[3], f.values[4], 1e-14);
  EXPECT_NEAR(r.values[4], f.values[5], 1e-14);
}

TEST(Refined, OrderTwoValues) {
  // G^{1/2}((A+G)/2)^{1/2} <= G^{1/3}((A+G)/2)^{2/3} <= L <= ... <= (A+G)/2 at (4,1); mpmath oracle
  const std::vector<double> expected{2.1213203435596426, 2.1633743554611126, 2.1640425613334451,
                                     2.164213562373095, 2.25};
  const auto r = refined_chain(RefinementOrder(2), ScalarPair(4.0, 1.0));
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_NEAR(r.values[i], expected[i], 1e-14) << r.labels[i];
  EXPECT_TRUE(r.holds());
}

TEST(Refined, RejectsZeroOrder) { EXPECT_THROW(RefinementOrder(0), DomainError); }

TEST(Refined, MonotoneInOrder) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(21, seed);
    const ScalarPair p(rng.log_uniform(1e-6, 1e6), rng.log_uniform(1e-6, 1e6));
    for (int m = 1; m <= 6; ++m) {
      const auto a = refined_chain(RefinementOrder(m), p);
      const auto b = refined_chain(RefinementOrder(m + 1), p);
      EXPECT_TRUE(b.holds());
      for (std::size_t k : {0u, 1u})
        EXPECT_GE(b.values[k], a.values[k] - 1e-12 * std::max(1.0, a.values[k])) << m;
      for (std::size_t k : {3u, 4u})
        EXPECT_LE(b.values[k], a.values[k] + 1e-12 * std::max(1.0, a.values[k])) << m;
    }
  }
}

TEST(HeinzHeron, PublishedBands) {
  for (int i = 0; i <= 400; ++i) {
    const double v = i / 400.0;
    EXPECT_EQ(heinz_heron_condition(0.5, v), v >= 0.25 && v <= 0.75) << v;
    EXPECT_EQ(heinz_heron_condition(1.0 / 3.0, v), v >= 0.125 && v <= 0.875) << v;
    EXPECT_TRUE(heinz_heron_condition(0.0, v));
    EXPECT_FALSE(heinz_heron_condition(0.7, v));
    EXPECT_EQ(heinz_heron_condition(1.0, v), v == 0.5);
  }
  EXPECT_TRUE(heinz_heron_condition(0.5, 0.25));
  EXPECT_TRUE(heinz_heron_condition(0.5, 0.75));
  EXPECT_FALSE(heinz_heron_condition(0.5, std::nextafter(0.25, 0.0) - 1e-9));
  EXPECT_THROW(heinz_heron_condition(1.5, 0.5), DomainError);
}

TEST(Rho, ValuesAndRange) {
  EXPECT_EQ(rho(ScalarPair(3.0, 3.0)), 1.0);
  EXPECT_NEAR(rho(ScalarPair(4.0, 1.0)), 1.0540925533894598, 1e-15);
  double prev = 1.0;
  for (double x = 1.5; x < 1e12; x *= 3.0) {
    const double r = rho(ScalarPair(x, 1.0));
    EXPECT_GE(r, prev);
    EXPECT_LE(r, std::sqrt(2.0));
    prev = r;
  }
  EXPECT_NEAR(prev, std::sqrt(2.0), 1e-5);
}

TEST(Rho, Chain) {
  const auto d = rho_chain(ScalarPair(1.0, 1.0));
  for (double v : d.values) EXPECT_NEAR(v, 1.0, 1e-15);
  EXPECT_EQ(rho_chain(ScalarPair(9.0, 1.0)).values.size(), 11u);
  EXPECT_TRUE(rho_chain(ScalarPair(9.0, 1.0)).holds());
}

TEST(Fuzz, ChainsOnLogUniformPairs) {
  for (std::uint64_t seed = 0; seed < 20000; ++seed) {
    Rng rng(22, seed);
    const ScalarPair p(rng.log_uniform(1e-6, 1e6), rng.log_uniform(1e-6, 1e6));
    ASSERT_TRUE(fundamental_chain(p).holds()) << p.a() << " " << p.b();
    ASSERT_TRUE(rho_chain(p).holds()) << p.a() << " " << p.b();
  }
}

TEST(Convexity, Bound) {
  const auto one = convexity_bound(1.0);
  EXPECT_DOUBLE_EQ(one.lhs, 1.0);
  EXPECT_DOUBLE_EQ(one.rhs, 1.0);
  EXPECT_TRUE(one.holds);
  const auto four = convexity_bound(4.0);
  EXPECT_NEAR(four.lhs, 2.6352313834736494, 1e-14);
  EXPECT_EQ(four.rhs, 4.0);
  EXPECT_TRUE(four.holds);
  for (double x = 1e-6; x < 1e6; x *= 1.1) EXPECT_TRUE(convexity_bound(x).holds) << x;
  EXPECT_THROW(convexity_bound(0.0), DomainError);
}
