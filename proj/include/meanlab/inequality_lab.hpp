#ifndef MEANLAB_INEQUALITY_LAB_HPP
#define MEANLAB_INEQUALITY_LAB_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meanlab/scalar_means.hpp"

namespace meanlab {

inline constexpr double kDefaultChainTolerance = 1e-12;

struct ChainViolation {
  std::size_t index;  // ordering values[index] <= values[index + 1] fails
  double gap;         // values[index] - values[index + 1] > 0
};

/// An ordered list of values that is asserted to be nondecreasing.
struct ChainReport {
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<ChainViolation> violations;
  double tolerance = kDefaultChainTolerance;

  bool holds() const noexcept { return violations.empty(); }
};

/// Builds a report; v[i] <= v[i+1] holds iff v[i+1] - v[i] >= -tol max(1, |v[i+1]|).
inline ChainReport make_chain(std::vector<std::string> labels,
                              std::vector<double> values, double tol) {
  ChainReport report{std::move(labels), std::move(values), {}, tol};
  for (std::size_t i = 0; i + 1 < report.values.size(); ++i) {
    const double lo = report.values[i];
    const double hi = report.values[i + 1];
    const double slack = tol * std::max(1.0, std::abs(hi));
    if (!(hi - lo >= -slack)) report.violations.push_back({i, lo - hi});
  }
  return report;
}

/// G <= G^{2/3} A^{1/3} <= L <= B_{1/3} <= (2/3) G + (1/3) A <= A.
inline ChainReport fundamental_chain(const ScalarPair& p,
                                     double tol = kDefaultChainTolerance) {
  return make_chain({"G", "K_2/3", "L", "B_1/3", "H_2/3", "A"},
                    {geometric(p), bridge(2.0 / 3.0, p), logarithmic(p),
                     binomial(1.0 / 3.0, p), heron(2.0 / 3.0, p), arithmetic(p)},
                    tol);
}

struct ParameterBounds {
  double lower;  // G^t A^{1-t}
  double logarithmic;
  double upper;  // s G + (1 - s) A
  bool holds;
};

/// Checks G^t A^{1-t} <= L <= s G + (1-s) A. Guaranteed when t >= 2/3, s <= 2/3.
inline ParameterBounds bounds_with_parameters(double t, double s,
                                              const ScalarPair& p,
                                              double tol = kDefaultChainTolerance) {
  detail::check_unit_interval(t, "bounds_with_parameters: t");
  detail::check_unit_interval(s, "bounds_with_parameters: s");
  const double lower = bridge(t, p);
  const double l = logarithmic(p);
  const double upper = heron(s, p);
  const auto report = make_chain({"lower", "L", "upper"}, {lower, l, upper}, tol);
  return {lower, l, upper, report.holds()};
}

namespace detail {

// Both ratios are even functions of z = log(x) / 2; coefficients of z^2 .. z^12.
inline constexpr double kLogRatioSeries[] = {
    -2.0 / 45.0,         19.0 / 2835.0,           -23.0 / 17010.0,
    619.0 / 1871100.0,   -469897.0 / 5108103000.0, 2553983.0 / 91945854000.0};
inline constexpr double kDiffRatioSeries[] = {
    1.0 / 90.0,       -1.0 / 2520.0,             1.0 / 75600.0,
    -1.0 / 2395008.0, 691.0 / 54486432000.0,     -1.0 / 2668723200.0};
inline constexpr double kRatioSeriesRadius = 0.2;

template <std::size_t N>
double even_series(const double (&coeffs)[N], double z) {
  const double z2 = z * z;
  double acc = 0.0;
  for (std::size_t k = N; k-- > 0;) acc = (acc + coeffs[k]) * z2;
  return 2.0 / 3.0 + acc;
}

inline double log_cosh(double z) {
  z = std::abs(z);
  if (z > 20.0) return z - std::numbers::ln2 + std::log1p(std::exp(-2.0 * z));
  const double sh = std::sinh(z / 2.0);
  return std::log1p(2.0 * sh * sh);
}

inline double half_log_arg(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("ratio functions require finite x > 0, got " + std::to_string(x));
  return std::log(x) / 2.0;
}

}  // namespace detail

/// log(L/A) / log(G/A) at (x, 1); the x -> 1 limit is 2/3.
inline double log_ratio(double x) {
  const double z = std::abs(detail::half_log_arg(x));
  if (z < detail::kRatioSeriesRadius) return detail::even_series(detail::kLogRatioSeries, z);
  // L/A = tanh(z)/z, G/A = 1/cosh(z)
  return std::log(z / std::tanh(z)) / detail::log_cosh(z);
}

/// (A - L) / (A - G) at (x, 1); the x -> 1 limit is 2/3.
inline double diff_ratio(double x) {
  const double z = std::abs(detail::half_log_arg(x));
  if (z < detail::kRatioSeriesRadius) return detail::even_series(detail::kDiffRatioSeries, z);
  const double sh = std::sinh(z / 2.0);
  const double one_minus_sech = 2.0 * sh * sh / std::cosh(z);
  return (1.0 - std::tanh(z) / z) / one_minus_sech;
}

/// Log-spaced base grid on [x_min, x_max] plus a geometric refinement
/// x = exp(+-2 * ratio^k), k = 1..refine_levels, toward x = 1. When
/// `points` is set it is used verbatim.
struct GridSpec {
  double x_min = 1e-6;
  double x_max = 1e6;
  std::size_t count = 100000;
  std::size_t refine_levels = 12;
  double refine_ratio = 0.1;
  std::optional<std::vector<double>> points;

  std::vector<double> build() const {
    if (points) return *points;
    if (!(x_min > 0.0) || !(x_max >= x_min) || count < 1)
      throw DomainError("GridSpec: need 0 < x_min <= x_max and count >= 1");
    std::vector<double> grid;
    grid.reserve(count + 2 * refine_levels);
    const double l0 = std::log(x_min);
    const double l1 = std::log(x_max);
    for (std::size_t i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      grid.push_back(std::exp(l0 + f * (l1 - l0)));
    }
    double step = 1.0;
    for (std::size_t k = 0; k < refine_levels; ++k) {
      step *= refine_ratio;
      grid.push_back(std::exp(2.0 * step));
      grid.push_back(std::exp(-2.0 * step));
    }
    return grid;
  }
};

struct ScanResult {
  std::vector<double> grid;
  std::vector<double> ratio_values;
  double extremum = 0.0;
  double extremum_location = 0.0;
};

enum class ScanDirection { Max, Min };

template <typename Fn>
ScanResult scan(const std::vector<double>& grid, Fn&& fn, ScanDirection dir) {
  if (grid.empty()) throw DomainError("scan: empty grid");
  ScanResult result;
  result.grid = grid;
  result.ratio_values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = fn(grid[i]);
    result.ratio_values.push_back(v);
    const bool better = i == 0 || (dir == ScanDirection::Max ? v > result.extremum
                                                             : v < result.extremum);
    if (better) {
      result.extremum = v;
      result.extremum_location = grid[i];
    }
  }
  return result;
}

/// The t-scan reports sup log_ratio (the infimum admissible t); the s-scan
/// reports inf diff_ratio (the supremum admissible s).
inline std::pair<ScanResult, ScanResult> scan_sharp_constants(const GridSpec& spec) {
  const auto grid = spec.build();
  return {scan(grid, log_ratio, ScanDirection::Max),
          scan(grid, diff_ratio, ScanDirection::Min)};
}

/// Refinement order m >= 1 of the fundamental chain.
class RefinementOrder {
 public:
  explicit RefinementOrder(int m) : m_(m) {
    if (m < 1) throw DomainError("refinement order must be >= 1, got " + std::to_string(m));
  }
  int value() const noexcept { return m_; }

 private:
  int m_;
};

/// Five-term chain obtained by substituting x = (a/b)^{1/m} into the
/// fundamental inequalities: two lower bounds, L, two upper bounds.
inline ChainReport refined_chain(RefinementOrder order, const ScalarPair& p,
                                 double tol = kDefaultChainTolerance) {
  const int m = order.value();
  const double md = m;
  const double la = std::log(p.a());
  const double lb = std::log(p.b());
  auto term = [&](double ea, double eb) { return std::exp(ea * la + eb * lb); };

  double odd_sum = 0.0;  // sum_{k=1}^m a^{(2k-1)/(2m)} b^{(2m-2k+1)/(2m)}
  double low_sum = 0.0;  // sum_{k=1}^m a^{(m-k)/m} b^{(k-1)/m}
  for (int k = 1; k <= m; ++k) {
    odd_sum += term((2.0 * k - 1.0) / (2.0 * md), (2.0 * md - (2.0 * k - 1.0)) / (2.0 * md));
    low_sum += term((md - k) / md, (k - 1.0) / md);
  }
  double full_sum = 0.0;  // sum_{k=0}^m a^{k/m} b^{(m-k)/m}
  for (int k = 0; k <= m; ++k) full_sum += term(k / md, (md - k) / md);
  const double trimmed = full_sum - arithmetic(p);

  const double am = std::exp(la / md);
  const double bm = std::exp(lb / md);
  const double lower1 = odd_sum / md;
  const double lower2 = low_sum / md * std::cbrt(am * (am + bm) * bm / 2.0);
  const double upper1 = 2.0 / (3.0 * md) * odd_sum + trimmed / (3.0 * md);
  const double upper2 = trimmed / md;
  return make_chain({"lower_G", "lower_K", "L", "upper_H", "upper_A"},
                    {lower1, lower2, logarithmic(p), upper1, upper2}, tol);
}

/// Heinz/Heron ordering: true iff one of
///   (c1) 0 <= s <= 1/2, 1/2 <= v <= 1, 2v - 1 <= (pi/2) / (pi - acos(s/(1-s)))
///   (c2) 0 <= s <= 1/2, 0 <= v <= 1/2, 1 - 2v <= same threshold
///   (c3) s = 1, v = 1/2.
/// The threshold comparison admits 1e-12 of rounding slack.
inline bool heinz_heron_condition(double s, double v) {
  detail::check_unit_interval(s, "heinz_heron_condition: s");
  detail::check_unit_interval(v, "heinz_heron_condition: v");
  if (s == 1.0) return v == 0.5;
  if (s > 0.5) return false;
  const double threshold =
      (std::numbers::pi / 2.0) / (std::numbers::pi - std::acos(std::min(1.0, s / (1.0 - s))));
  const double spread = v >= 0.5 ? 2.0 * v - 1.0 : 1.0 - 2.0 * v;
  return spread <= threshold + 1e-12;
}

/// rho = sqrt(2A / (A + G)), in [1, sqrt 2].
inline double rho(const ScalarPair& p) {
  const double a = arithmetic(p);
  return std::sqrt(2.0 * a / (a + geometric(p)));
}

/// m <= rho m <= H <= rho H <= G <= rho G <= L <= rho L <= A <= rho A <= M.
inline ChainReport rho_chain(const ScalarPair& p, double tol = kDefaultChainTolerance) {
  const double r = rho(p);
  const double h = harmonic(p);
  const double g = geometric(p);
  const double l = logarithmic(p);
  const double a = arithmetic(p);
  return make_chain({"m", "rho*m", "H", "rho*H", "G", "rho*G", "L", "rho*L", "A", "rho*A", "M"},
                    {p.min(), r * p.min(), h, r * h, g, r * g, l, r * l, a, r * a, p.max()},
                    tol);
}

struct ConvexityBound {
  double lhs;
  double rhs;
  bool holds;
};

/// sqrt(2(x+1)) / (sqrt x + 1) * (x+1)/2 <= (x + 1 + |x - 1|) / 2 = max(1, x).
inline ConvexityBound convexity_bound(double x, double tol = kDefaultChainTolerance) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("convexity_bound requires finite x > 0");
  const double lhs = std::sqrt(2.0 * (x + 1.0)) / (std::sqrt(x) + 1.0) * (x + 1.0) / 2.0;
  const double rhs = (x + 1.0 + std::abs(x - 1.0)) / 2.0;
  return {lhs, rhs, rhs - lhs >= -tol * std::max(1.0, rhs)};
}

}  // namespace meanlab

#endif  // MEANLAB_INEQUALITY_LAB_HPP
