#ifndef MEANLAB_SCALAR_MEANS_HPP
#define MEANLAB_SCALAR_MEANS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace meanlab {

/// Raised for nonpositive inputs and out-of-range mean parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A pair of positive reals (a, b).
class ScalarPair {
 public:
  ScalarPair(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
      throw DomainError("ScalarPair requires finite a > 0 and b > 0, got (" +
                        std::to_string(a) + ", " + std::to_string(b) + ")");
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double ratio() const noexcept { return a_ / b_; }
  double min() const noexcept { return std::min(a_, b_); }
  double max() const noexcept { return std::max(a_, b_); }

 private:
  double a_;
  double b_;
};

namespace detail {

// Every mean below is evaluated on (hi, lo) = (max, min) so that symmetry
// holds bit-exactly.
inline std::pair<double, double> ordered(const ScalarPair& p) {
  return {p.max(), p.min()};
}

// log|expm1(y)|, finite for |y| large.
inline double log_abs_expm1(double y) {
  if (y > 0.0) return y + std::log1p(-std::exp(-y));
  return std::log(-std::expm1(y));
}

// ((x^p + 1) / 2)^(1/p) with x = exp(lx) >= 1, in log space; returns the log.
inline double log_binomial_unit(double p, double lx) {
  // log((e^{p lx} + 1)/2) = m + log1p(expm1(-d)/2), m = max(p lx, 0), d = |p lx|
  const double y = p * lx;
  const double m = std::max(y, 0.0);
  const double d = std::abs(y);
  const double tail = std::log1p(std::expm1(-d) / 2.0);
  return m / p + tail / p;
}

inline void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw DomainError(std::string(name) + " must lie in [0,1], got " +
                      std::to_string(value));
}

}  // namespace detail

inline double arithmetic(const ScalarPair& p) {
  return p.a() / 2.0 + p.b() / 2.0;
}

inline double geometric(const ScalarPair& p) {
  return std::sqrt(p.a()) * std::sqrt(p.b());
}

inline double harmonic(const ScalarPair& p) {
  const auto [hi, lo] = detail::ordered(p);
  // 2ab/(a+b) = 2 lo / (1 + lo/hi)
  return 2.0 * lo / (1.0 + lo / hi);
}

/// Logarithmic mean (a - b) / (log a - log b), with L(a, a) = a.
inline double logarithmic(const ScalarPair& p) {
  const auto [hi, lo] = detail::ordered(p);
  if (hi == lo) return hi;
  const double h = (hi - lo) / lo;
  if (std::log1p(h) < 1e-6) {
    // lo * (1 + h/2 - h^2/12 + h^3/24)
    return lo * (1.0 + h * (0.5 + h * (-1.0 / 12.0 + h / 24.0)));
  }
  return (hi - lo) / std::log1p(h);
}

/// Binomial (power) mean ((a^p + b^p)/2)^(1/p); the p -> 0 limit is G.
inline double binomial(double power, const ScalarPair& p) {
  if (!std::isfinite(power)) throw DomainError("binomial: p must be finite");
  if (std::abs(power) < 1e-8) return geometric(p);
  const auto [hi, lo] = detail::ordered(p);
  const double lx = std::log(hi / lo);
  return lo * std::exp(detail::log_binomial_unit(power, lx));
}

/// Heron mean s G + (1 - s) A.
inline double heron(double s, const ScalarPair& p) {
  detail::check_unit_interval(s, "heron: s");
  return s * geometric(p) + (1.0 - s) * arithmetic(p);
}

/// Flipped Heron mean (1 - s) G + s A.
inline double heron_hat(double s, const ScalarPair& p) {
  detail::check_unit_interval(s, "heron_hat: s");
  return (1.0 - s) * geometric(p) + s * arithmetic(p);
}

/// Heinz mean (a^v b^(1-v) + a^(1-v) b^v) / 2.
inline double heinz(double v, const ScalarPair& p) {
  detail::check_unit_interval(v, "heinz: v");
  if (v == 0.5) return geometric(p);
  const auto [hi, lo] = detail::ordered(p);
  const double lh = std::log(hi);
  const double ll = std::log(lo);
  if (v == 0.0 || v == 1.0) return arithmetic(p);
  return 0.5 * (std::exp(v * lh + (1.0 - v) * ll) +
                std::exp((1.0 - v) * lh + v * ll));
}

/// Geometric bridge K_r = G^r A^(1-r), r in [0, 2].
inline double bridge(double r, const ScalarPair& p) {
  if (!(r >= 0.0 && r <= 2.0))
    throw DomainError("bridge: r must lie in [0,2], got " + std::to_string(r));
  if (r == 0.0) return arithmetic(p);
  if (r == 1.0) return geometric(p);
  return std::exp(r * std::log(geometric(p)) +
                  (1.0 - r) * std::log(arithmetic(p)));
}

/// Lehmer mean (a^alpha + b^alpha) / (a^(alpha-1) + b^(alpha-1)), alpha in [0,1].
inline double lehmer(double alpha, const ScalarPair& p) {
  detail::check_unit_interval(alpha, "lehmer: alpha");
  const auto [hi, lo] = detail::ordered(p);
  const double lx = std::log(hi / lo);
  // lo * (x^alpha + 1) / (x^(alpha-1) + 1)
  return lo * (std::exp(alpha * lx) + 1.0) / (std::exp((alpha - 1.0) * lx) + 1.0);
}

/// Power difference mean ((u-1)/u) (a^u - b^u) / (a^(u-1) - b^(u-1)).
/// Limits: u -> 1 gives L, u -> 0 gives G^2 / L, a == b gives a.
inline double power_diff(double u, const ScalarPair& p) {
  if (!std::isfinite(u)) throw DomainError("power_diff: u must be finite");
  if (std::abs(u - 1.0) < 1e-8) return logarithmic(p);
  if (std::abs(u) < 1e-8) {
    const double g = geometric(p);
    return g * (g / logarithmic(p));
  }
  const auto [hi, lo] = detail::ordered(p);
  if (hi == lo) return hi;
  const double lx = std::log(hi / lo);
  const double num = u * lx;
  const double den = (u - 1.0) * lx;
  // expm1(num)/expm1(den) has sign(u)*sign(u-1); (u-1)/u has the same sign.
  const double log_ratio =
      detail::log_abs_expm1(num) - detail::log_abs_expm1(den);
  return lo * std::abs((u - 1.0) / u) * std::exp(log_ratio);
}

enum class MeanFamily {
  Arithmetic,
  Geometric,
  Harmonic,
  Logarithmic,
  Binomial,
  Heron,
  HeronHat,
  Heinz,
  Bridge,
  Lehmer,
  PowerDiff,
};

/// A mean family plus its parameter. Construct through the named factories,
/// which enforce the parameter domain.
class MeanKind {
 public:
  static MeanKind arithmetic() { return {MeanFamily::Arithmetic, 0.0}; }
  static MeanKind geometric() { return {MeanFamily::Geometric, 0.0}; }
  static MeanKind harmonic() { return {MeanFamily::Harmonic, 0.0}; }
  static MeanKind logarithmic() { return {MeanFamily::Logarithmic, 0.0}; }
  static MeanKind binomial(double p) {
    if (!std::isfinite(p)) throw DomainError("binomial: p must be finite");
    return {MeanFamily::Binomial, p};
  }
  static MeanKind heron(double s) {
    detail::check_unit_interval(s, "heron: s");
    return {MeanFamily::Heron, s};
  }
  static MeanKind heron_hat(double s) {
    detail::check_unit_interval(s, "heron_hat: s");
    return {MeanFamily::HeronHat, s};
  }
  static MeanKind heinz(double v) {
    detail::check_unit_interval(v, "heinz: v");
    return {MeanFamily::Heinz, v};
  }
  static MeanKind bridge(double r) {
    if (!(r >= 0.0 && r <= 2.0))
      throw DomainError("bridge: r must lie in [0,2], got " + std::to_string(r));
    return {MeanFamily::Bridge, r};
  }
  static MeanKind lehmer(double alpha) {
    detail::check_unit_interval(alpha, "lehmer: alpha");
    return {MeanFamily::Lehmer, alpha};
  }
  static MeanKind power_diff(double u) {
    if (!std::isfinite(u)) throw DomainError("power_diff: u must be finite");
    return {MeanFamily::PowerDiff, u};
  }

  MeanFamily family() const noexcept { return family_; }
  double parameter() const noexcept { return parameter_; }
  bool has_parameter() const noexcept {
    return family_ != MeanFamily::Arithmetic && family_ != MeanFamily::Geometric &&
           family_ != MeanFamily::Harmonic && family_ != MeanFamily::Logarithmic;
  }

  bool operator==(const MeanKind&) const = default;

 private:
  MeanKind(MeanFamily f, double param) : family_(f), parameter_(param) {}

  MeanFamily family_;
  double parameter_;
};

inline double evaluate(const MeanKind& kind, const ScalarPair& p) {
  const double q = kind.parameter();
  switch (kind.family()) {
    case MeanFamily::Arithmetic: return arithmetic(p);
    case MeanFamily::Geometric: return geometric(p);
    case MeanFamily::Harmonic: return harmonic(p);
    case MeanFamily::Logarithmic: return logarithmic(p);
    case MeanFamily::Binomial: return binomial(q, p);
    case MeanFamily::Heron: return heron(q, p);
    case MeanFamily::HeronHat: return heron_hat(q, p);
    case MeanFamily::Heinz: return heinz(q, p);
    case MeanFamily::Bridge: return bridge(q, p);
    case MeanFamily::Lehmer: return lehmer(q, p);
    case MeanFamily::PowerDiff: return power_diff(q, p);
  }
  throw DomainError("unknown mean family");
}

/// Continuous extension of a mean to a, b >= 0. Used when spectra contain
/// zero eigenvalues. Returns the limit of M(a, b) as the zero argument
/// approaches 0 from above; M(0, 0) = 0.
inline double evaluate_extended(const MeanKind& kind, double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("evaluate_extended requires finite a, b >= 0, got (" +
                      std::to_string(a) + ", " + std::to_string(b) + ")");
  if (a > 0.0 && b > 0.0) return evaluate(kind, ScalarPair(a, b));
  const double x = std::max(a, b);
  if (x == 0.0) return 0.0;
  const double q = kind.parameter();
  switch (kind.family()) {
    case MeanFamily::Arithmetic: return x / 2.0;
    case MeanFamily::Geometric:
    case MeanFamily::Harmonic:
    case MeanFamily::Logarithmic: return 0.0;
    case MeanFamily::Binomial: return q > 0.0 ? x * std::exp2(-1.0 / q) : 0.0;
    case MeanFamily::Heron: return (1.0 - q) * x / 2.0;
    case MeanFamily::HeronHat: return q * x / 2.0;
    case MeanFamily::Heinz: return (q == 0.0 || q == 1.0) ? x / 2.0 : 0.0;
    case MeanFamily::Bridge: return q == 0.0 ? x / 2.0 : 0.0;
    case MeanFamily::Lehmer: return q == 1.0 ? x / 2.0 : 0.0;
    case MeanFamily::PowerDiff: return q > 1.0 ? (q - 1.0) / q * x : 0.0;
  }
  throw DomainError("unknown mean family");
}

inline std::string to_string(const MeanKind& kind) {
  auto with = [&](const char* name, const char* key) {
    return std::string(name) + ":" + key + "=" + std::to_string(kind.parameter());
  };
  switch (kind.family()) {
    case MeanFamily::Arithmetic: return "A";
    case MeanFamily::Geometric: return "G";
    case MeanFamily::Harmonic: return "H";
    case MeanFamily::Logarithmic: return "L";
    case MeanFamily::Binomial: return with("binomial", "p");
    case MeanFamily::Heron: return with("heron", "s");
    case MeanFamily::HeronHat: return with("heron-hat", "s");
    case MeanFamily::Heinz: return with("heinz", "v");
    case MeanFamily::Bridge: return with("bridge", "r");
    case MeanFamily::Lehmer: return with("lehmer", "alpha");
    case MeanFamily::PowerDiff: return with("powerdiff", "u");
  }
  return "?";
}

}  // namespace meanlab

#endif  // MEANLAB_SCALAR_MEANS_HPP
