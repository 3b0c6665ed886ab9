#ifndef MEANLAB_KERNEL_POSDEF_HPP
#define MEANLAB_KERNEL_POSDEF_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "meanlab/anneal.hpp"
#include "meanlab/inequality_lab.hpp"
#include "meanlab/matrix_core.hpp"
#include "meanlab/rng.hpp"
#include "meanlab/scalar_means.hpp"

namespace meanlab {

// Kernel catalog. Each is an even function of t.

/// t (cosh t)^{1-r} / sinh t = K_r(e^{2t},1) / L(e^{2t},1).
struct PhiR { double r; };
/// (cosh st)^{1/s} / ((1-s) + s cosh t) = B_s / Hhat_s.
struct PsiS { double s; };
/// ((1-s) + s cosh t) / (cosh st)^{1/s} = Hhat_s / B_s.
struct XiS { double s; };
/// (t / sinh t) (cosh pt)^{1/p} = B_p / L.
struct EtaP { double p; };
/// (1 / cosh t)^c.
struct SechPow { double c; };
/// cosh(at) / cosh(bt).
struct CoshRatio { double a; double b; };
/// 1 / (beta + cosh t), beta > -1.
struct ShiftedSech { double beta; };
/// sinh t / (t (beta + cosh t)), beta > -1.
struct SinhSech { double beta; };
/// M1(e^{2t}, 1) / M2(e^{2t}, 1).
struct RatioOfMeans { MeanKind numerator; MeanKind denominator; };

using KernelFamily =
    std::variant<PhiR, PsiS, XiS, EtaP, SechPow, CoshRatio, ShiftedSech, SinhSech, RatioOfMeans>;

namespace detail {

inline double t_over_sinh(double t) {
  t = std::abs(t);
  if (t < 1e-8) return 1.0 - t * t / 6.0;
  if (t > 700.0) return std::exp(std::log(t) - t + std::numbers::ln2);
  return t / std::sinh(t);
}

// (cosh(s t))^{1/s}; the s -> 0 limit is 1.
inline double cosh_root(double s, double t) {
  if (s == 0.0) return 1.0;
  return std::exp(log_cosh(s * t) / s);
}

inline void check_family(const KernelFamily& f) {
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        auto finite = [](double x, const char* what) {
          if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
        };
        if constexpr (std::is_same_v<K, PhiR>) {
          finite(k.r, "phi: r");
        } else if constexpr (std::is_same_v<K, PsiS> || std::is_same_v<K, XiS>) {
          check_unit_interval(k.s, "psi/xi: s");
        } else if constexpr (std::is_same_v<K, EtaP>) {
          finite(k.p, "eta: p");
        } else if constexpr (std::is_same_v<K, SechPow>) {
          if (!(k.c >= 0.0) || !std::isfinite(k.c)) throw DomainError("sechpow: c must be >= 0");
        } else if constexpr (std::is_same_v<K, CoshRatio>) {
          finite(k.a, "coshratio: a");
          finite(k.b, "coshratio: b");
        } else if constexpr (std::is_same_v<K, ShiftedSech> || std::is_same_v<K, SinhSech>) {
          if (!(k.beta > -1.0) || !std::isfinite(k.beta))
            throw DomainError("shifted sech: beta must be > -1");
        }
      },
      f);
}

}  // namespace detail

/// Evaluates the kernel at t; exactly even in t.
inline double eval_kernel(const KernelFamily& family, double t) {
  detail::check_family(family);
  if (!std::isfinite(t)) throw DomainError("eval_kernel: t must be finite");
  t = std::abs(t);
  return std::visit(
      [t](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        using detail::log_cosh;
        if constexpr (std::is_same_v<K, PhiR>) {
          return detail::t_over_sinh(t) * std::exp((1.0 - k.r) * log_cosh(t));
        } else if constexpr (std::is_same_v<K, PsiS>) {
          return detail::cosh_root(k.s, t) / ((1.0 - k.s) + k.s * std::cosh(t));
        } else if constexpr (std::is_same_v<K, XiS>) {
          return ((1.0 - k.s) + k.s * std::cosh(t)) / detail::cosh_root(k.s, t);
        } else if constexpr (std::is_same_v<K, EtaP>) {
          return detail::t_over_sinh(t) * detail::cosh_root(k.p, t);
        } else if constexpr (std::is_same_v<K, SechPow>) {
          return std::exp(-k.c * log_cosh(t));
        } else if constexpr (std::is_same_v<K, CoshRatio>) {
          return std::exp(log_cosh(k.a * t) - log_cosh(k.b * t));
        } else if constexpr (std::is_same_v<K, ShiftedSech>) {
          return 1.0 / (k.beta + std::cosh(t));
        } else if constexpr (std::is_same_v<K, SinhSech>) {
          return 1.0 / (detail::t_over_sinh(t) * (k.beta + std::cosh(t)));
        } else {
          // homogeneity: M(e^{2t}, 1) = e^t M(e^t, e^{-t})
          const ScalarPair pair(std::exp(t), std::exp(-t));
          return evaluate(k.numerator, pair) / evaluate(k.denominator, pair);
        }
      },
      family);
}

inline constexpr double kDefaultPsdRelativeTolerance = 1e-8;

struct EigenReport {
  std::vector<double> points;
  SymMatrix gram;
  std::vector<double> eigenvalues;  // nonincreasing
  double min_eigenvalue = 0.0;
  double threshold = 0.0;  // psd iff min_eigenvalue >= -threshold
  bool psd = true;
};

/// Gram matrix [phi(t_i - t_j)] and its spectrum. The PSD verdict uses the
/// scale-aware threshold rel_tol * n * |phi(0)|.
inline EigenReport gram(const KernelFamily& family, const std::vector<double>& points,
                        double rel_tol = kDefaultPsdRelativeTolerance) {
  const std::size_t n = points.size();
  if (n == 0) throw DomainError("gram: need at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(points[i])) throw DomainError("gram: points must be finite");
    for (std::size_t j = 0; j < i; ++j)
      if (points[i] == points[j]) throw DomainError("gram: points must be distinct");
  }
  const double diag = eval_kernel(family, 0.0);
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = diag;
    for (std::size_t j = 0; j < i; ++j) {
      const double v = eval_kernel(family, points[i] - points[j]);
      if (!std::isfinite(v))
        throw DomainError("gram: kernel value not finite at difference " +
                          std::to_string(points[i] - points[j]));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  EigenReport report;
  report.points = points;
  report.gram = SymMatrix(g);
  auto spec = eig_sym(report.gram);
  report.eigenvalues = std::move(spec.values);
  report.min_eigenvalue = report.eigenvalues.back();
  report.threshold = rel_tol * static_cast<double>(n) * std::abs(diag);
  report.psd = report.min_eigenvalue >= -report.threshold;
  return report;
}

/// Uniform random point sets in [lo, hi].
struct PointRange {
  double lo = 0.0;
  double hi = 10.0;
};

struct FamilyCheck {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_min_eigenvalue = 0.0;  // divided by the report threshold scale n |phi(0)|
  std::vector<double> worst_points;
  bool all_psd() const noexcept { return failures == 0; }
};

/// Samples `trials` random point sets of size n and records the most negative
/// normalized Gram eigenvalue. For a family inside its positive definite
/// region a failure indicates a bug.
inline FamilyCheck known_family_check(const KernelFamily& family, std::size_t n_points,
                                      std::size_t trials, std::uint64_t seed,
                                      double rel_tol = kDefaultPsdRelativeTolerance,
                                      PointRange range = {}) {
  FamilyCheck out;
  out.worst_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(seed, trial);
    std::vector<double> pts(n_points);
    for (double& p : pts) p = rng.uniform(range.lo, range.hi);
    const auto report = gram(family, pts, rel_tol);
    ++out.trials;
    if (!report.psd) ++out.failures;
    const double normalized = report.min_eigenvalue / (report.threshold / rel_tol);
    if (normalized < out.worst_min_eigenvalue) {
      out.worst_min_eigenvalue = normalized;
      out.worst_points = pts;
    }
  }
  return out;
}

/// Lattice t_i = i h, i = 1..n, for the spacings h = 1 first, then k/4 for
/// k = 1, 2, ... until the budget of lattices is used.
struct IntegerGrid {};
struct RandomUniform {
  PointRange range;
};
/// Coordinate-wise simulated annealing on the normalized minimum eigenvalue,
/// started from the unit lattice.
struct Anneal {
  double step = 0.5;
};
/// IntegerGrid, then RandomUniform over [0, 10], then Anneal, each with the
/// full budget, stopping at the first witness.
struct Cascade {};

using SearchStrategy = std::variant<IntegerGrid, RandomUniform, Anneal, Cascade>;

struct Witness {
  std::vector<double> points;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  std::string strategy;
};

namespace detail {

inline double normalized_min_eig(const KernelFamily& f, const std::vector<double>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(pts[i] - pts[j]) < 1e-9) return std::numeric_limits<double>::infinity();
  try {
    const auto r = gram(f, pts);
    return r.min_eigenvalue / (r.threshold / kDefaultPsdRelativeTolerance);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline std::vector<double> lattice(std::size_t n, double h) {
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i + 1) * h;
  return pts;
}

struct Candidate {
  std::vector<double> points;
  double score = std::numeric_limits<double>::infinity();
  void offer(std::vector<double> pts, double s) {
    if (s < score) {
      score = s;
      points = std::move(pts);
    }
  }
};

inline Candidate search_lattice(const KernelFamily& f, std::size_t n, std::size_t budget) {
  Candidate best;
  best.offer(lattice(n, 1.0), normalized_min_eig(f, lattice(n, 1.0)));
  std::size_t used = 1;
  for (std::size_t k = 1; used < budget; ++k) {
    if (k == 4) continue;  // h = 1 already tried
    auto pts = lattice(n, static_cast<double>(k) / 4.0);
    const double s = normalized_min_eig(f, pts);
    best.offer(std::move(pts), s);
    ++used;
  }
  return best;
}

inline Candidate search_random(const KernelFamily& f, std::size_t n, std::size_t budget,
                               std::uint64_t seed, PointRange range) {
  Candidate best;
  for (std::size_t trial = 0; trial < budget; ++trial) {
    Rng rng(seed, trial);
    std::vector<double> pts(n);
    for (double& p : pts) p = rng.uniform(range.lo, range.hi);
    const double s = normalized_min_eig(f, pts);
    best.offer(std::move(pts), s);
  }
  return best;
}

inline Candidate search_anneal(const KernelFamily& f, std::size_t n, std::size_t budget,
                               std::uint64_t seed, double step) {
  Rng rng(seed, 0x616e6e65616cULL);
  auto energy = [&](const std::vector<double>& pts) { return normalized_min_eig(f, pts); };
  auto propose = [&](const std::vector<double>& pts, Rng& r, double temperature) {
    std::vector<double> next = pts;
    const auto j = static_cast<std::size_t>(r.next() % next.size());
    const double scale = step * std::sqrt(temperature / 1e-2);
    next[j] += scale * r.normal();
    return next;
  };
  const auto result = anneal(lattice(n, 1.0), energy, propose,
                             AnnealSchedule{std::max<std::size_t>(budget, 1), 1e-2, 1e-6}, rng);
  Candidate best;
  best.offer(result.best, result.best_energy);
  return best;
}

}  // namespace detail

/// Searches for a point set whose Gram matrix has an eigenvalue below
/// -rel_tol * n * phi(0). A returned witness is re-verified by a fresh gram()
/// call; std::nullopt means none was found within the budget, which is not a
/// proof of positive definiteness.
inline std::optional<Witness> search_counterexample(const KernelFamily& family, std::size_t n,
                                                    const SearchStrategy& strategy,
                                                    std::size_t budget, std::uint64_t seed = 0,
                                                    double rel_tol = kDefaultPsdRelativeTolerance) {
  if (n < 2) throw DomainError("search_counterexample: n must be >= 2");
  if (budget < 1) throw DomainError("search_counterexample: budget must be >= 1");
  detail::check_family(family);

  auto verify = [&](const detail::Candidate& c, const char* name) -> std::optional<Witness> {
    if (c.points.empty()) return std::nullopt;
    const auto report = gram(family, c.points, rel_tol);
    if (report.psd) return std::nullopt;
    return Witness{c.points, report.min_eigenvalue, report.threshold, name};
  };

  return std::visit(
      [&](const auto& s) -> std::optional<Witness> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IntegerGrid>) {
          return verify(detail::search_lattice(family, n, budget), "integer-grid");
        } else if constexpr (std::is_same_v<S, RandomUniform>) {
          return verify(detail::search_random(family, n, budget, seed, s.range), "random-uniform");
        } else if constexpr (std::is_same_v<S, Anneal>) {
          return verify(detail::search_anneal(family, n, budget, seed, s.step), "anneal");
        } else {
          if (auto w = verify(detail::search_lattice(family, n, budget), "integer-grid")) return w;
          if (auto w = verify(detail::search_random(family, n, budget, seed, PointRange{}),
                              "random-uniform"))
            return w;
          return verify(detail::search_anneal(family, n, budget, seed, 0.5), "anneal");
        }
      },
      strategy);
}

// Family spec strings, e.g. "phi:r=0.6667", "coshratio:a=1,b=2",
// "ratio:L/heron:s=0.6".

namespace detail {

inline double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw DomainError("cannot parse number '" + std::string(text) + "'");
  return value;
}

inline std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

struct ParsedName {
  std::string name;
  std::vector<std::pair<std::string, double>> params;

  double get(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    throw DomainError("missing parameter '" + key + "' for '" + name + "'");
  }
};

// "name" or "name:k=v,k=v"
inline ParsedName parse_name(std::string_view text) {
  ParsedName out;
  const auto colon = text.find(':');
  out.name = std::string(text.substr(0, colon));
  if (colon == std::string_view::npos) return out;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw DomainError("expected key=value in '" + std::string(text) + "'");
    out.params.emplace_back(std::string(item.substr(0, eq)), parse_number(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

}  // namespace detail

/// "A", "G", "H", "L", "binomial:p=..", "heron:s=..", "heron-hat:s=..",
/// "heinz:v=..", "bridge:r=..", "lehmer:alpha=..", "powerdiff:u=..".
inline MeanKind parse_mean_kind(std::string_view text) {
  const auto p = detail::parse_name(text);
  if (p.name == "A") return MeanKind::arithmetic();
  if (p.name == "G") return MeanKind::geometric();
  if (p.name == "H") return MeanKind::harmonic();
  if (p.name == "L") return MeanKind::logarithmic();
  if (p.name == "binomial") return MeanKind::binomial(p.get("p"));
  if (p.name == "heron") return MeanKind::heron(p.get("s"));
  if (p.name == "heron-hat") return MeanKind::heron_hat(p.get("s"));
  if (p.name == "heinz") return MeanKind::heinz(p.get("v"));
  if (p.name == "bridge") return MeanKind::bridge(p.get("r"));
  if (p.name == "lehmer") return MeanKind::lehmer(p.get("alpha"));
  if (p.name == "powerdiff") return MeanKind::power_diff(p.get("u"));
  throw DomainError("unknown mean '" + p.name + "'");
}

inline std::string format_mean_kind(const MeanKind& kind) {
  const std::string v = detail::format_number(kind.parameter());
  switch (kind.family()) {
    case MeanFamily::Arithmetic: return "A";
    case MeanFamily::Geometric: return "G";
    case MeanFamily::Harmonic: return "H";
    case MeanFamily::Logarithmic: return "L";
    case MeanFamily::Binomial: return "binomial:p=" + v;
    case MeanFamily::Heron: return "heron:s=" + v;
    case MeanFamily::HeronHat: return "heron-hat:s=" + v;
    case MeanFamily::Heinz: return "heinz:v=" + v;
    case MeanFamily::Bridge: return "bridge:r=" + v;
    case MeanFamily::Lehmer: return "lehmer:alpha=" + v;
    case MeanFamily::PowerDiff: return "powerdiff:u=" + v;
  }
  return "?";
}

inline KernelFamily parse_kernel_family(std::string_view text) {
  KernelFamily out;
  if (text.substr(0, 6) == "ratio:") {
    const std::string_view body = text.substr(6);
    const auto slash = body.find('/');
    if (slash == std::string_view::npos)
      throw DomainError("ratio family needs 'ratio:<mean>/<mean>'");
    out = RatioOfMeans{parse_mean_kind(body.substr(0, slash)), parse_mean_kind(body.substr(slash + 1))};
  } else {
    const auto p = detail::parse_name(text);
    if (p.name == "phi") out = PhiR{p.get("r")};
    else if (p.name == "psi") out = PsiS{p.get("s")};
    else if (p.name == "xi") out = XiS{p.get("s")};
    else if (p.name == "eta") out = EtaP{p.get("p")};
    else if (p.name == "sechpow") out = SechPow{p.get("c")};
    else if (p.name == "coshratio") out = CoshRatio{p.get("a"), p.get("b")};
    else if (p.name == "shiftedsech") out = ShiftedSech{p.get("beta")};
    else if (p.name == "sinhsech") out = SinhSech{p.get("beta")};
    else throw DomainError("unknown kernel family '" + p.name + "'");
  }
  detail::check_family(out);
  return out;
}

inline std::string format_kernel_family(const KernelFamily& family) {
  using detail::format_number;
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PhiR>) return "phi:r=" + format_number(k.r);
        else if constexpr (std::is_same_v<K, PsiS>) return "psi:s=" + format_number(k.s);
        else if constexpr (std::is_same_v<K, XiS>) return "xi:s=" + format_number(k.s);
        else if constexpr (std::is_same_v<K, EtaP>) return "eta:p=" + format_number(k.p);
        else if constexpr (std::is_same_v<K, SechPow>) return "sechpow:c=" + format_number(k.c);
        else if constexpr (std::is_same_v<K, CoshRatio>)
          return "coshratio:a=" + format_number(k.a) + ",b=" + format_number(k.b);
        else if constexpr (std::is_same_v<K, ShiftedSech>)
          return "shiftedsech:beta=" + format_number(k.beta);
        else if constexpr (std::is_same_v<K, SinhSech>)
          return "sinhsech:beta=" + format_number(k.beta);
        else
          return "ratio:" + format_mean_kind(k.numerator) + "/" + format_mean_kind(k.denominator);
      },
      family);
}

struct WitnessEntry {
  std::string claim;
  std::string family;
  std::optional<Witness> witness;
  bool found() const noexcept { return witness.has_value(); }
};

/// Concrete negative-eigenvalue witnesses for the "only if" directions of the
/// ordering results, plus the published counterexamples.
inline std::vector<WitnessEntry> necessity_witnesses(std::size_t n = 8, std::size_t budget = 200,
                                                     std::uint64_t seed = 0) {
  struct Claim {
    const char* text;
    KernelFamily family;
    std::optional<std::vector<double>> fixed_points;
    std::size_t size;
  };
  const std::vector<Claim> claims = {
      {"L not<= H_s for s=0.6 (Heron bound needs s<=1/2)",
       RatioOfMeans{MeanKind::logarithmic(), MeanKind::heron(0.6)}, std::nullopt, n},
      {"L not<= H_s for s=0.7 (Heron bound needs s<=1/2)",
       RatioOfMeans{MeanKind::logarithmic(), MeanKind::heron(0.7)}, std::nullopt, n},
      {"H_0.9 not<= H_0.8 (Heron monotonicity needs s'<=1/2)",
       RatioOfMeans{MeanKind::heron(0.9), MeanKind::heron(0.8)}, std::nullopt, n},
      {"B_1/3 not<= H_2/3", RatioOfMeans{MeanKind::binomial(1.0 / 3.0), MeanKind::heron(2.0 / 3.0)},
       std::nullopt, n},
      {"K_2/3 not<= L at t=(1,2,3)", PhiR{2.0 / 3.0}, std::vector<double>{1, 2, 3}, 3},
      {"K_0.9 not<= L at t=1..5", PhiR{0.9}, std::vector<double>{1, 2, 3, 4, 5}, 5},
      {"B_p not<= L for p=1/2 > 0", EtaP{0.5}, std::nullopt, n},
      {"B_3/7 not<= L at t=1..7", EtaP{3.0 / 7.0}, std::vector<double>{1, 2, 3, 4, 5, 6, 7}, 7},
      {"L not<= B_3/7 at t=1..7", RatioOfMeans{MeanKind::logarithmic(), MeanKind::binomial(3.0 / 7.0)},
       std::vector<double>{1, 2, 3, 4, 5, 6, 7}, 7},
      {"B_1/4 not<= Hhat_1/4 at t=(1,2,3)", PsiS{0.25}, std::vector<double>{1, 2, 3}, 3},
      {"Hhat_3/4 not<= B_3/4 at t=(1,2,3)", XiS{0.75}, std::vector<double>{1, 2, 3}, 3},
      {"1/(beta+cosh t) not PD at beta=2", ShiftedSech{2.0}, std::nullopt, n},
  };
  std::vector<WitnessEntry> out;
  for (const auto& c : claims) {
    WitnessEntry e{c.text, format_kernel_family(c.family), std::nullopt};
    if (c.fixed_points) {
      const auto report = gram(c.family, *c.fixed_points);
      if (!report.psd)
        e.witness = Witness{*c.fixed_points, report.min_eigenvalue, report.threshold, "fixed"};
    } else {
      e.witness = search_counterexample(c.family, c.size, Cascade{}, budget, seed);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace meanlab

#endif  // MEANLAB_KERNEL_POSDEF_HPP
