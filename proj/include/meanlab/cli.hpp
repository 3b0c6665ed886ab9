#ifndef MEANLAB_CLI_HPP
#define MEANLAB_CLI_HPP

// Command layer behind tools/meanlab. Each command returns an Outcome; the
// executable only parses flags and writes the result.

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "meanlab/inequality_lab.hpp"
#include "meanlab/kernel_posdef.hpp"
#include "meanlab/matrix_core.hpp"
#include "meanlab/matrix_means.hpp"
#include "meanlab/norms.hpp"
#include "meanlab/rng.hpp"
#include "meanlab/scalar_means.hpp"

namespace meanlab::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kViolations = 1, kUsage = 2 };

enum class Format { Json, Csv };

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::size_t kMaxListedViolations = 100;

/// Seed default: MEANLAB_SEED if set and numeric, else kDefaultSeed.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("MEANLAB_SEED")) {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size()) return value;
    throw DomainError("MEANLAB_SEED is not an unsigned integer: '" + std::string(text) + "'");
  }
  return kDefaultSeed;
}

struct KernelScanSpec {
  std::string family = "phi";  // phi | psi | xi | eta
  double from = 0.0;
  double to = 1.0;
  std::size_t steps = 21;
  std::vector<double> points{1, 2, 3, 4, 5};
};

/// Every field has a fixed default. Unset optionals take the per-suite
/// default in resolved():
///   trials: 100000 for chain/refined/rho, 200 for operator/hsnorm/uinorm
///   n: 8 for operator, 6 for hsnorm/uinorm (matrix sizes are 1..n or 2..n)
///   tolerance: 1e-12 for the scalar chains, 1e-9 for the matrix suites
struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tolerance;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> n;
  int max_order = 5;             // refined: m = 1..max_order
  std::size_t param_triples = 10;  // operator: random (t, s, p) besides (2/3, 2/3, 1/3)
  double pair_min = 1e-6;        // scalar pairs are log-uniform on [pair_min, pair_max]
  double pair_max = 1e6;
  GridSpec grid;
  KernelScanSpec kernel_scan;
  std::string matrix_s;  // optional matrix files for single-instance runs
  std::string matrix_t;
  std::string matrix_x;
  std::string output;  // empty: stdout
  Format format = Format::Json;
  bool timing = false;

  RunConfig resolved(std::string_view suite) const {
    RunConfig out = *this;
    const bool scalar = suite == "chain" || suite == "refined" || suite == "rho";
    if (!out.trials) out.trials = scalar ? 100000 : 200;
    if (!out.n) out.n = suite == "operator" ? 8 : 6;
    if (!out.tolerance) out.tolerance = scalar ? kDefaultChainTolerance : kDefaultNormTolerance;
    return out;
  }
};

inline Json to_json(const RunConfig& c) {
  auto opt = [](const auto& v) -> Json { return v ? Json(*v) : Json(nullptr); };
  Json grid{{"x_min", c.grid.x_min},
            {"x_max", c.grid.x_max},
            {"count", c.grid.count},
            {"refine_levels", c.grid.refine_levels},
            {"refine_ratio", c.grid.refine_ratio}};
  Json ks{{"family", c.kernel_scan.family},
          {"from", c.kernel_scan.from},
          {"to", c.kernel_scan.to},
          {"steps", c.kernel_scan.steps},
          {"points", c.kernel_scan.points}};
  return Json{{"seed", c.seed},
              {"tolerance", opt(c.tolerance)},
              {"trials", opt(c.trials)},
              {"n", opt(c.n)},
              {"max_order", c.max_order},
              {"param_triples", c.param_triples},
              {"pair_min", c.pair_min},
              {"pair_max", c.pair_max},
              {"grid", grid},
              {"kernel_scan", ks},
              {"matrix_s", c.matrix_s},
              {"matrix_t", c.matrix_t},
              {"matrix_x", c.matrix_x},
              {"output", c.output},
              {"format", c.format == Format::Json ? "json" : "csv"},
              {"timing", c.timing}};
}

// Embedded in reports; the destination path is left out so the file does not depend on it.
inline Json report_config(const RunConfig& c) {
  Json j = to_json(c);
  j.erase("output");
  return j;
}

/// Missing keys keep their defaults.
inline RunConfig config_from_json(const Json& j) {
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  auto get_opt = [&](const char* key, auto& field) {
    if (j.contains(key) && !j.at(key).is_null())
      field = j.at(key).get<typename std::decay_t<decltype(field)>::value_type>();
  };
  get("seed", c.seed);
  get_opt("tolerance", c.tolerance);
  get_opt("trials", c.trials);
  get_opt("n", c.n);
  get("max_order", c.max_order);
  get("param_triples", c.param_triples);
  get("pair_min", c.pair_min);
  get("pair_max", c.pair_max);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("x_min")) g.at("x_min").get_to(c.grid.x_min);
    if (g.contains("x_max")) g.at("x_max").get_to(c.grid.x_max);
    if (g.contains("count")) g.at("count").get_to(c.grid.count);
    if (g.contains("refine_levels")) g.at("refine_levels").get_to(c.grid.refine_levels);
    if (g.contains("refine_ratio")) g.at("refine_ratio").get_to(c.grid.refine_ratio);
  }
  if (j.contains("kernel_scan")) {
    const auto& k = j.at("kernel_scan");
    if (k.contains("family")) k.at("family").get_to(c.kernel_scan.family);
    if (k.contains("from")) k.at("from").get_to(c.kernel_scan.from);
    if (k.contains("to")) k.at("to").get_to(c.kernel_scan.to);
    if (k.contains("steps")) k.at("steps").get_to(c.kernel_scan.steps);
    if (k.contains("points")) k.at("points").get_to(c.kernel_scan.points);
  }
  get("matrix_s", c.matrix_s);
  get("matrix_t", c.matrix_t);
  get("matrix_x", c.matrix_x);
  get("output", c.output);
  if (j.contains("format")) {
    const auto f = j.at("format").get<std::string>();
    if (f == "json") c.format = Format::Json;
    else if (f == "csv") c.format = Format::Csv;
    else throw DomainError("unknown format '" + f + "'");
  }
  get("timing", c.timing);
  return c;
}

/// Result of one command: a JSON document, its CSV flattening, a one-line
/// summary and the process exit code.
struct Outcome {
  Json json;
  std::string csv;
  std::string summary;
  std::string text;  // optional human-readable rendering
  int exit_code = kPass;

  std::string render(Format f) const { return f == Format::Json ? json.dump(2) + "\n" : csv; }
};

namespace detail {

inline std::string num(double x) { return meanlab::detail::format_number(x); }

inline std::string join(const std::vector<double>& xs, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += num(xs[i]);
  }
  return out;
}

// Collects checks for one suite. The gap of a check is its normalized slack;
// negative beyond the tolerance is a violation.
class Tally {
 public:
  void record(std::size_t trial, const std::string& check, double gap, bool ok, Json detail = {}) {
    worst_ = std::min(worst_, gap);
    if (ok) return;
    ++count_;
    if (listed_.size() < kMaxListedViolations) {
      Json v{{"trial", trial}, {"check", check}, {"gap", gap}};
      if (!detail.is_null()) v["detail"] = std::move(detail);
      listed_.push_back(std::move(v));
    }
  }
  std::size_t count() const noexcept { return count_; }
  double worst() const noexcept { return worst_; }
  const Json& listed() const noexcept { return listed_; }

 private:
  std::size_t count_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
  Json listed_ = Json::array();
};

inline double chain_gap(const ChainReport& r) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < r.values.size(); ++k) {
    const double hi = r.values[k + 1];
    worst = std::min(worst, (hi - r.values[k]) / std::max(1.0, std::abs(hi)));
  }
  return worst;
}

inline void record_chain(Tally& tally, std::size_t trial, const std::string& name,
                         const ChainReport& r, const ScalarPair& p) {
  Json detail;
  if (!r.holds()) {
    detail = Json{{"a", p.a()}, {"b", p.b()}, {"labels", r.labels}, {"values", r.values}};
  }
  tally.record(trial, name, chain_gap(r), r.holds(), detail);
}

// Ky Fan margin: min_k (KyFan_k(Z) - KyFan_k(Y)) relative to the trace norm of Z.
inline double fan_margin(const GeneralMatrix& y, const GeneralMatrix& z) {
  const auto sy = singular_values(y);
  const auto sz = singular_values(z);
  double worst = std::numeric_limits<double>::infinity();
  const double scale = std::max(1e-300, sz.partial_sums.back());
  for (std::size_t k = 0; k < sy.partial_sums.size(); ++k)
    worst = std::min(worst, (sz.partial_sums[k] - sy.partial_sums[k]) / scale);
  return worst;
}

inline Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

struct Instance {
  PsdMatrix s;
  PsdMatrix t;
  GeneralMatrix x;
};

inline Instance random_instance(std::uint64_t seed, std::size_t trial, std::size_t n) {
  return {random_psd(n, split_seed(seed, 3 * trial)), random_psd(n, split_seed(seed, 3 * trial + 1)),
          unit_normalized(random_matrix(n, split_seed(seed, 3 * trial + 2)))};
}

inline std::optional<Instance> file_instance(const RunConfig& c, bool need_x) {
  if (c.matrix_s.empty() && c.matrix_t.empty() && c.matrix_x.empty()) return std::nullopt;
  if (c.matrix_s.empty() || c.matrix_t.empty() || (need_x && c.matrix_x.empty()))
    throw DomainError(need_x ? "matrix input needs --S, --T and --X"
                             : "matrix input needs --S and --T");
  const PsdMatrix s(SymMatrix(load_matrix(c.matrix_s)));
  const PsdMatrix t(SymMatrix(load_matrix(c.matrix_t)));
  GeneralMatrix x = need_x ? load_matrix(c.matrix_x) : Matrix::identity(s.size());
  if (s.size() != t.size() || s.size() != x.size())
    throw DomainError("matrix files have mismatched dimensions");
  return Instance{s, t, x};
}

struct Triple {
  double t, s, p;
};

inline std::vector<Triple> operator_triples(std::uint64_t seed, std::size_t extra) {
  std::vector<Triple> out{{2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0}};
  Rng rng(seed, 0x747269706c6573ULL);
  for (std::size_t k = 0; k < extra; ++k) {
    const double t = rng.uniform(2.0 / 3.0, 1.0);
    const double s = rng.uniform(0.0, 2.0 / 3.0);
    const double p = rng.uniform(1.0 / 3.0, 2.0);
    out.push_back({t, s, p});
  }
  return out;
}

inline Outcome finish(const std::string& suite, const RunConfig& config, std::size_t n_trials,
                      const Tally& tally, std::optional<double> runtime_ms) {
  Outcome out;
  const double worst = std::isfinite(tally.worst()) ? tally.worst() : 0.0;
  out.json = Json{{"suite", suite},
                  {"config", report_config(config)},
                  {"n_trials", n_trials},
                  {"violation_count", tally.count()},
                  {"violations", tally.listed()},
                  {"worst_gap", worst}};
  if (runtime_ms) out.json["runtime_ms"] = *runtime_ms;

  std::ostringstream csv;
  csv << "suite,n_trials,violation_count,worst_gap" << (runtime_ms ? ",runtime_ms" : "") << "\n";
  csv << suite << ',' << n_trials << ',' << tally.count() << ',' << num(worst);
  if (runtime_ms) csv << ',' << num(*runtime_ms);
  csv << "\ntrial,check,gap\n";
  for (const auto& v : tally.listed())
    csv << v["trial"].get<std::size_t>() << ',' << v["check"].get<std::string>() << ','
        << num(v["gap"].get<double>()) << "\n";
  out.csv = csv.str();

  out.summary = suite + ": " + std::to_string(tally.count()) + " violations in " +
                std::to_string(n_trials) + " trials, worst gap " + num(worst);
  out.exit_code = tally.count() == 0 ? kPass : kViolations;
  return out;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

inline constexpr std::string_view kVerifySuites[] = {"chain",    "refined", "rho",
                                                      "operator", "hsnorm",  "uinorm"};

/// Randomized verification of one inequality family. Identical config gives
/// an identical report unless timing is enabled.
inline Outcome cmd_verify(std::string_view suite, const RunConfig& config_in) {
  if (std::find(std::begin(kVerifySuites), std::end(kVerifySuites), suite) ==
      std::end(kVerifySuites))
    throw DomainError("unknown verify suite '" + std::string(suite) + "'");
  const RunConfig config = config_in.resolved(suite);
  const std::size_t trials = *config.trials;
  const std::size_t n_max = *config.n;
  const double tol = *config.tolerance;
  const detail::Stopwatch clock;
  detail::Tally tally;
  std::size_t n_trials = trials;

  if (suite == "chain" || suite == "refined" || suite == "rho") {
    if (!(config.pair_min > 0.0 && config.pair_max >= config.pair_min))
      throw DomainError("need 0 < pair_min <= pair_max");
    if (suite == "refined" && config.max_order < 1) throw DomainError("max_order must be >= 1");
    for (std::size_t i = 0; i < trials; ++i) {
      Rng rng(config.seed, i);
      const ScalarPair p(rng.log_uniform(config.pair_min, config.pair_max),
                         rng.log_uniform(config.pair_min, config.pair_max));
      if (suite == "chain") {
        detail::record_chain(tally, i, "fundamental", fundamental_chain(p, tol), p);
      } else if (suite == "rho") {
        detail::record_chain(tally, i, "rho", rho_chain(p, tol), p);
      } else {
        for (int m = 1; m <= config.max_order; ++m)
          detail::record_chain(tally, i, "m=" + std::to_string(m),
                               refined_chain(RefinementOrder(m), p, tol), p);
      }
    }
  } else if (suite == "operator") {
    if (n_max < 2) throw DomainError("operator suite needs n >= 2");
    const auto triples = detail::operator_triples(config.seed, config.param_triples);
    const auto given = detail::file_instance(config, false);
    if (given) n_trials = 1;
    for (std::size_t i = 0; i < n_trials; ++i) {
      const std::size_t n = 2 + i % (n_max - 1);
      const auto inst = given ? *given : detail::random_instance(config.seed, i, n);
      for (std::size_t k = 0; k < triples.size(); ++k) {
        const auto& tr = triples[k];
        const auto v = operator_chain_check(inst.s, inst.t, tr.t, tr.s, tr.p, tol);
        const double gap = *std::min_element(v.gaps.begin(), v.gaps.end());
        Json d;
        if (!v.holds())
          d = Json{{"n", inst.s.size()}, {"t", tr.t}, {"s", tr.s}, {"p", tr.p},
                   {"gaps", std::vector<double>(v.gaps.begin(), v.gaps.end())}};
        tally.record(i, "triple=" + std::to_string(k), gap, v.holds(), d);
      }
    }
  } else {
    if (n_max < 1) throw DomainError("norm suites need n >= 1");
    const auto given = detail::file_instance(config, true);
    if (given) n_trials = 1;
    for (std::size_t i = 0; i < n_trials; ++i) {
      const std::size_t n = 1 + i % n_max;
      const auto inst = given ? *given : detail::random_instance(config.seed, i, n);
      if (suite == "hsnorm") {
        const auto r = hs_chain_check(inst.s, inst.t, inst.x, tol);
        tally.record(i, "hs-chain", detail::chain_gap(r), r.holds(),
                     r.holds() ? Json() : Json{{"n", n}, {"values", r.values}});
      } else {
        const auto g = explicit_map(MeanKind::geometric(), inst.s, inst.t, inst.x);
        const auto a = explicit_map(MeanKind::arithmetic(), inst.s, inst.t, inst.x);
        for (double r : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
          const auto k = hadamard_mean(MeanKind::bridge(r), inst.s, inst.t, inst.x);
          const std::string tag = "r=" + detail::num(r);
          const double lower = detail::fan_margin(g, k);
          const double upper = detail::fan_margin(k, a);
          tally.record(i, "G<=K " + tag, lower, ky_fan_dominates(g, k, tol));
          tally.record(i, "K<=A " + tag, upper, ky_fan_dominates(k, a, tol));
        }
      }
    }
  }
  std::optional<double> runtime;
  if (config.timing) runtime = clock.elapsed_ms();
  return detail::finish("verify:" + std::string(suite), config, n_trials, tally, runtime);
}

inline Outcome cmd_means(const MeanKind& kind, double a, double b) {
  const double value = evaluate(kind, ScalarPair(a, b));
  Outcome out;
  out.json = Json{{"mean", format_mean_kind(kind)}, {"a", a}, {"b", b}, {"value", value}};
  out.csv = "mean,a,b,value\n" + format_mean_kind(kind) + "," + detail::num(a) + "," +
            detail::num(b) + "," + detail::num(value) + "\n";
  out.summary = detail::num(value);
  return out;
}

namespace detail {

inline KernelFamily scan_family(const std::string& family, double param) {
  if (family == "phi") return PhiR{param};
  if (family == "psi") return PsiS{param};
  if (family == "xi") return XiS{param};
  if (family == "eta") return EtaP{param};
  throw DomainError("kernel-param scan supports phi, psi, xi, eta; got '" + family + "'");
}

}  // namespace detail

inline constexpr std::string_view kScanTargets[] = {"sharp-t", "sharp-s", "ratios", "kernel-param"};

/// sharp-t / sharp-s: extremum of log_ratio / diff_ratio over the grid, checked
/// against 2/3 +- 1e-4. ratios: the (x, log_ratio, diff_ratio) series.
/// kernel-param: (parameter, min Gram eigenvalue) series.
/// The JSON report carries the summary; the CSV carries the full series.
inline Outcome cmd_scan(std::string_view target, const RunConfig& config) {
  const detail::Stopwatch clock;
  Outcome out;
  std::ostringstream csv;
  Json body{{"suite", "scan:" + std::string(target)}, {"config", report_config(config)}};
  if (target == "sharp-t" || target == "sharp-s" || target == "ratios") {
    const auto grid = config.grid.build();
    if (target == "ratios") {
      csv << "x,log_ratio,diff_ratio\n";
      for (double x : grid) csv << detail::num(x) << ',' << detail::num(log_ratio(x)) << ','
                                << detail::num(diff_ratio(x)) << "\n";
      body["n_points"] = grid.size();
      out.summary = "ratios: " + std::to_string(grid.size()) + " points";
    } else {
      const bool is_t = target == "sharp-t";
      const auto r = is_t ? scan(grid, log_ratio, ScanDirection::Max)
                          : scan(grid, diff_ratio, ScanDirection::Min);
      const double c = 2.0 / 3.0;
      const bool ok = is_t ? (r.extremum >= c - 1e-4 && r.extremum <= c)
                           : (r.extremum >= c && r.extremum <= c + 1e-4);
      csv << "x," << (is_t ? "log_ratio" : "diff_ratio") << "\n";
      for (std::size_t i = 0; i < r.grid.size(); ++i)
        csv << detail::num(r.grid[i]) << ',' << detail::num(r.ratio_values[i]) << "\n";
      body["n_points"] = grid.size();
      body["extremum"] = r.extremum;
      body["extremum_location"] = r.extremum_location;
      body["within_bound"] = ok;
      out.summary = std::string(is_t ? "sup log_ratio = " : "inf diff_ratio = ") +
                    detail::num(r.extremum) + " at x = " + detail::num(r.extremum_location);
      out.exit_code = ok ? kPass : kViolations;
    }
  } else if (target == "kernel-param") {
    const auto& ks = config.kernel_scan;
    if (ks.steps < 1) throw DomainError("kernel-param: steps must be >= 1");
    Json series = Json::array();
    csv << "param,min_eigenvalue\n";
    for (std::size_t i = 0; i < ks.steps; ++i) {
      const double f = ks.steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(ks.steps - 1);
      const double param = ks.from + f * (ks.to - ks.from);
      const auto report = gram(detail::scan_family(ks.family, param), ks.points);
      series.push_back(Json{{"param", param}, {"min_eigenvalue", report.min_eigenvalue}});
      csv << detail::num(param) << ',' << detail::num(report.min_eigenvalue) << "\n";
    }
    body["series"] = series;
    out.summary = "kernel-param: " + std::to_string(ks.steps) + " values of " + ks.family;
  } else {
    throw DomainError("unknown scan target '" + std::string(target) + "'");
  }
  if (config.timing) body["runtime_ms"] = clock.elapsed_ms();
  out.json = std::move(body);
  out.csv = csv.str();
  return out;
}

inline Json to_json(const EigenReport& r) {
  Json rows = Json::array();
  const Matrix& g = r.gram.matrix();
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<double> row(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) row[j] = g(i, j);
    rows.push_back(row);
  }
  return Json{{"points", r.points},         {"gram", rows},
              {"eigenvalues", r.eigenvalues}, {"min_eigenvalue", r.min_eigenvalue},
              {"threshold", r.threshold},   {"psd", r.psd}};
}

inline Json to_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return Json{{"points", w->points},
              {"min_eigenvalue", w->min_eigenvalue},
              {"threshold", w->threshold},
              {"strategy", w->strategy}};
}

/// Gram matrix and spectrum on the given points. Exit code 0 either way: a
/// negative eigenvalue is a finding, not a failure.
inline Outcome cmd_kernel_points(const KernelFamily& family, const std::vector<double>& points) {
  const auto report = gram(family, points);
  Outcome out;
  out.json = Json{{"family", format_kernel_family(family)}, {"report", to_json(report)}};
  std::ostringstream csv;
  csv << "index,eigenvalue\n";
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i)
    csv << i << ',' << detail::num(report.eigenvalues[i]) << "\n";
  out.csv = csv.str();
  out.summary = format_kernel_family(family) + " eigenvalues: " + detail::join(report.eigenvalues) +
                (report.psd ? " (psd)" : " (not psd)");
  return out;
}

inline SearchStrategy parse_strategy(std::string_view name) {
  if (name == "grid" || name == "integer-grid") return IntegerGrid{};
  if (name == "random" || name == "random-uniform") return RandomUniform{};
  if (name == "anneal") return Anneal{};
  if (name == "cascade") return Cascade{};
  throw DomainError("unknown search strategy '" + std::string(name) +
                    "' (grid, random, anneal, cascade)");
}

inline Outcome cmd_kernel_search(const KernelFamily& family, std::size_t n,
                                 std::string_view strategy, std::size_t budget,
                                 std::uint64_t seed) {
  const auto w = search_counterexample(family, n, parse_strategy(strategy), budget, seed);
  Outcome out;
  out.json = Json{{"family", format_kernel_family(family)},
                  {"n", n},
                  {"strategy", std::string(strategy)},
                  {"budget", budget},
                  {"seed", seed},
                  {"found", w.has_value()},
                  {"witness", to_json(w)}};
  std::ostringstream csv;
  csv << "found,min_eigenvalue,points\n"
      << (w ? "true," + detail::num(w->min_eigenvalue) + "," + detail::join(w->points) : "false,,")
      << "\n";
  out.csv = csv.str();
  out.summary = w ? "witness: min eigenvalue " + detail::num(w->min_eigenvalue) + " at t = " +
                        detail::join(w->points)
                  : "inconclusive: no witness within budget";
  return out;
}

struct ReproRow {
  std::string quantity;
  std::string expected;
  double computed;
  bool pass;
};

/// Every published number recomputed, with pass/fail.
inline std::vector<ReproRow> reproduction_table() {
  std::vector<ReproRow> rows;
  auto close = [&](std::string q, double expected, double computed, double tol) {
    rows.push_back({std::move(q), detail::num(expected) + " +- " + detail::num(tol), computed,
                    std::abs(computed - expected) <= tol});
  };
  auto negative = [&](std::string q, double computed) {
    rows.push_back({std::move(q), "< 0", computed, computed < 0.0});
  };
  auto truth = [&](std::string q, bool value) {
    rows.push_back({std::move(q), "true", value ? 1.0 : 0.0, value});
  };

  const PhiR phi{2.0 / 3.0};
  close("phi_2/3(1)", 0.983295, eval_kernel(phi, 1.0), 1e-6);
  close("phi_2/3(2)", 0.857656, eval_kernel(phi, 2.0), 1e-6);
  auto triple = [&](const std::string& name, const KernelFamily& f, std::array<double, 3> want) {
    const auto r = gram(f, {1, 2, 3});
    for (std::size_t k = 0; k < 3; ++k)
      close(name + " eigenvalue " + std::to_string(k + 1), want[k], r.eigenvalues[k], 1e-4);
  };
  triple("phi_2/3 (1,2,3)", phi, {2.88404, 0.142344, -0.026381});
  triple("psi_1/4 (1,2,3)", PsiS{0.25}, {2.96626, 0.0436155, -0.00987773});
  triple("xi_3/4 (1,2,3)", XiS{0.75}, {2.98432, 0.0182053, -0.00252532});
  negative("phi_0.9 t=1..5 min eigenvalue", gram(PhiR{0.9}, {1, 2, 3, 4, 5}).min_eigenvalue);
  negative("eta_3/7 t=1..7 min eigenvalue",
           gram(EtaP{3.0 / 7.0}, {1, 2, 3, 4, 5, 6, 7}).min_eigenvalue);

  const auto [sup_t, inf_s] = scan_sharp_constants(GridSpec{});
  const double c = 2.0 / 3.0;
  rows.push_back({"sup log_ratio", "[2/3 - 1e-4, 2/3]", sup_t.extremum,
                  sup_t.extremum >= c - 1e-4 && sup_t.extremum <= c});
  rows.push_back({"inf diff_ratio", "[2/3, 2/3 + 1e-4]", inf_s.extremum,
                  inf_s.extremum >= c && inf_s.extremum <= c + 1e-4});
  close("log_ratio(x -> 1)", c, log_ratio(1.0 + 1e-9), 1e-6);
  close("diff_ratio(x -> 1)", c, diff_ratio(1.0 + 1e-9), 1e-6);
  truth("bounds t=2/3 s=2/3 at (4,1)",
        bounds_with_parameters(c, c, ScalarPair(4.0, 1.0)).holds);

  auto heinz_band = [&](const std::string& q, double s, double lo, double hi) {
    bool ok = true;
    for (int i = 0; i <= 1000; ++i) {
      const double v = i / 1000.0;
      ok = ok && heinz_heron_condition(s, v) == (v >= lo - 1e-12 && v <= hi + 1e-12);
    }
    truth(q, ok);
  };
  heinz_band("Heinz/Heron s=1/2 iff 1/4<=v<=3/4", 0.5, 0.25, 0.75);
  heinz_band("Heinz/Heron s=1/3 iff 1/8<=v<=7/8", 1.0 / 3.0, 0.125, 0.875);
  heinz_band("Heinz/Heron s=0 for all v", 0.0, 0.0, 1.0);
  return rows;
}

/// Text table for the terminal.
inline std::string format_table(const std::vector<ReproRow>& rows) {
  std::size_t width = 8;
  for (const auto& r : rows) width = std::max(width, r.quantity.size());
  std::ostringstream os;
  for (const auto& r : rows) {
    os << r.quantity << std::string(width - r.quantity.size() + 2, ' ') << (r.pass ? "pass  " : "FAIL  ")
       << detail::num(r.computed) << "  (expected " << r.expected << ")\n";
  }
  return os.str();
}

inline Outcome cmd_reproduce(bool timing = false) {
  const detail::Stopwatch clock;
  const auto rows = reproduction_table();
  Outcome out;
  Json table = Json::array();
  std::ostringstream csv;
  csv << "quantity,expected,computed,pass\n";
  std::size_t failures = 0;
  for (const auto& r : rows) {
    table.push_back(Json{{"quantity", r.quantity},
                         {"expected", r.expected},
                         {"computed", r.computed},
                         {"pass", r.pass}});
    csv << '"' << r.quantity << "\",\"" << r.expected << "\"," << detail::num(r.computed) << ','
        << (r.pass ? "pass" : "FAIL") << "\n";
    if (!r.pass) ++failures;
  }
  out.json = Json{{"suite", "reproduce"}, {"rows", table}, {"failures", failures}};
  if (timing) out.json["runtime_ms"] = clock.elapsed_ms();
  out.csv = csv.str();
  out.text = format_table(rows);
  out.summary = "reproduce: " + std::to_string(rows.size() - failures) + "/" +
                std::to_string(rows.size()) + " pass";
  out.exit_code = failures == 0 ? kPass : kViolations;
  return out;
}

}  // namespace meanlab::cli

#endif  // MEANLAB_CLI_HPP
