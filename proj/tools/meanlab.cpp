// meanlab: means, inequality sweeps, operator checks and kernel searches.
//
// Exit status: 0 pass, 1 violations found, 2 usage or domain error.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "meanlab/cli.hpp"

namespace {

using meanlab::cli::Format;
using meanlab::cli::Outcome;
using meanlab::cli::RunConfig;

// With --out the report goes to the file and the summary to stdout;
// otherwise the report goes to stdout and the summary to stderr.
int emit(const Outcome& outcome, const RunConfig& config) {
  const std::string body = outcome.render(config.format);
  if (config.output.empty()) {
    std::cout << body;
    std::cerr << outcome.summary << "\n";
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << config.output << "'\n";
      return meanlab::cli::kUsage;
    }
    file << body;
    std::cout << outcome.summary << "\n";
  }
  return outcome.exit_code;
}

std::vector<double> parse_points(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(meanlab::detail::parse_number(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void add_output_flags(CLI::App* cmd, RunConfig& config, std::string& format) {
  cmd->add_option("--out", config.output, "Report file (default: stdout)");
  cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--timing", config.timing, "Include runtime_ms in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meanlab: numerical laboratory for two-variable means and their matrix versions"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";
  std::optional<std::uint64_t> seed;

  // means
  auto* means = app.add_subcommand("means", "Evaluate a scalar mean M(a, b)");
  std::string mean_name;
  std::optional<double> opt_r, opt_s, opt_p, opt_v, opt_alpha, opt_u;
  double a = 0.0, b = 0.0;
  means->add_option("kind", mean_name,
                    "A, G, H, L, binomial, heron, heron-hat, heinz, bridge, lehmer, powerdiff "
                    "(or a spec string such as heron:s=0.5)")
      ->required();
  means->add_option("--r", opt_r, "bridge parameter");
  means->add_option("--s", opt_s, "heron / heron-hat parameter");
  means->add_option("--p", opt_p, "binomial parameter");
  means->add_option("--v", opt_v, "heinz parameter");
  means->add_option("--alpha", opt_alpha, "lehmer parameter");
  means->add_option("--u", opt_u, "powerdiff parameter");
  means->add_option("a", a)->required();
  means->add_option("b", b)->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Randomized sweep of one inequality family");
  std::string suite;
  std::size_t trials = 0, n = 0;
  double tol = 0.0;
  verify->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember({"chain", "refined", "rho", "operator", "hsnorm", "uinorm"}));
  auto* trials_opt = verify->add_option("--trials", trials, "Number of random instances");
  auto* n_opt = verify->add_option("--n", n, "Largest matrix dimension");
  auto* tol_opt = verify->add_option("--tol", tol, "Tolerance override");
  verify->add_option("--seed", seed, "Seed (default: MEANLAB_SEED or 1)");
  verify->add_option("--max-order", config.max_order, "refined: largest m");
  verify->add_option("--triples", config.param_triples, "operator: extra random (t,s,p)");
  verify->add_option("--S", config.matrix_s, "Matrix file for S");
  verify->add_option("--T", config.matrix_t, "Matrix file for T");
  verify->add_option("--X", config.matrix_x, "Matrix file for X");
  add_output_flags(verify, config, format);

  // scan
  auto* scan = app.add_subcommand("scan", "Grid scans of the sharp-constant ratios and kernels");
  std::string target;
  std::string scan_points;
  scan->add_option("target", target)
      ->required()
      ->check(CLI::IsMember({"sharp-t", "sharp-s", "ratios", "kernel-param"}));
  scan->add_option("--x-min", config.grid.x_min);
  scan->add_option("--x-max", config.grid.x_max);
  scan->add_option("--count", config.grid.count, "Log-spaced grid points");
  scan->add_option("--refine", config.grid.refine_levels, "Refinement levels toward x = 1");
  scan->add_option("--refine-ratio", config.grid.refine_ratio);
  scan->add_option("--family", config.kernel_scan.family, "kernel-param: phi, psi, xi or eta");
  scan->add_option("--from", config.kernel_scan.from);
  scan->add_option("--to", config.kernel_scan.to);
  scan->add_option("--steps", config.kernel_scan.steps);
  scan->add_option("--points", scan_points, "kernel-param: comma-separated points");
  add_output_flags(scan, config, format);

  // kernel
  auto* kernel = app.add_subcommand("kernel", "Gram spectrum or counterexample search");
  std::string family_spec, points_text;
  std::vector<std::string> search;
  kernel->add_option("family", family_spec, "e.g. phi:r=0.6667 or ratio:L/heron:s=0.6")->required();
  auto* points_opt = kernel->add_option("--points", points_text, "Comma-separated points");
  auto* search_opt =
      kernel->add_option("--search", search, "n strategy budget (strategy: grid, random, anneal, cascade)")
          ->expected(3);
  points_opt->excludes(search_opt);
  kernel->add_option("--seed", seed, "Seed (default: MEANLAB_SEED or 1)");
  add_output_flags(kernel, config, format);

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "Recompute every published number");
  add_output_flags(reproduce, config, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : meanlab::cli::kUsage;
  }

  try {
    config.format = format == "csv" ? Format::Csv : Format::Json;
    config.seed = seed ? *seed : meanlab::cli::default_seed();

    if (*means) {
      std::string spec = mean_name;
      auto attach = [&](const char* key, const std::optional<double>& v) {
        if (v && spec.find(':') == std::string::npos)
          spec += std::string(":") + key + "=" + meanlab::detail::format_number(*v);
      };
      attach("r", opt_r);
      attach("s", opt_s);
      attach("p", opt_p);
      attach("v", opt_v);
      attach("alpha", opt_alpha);
      attach("u", opt_u);
      const auto outcome = meanlab::cli::cmd_means(meanlab::parse_mean_kind(spec), a, b);
      std::cout << outcome.summary << "\n";
      return outcome.exit_code;
    }
    if (*verify) {
      if (*trials_opt) config.trials = trials;
      if (*n_opt) config.n = n;
      if (*tol_opt) config.tolerance = tol;
      return emit(meanlab::cli::cmd_verify(suite, config), config);
    }
    if (*scan) {
      if (!scan_points.empty()) config.kernel_scan.points = parse_points(scan_points);
      return emit(meanlab::cli::cmd_scan(target, config), config);
    }
    if (*kernel) {
      const auto family = meanlab::parse_kernel_family(family_spec);
      if (!search.empty()) {
        const auto size = static_cast<std::size_t>(std::stoul(search[0]));
        const auto budget = static_cast<std::size_t>(std::stoul(search[2]));
        return emit(meanlab::cli::cmd_kernel_search(family, size, search[1], budget, config.seed),
                    config);
      }
      if (points_text.empty()) throw meanlab::DomainError("kernel needs --points or --search");
      return emit(meanlab::cli::cmd_kernel_points(family, parse_points(points_text)), config);
    }
    if (*reproduce) {
      const auto outcome = meanlab::cli::cmd_reproduce(config.timing);
      if (config.output.empty() && config.format == Format::Json) {
        std::cout << outcome.text << outcome.summary << "\n";
        return outcome.exit_code;
      }
      return emit(outcome, config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return meanlab::cli::kUsage;
  }
  return meanlab::cli::kUsage;
}
