// configbounds: generate instances, extract duals, compute bound curves and
// run the L^p counterexample checks.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cfgbounds/error.hpp"
#include "cfgbounds/io.hpp"
#include "cfgbounds/pipeline.hpp"

namespace {

using namespace cfgbounds;

constexpr int kExitPrecondition = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

// Parses one non-negative whole number; accepts forms like 1e8.
std::uint64_t parse_count(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size() || !(v >= 0.0) || v > 9007199254740992.0 || v != std::floor(v)) {
    throw std::invalid_argument(text);
  }
  return static_cast<std::uint64_t>(v);
}

// Parses "lo:hi" into two integers.
template <typename T>
void parse_range(const std::string& text, T& lo, T& hi, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError(std::string(flag) + " must look like lo:hi");
  try {
    lo = static_cast<T>(parse_count(text.substr(0, colon)));
    hi = static_cast<T>(parse_count(text.substr(colon + 1)));
  } catch (const std::logic_error&) {
    throw ArgumentError(std::string(flag) + ": cannot parse '" + text + "'");
  }
}

struct CliState {
  pipeline::PipelineConfig cfg;
  std::string rules = "L,S";
  std::string kappa = "auto";
  std::string j_range = "1:64";
  std::string n_range = "100:100000000";
  std::string policy = "best_bound";

  void finish() {
    cfg.rules = configspace::RulePair::parse(rules);
    if (kappa == "auto") {
      cfg.kappa.reset();
    } else {
      try {
        std::size_t used = 0;
        cfg.kappa = std::stoll(kappa, &used);
        if (used != kappa.size()) throw std::invalid_argument(kappa);
      } catch (const std::logic_error&) {
        throw ArgumentError("--kappa must be 'auto' or a positive integer");
      }
    }
    parse_range(j_range, cfg.j_lo, cfg.j_hi, "--j-range");
    parse_range(n_range, cfg.n_lo, cfg.n_hi, "--n-range");
    cfg.node_policy = solver::parse_policy(policy);
    cfg.validate();
  }
};

void add_pipeline_flags(CLI::App* cmd, CliState& s) {
  auto& c = s.cfg;
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Root seed")->capture_default_str();
  cmd->add_option("--instances", c.instances, "Number of instances M")->capture_default_str();
  cmd->add_option("--goods", c.generator.goods, "Goods per instance")->capture_default_str();
  cmd->add_option("--bids", c.generator.bids, "Bids (variables) per instance")->capture_default_str();
  cmd->add_option("--bundle-min", c.generator.bundle_min)->capture_default_str();
  cmd->add_option("--bundle-max", c.generator.bundle_max)->capture_default_str();
  cmd->add_option("--rules", s.rules, "Scoring-rule pair, e.g. L,S or P,A")->capture_default_str();
  cmd->add_option("--kappa", s.kappa, "Tree-size cap: auto or an integer")->capture_default_str();
  cmd->add_option("--hard-cap", c.hard_cap, "Cap used while selecting kappa")->capture_default_str();
  cmd->add_option("--r-grid", c.r_grid_points, "r grid points for kappa selection")->capture_default_str();
  cmd->add_option("--node-policy", s.policy, "best_bound or depth_first")->capture_default_str();
  cmd->add_option("--grid-eps", c.grid_eps, "Breakpoint resolution")->capture_default_str();
  cmd->add_option("--j-range", s.j_range, "Piece counts lo:hi")->capture_default_str();
  cmd->add_option("--n-range", s.n_range, "Training-set sizes lo:hi")->capture_default_str();
  cmd->add_option("--n-points", c.n_points, "Log-spaced schedule points")->capture_default_str();
  cmd->add_option("--delta", c.delta, "Failure probability")->capture_default_str();
  cmd->add_flag("--paper-mode", c.paper_mode, "Use the published constants (delta 0.01, slack 1/40)");
}

int run(int argc, char** argv) {
  CLI::App app{"Data-dependent generalization bounds for parameterized branch-and-bound"};
  app.require_subcommand(1);
  CliState state;

  auto* gen = app.add_subcommand("gen", "Generate winner-determination instances");
  auto* duals = app.add_subcommand("duals", "Extract piecewise-constant duals");
  auto* bnds = app.add_subcommand("bounds", "Approximation profile and bound curves");
  for (auto* cmd : {gen, duals, bnds}) add_pipeline_flags(cmd, state);

  auto* cex = app.add_subcommand("counterexample", "Verify the L^p counterexample numerically");
  pipeline::CounterexampleConfig cex_cfg;
  std::filesystem::path cex_out = "out";
  cex->add_option("--gamma", cex_cfg.gammas, "gamma values in (0, 1/4)")->capture_default_str();
  cex->add_option("--p", cex_cfg.ps, "p values >= 1")->capture_default_str();
  cex->add_option("--n", cex_cfg.ns, "sample sizes N <= 16")->capture_default_str();
  cex->add_option("--c", cex_cfg.cs, "targets c in (0, 1/2)")->capture_default_str();
  cex->add_option("--out", cex_out, "Output directory")->capture_default_str();

  auto* fit = app.add_subcommand("fit", "Best k-piece fit of one dual");
  std::filesystem::path fit_file;
  int fit_k = 1;
  bool fit_sum = false;
  fit->add_option("dual", fit_file, "Dual JSON file")->required();
  fit->add_option("-k,--k", fit_k, "Number of pieces")->capture_default_str();
  fit->add_flag("--sum-recurrence", fit_sum, "Combine block errors additively");

  auto* rad = app.add_subcommand("rad", "Empirical Rademacher complexity of a dual set");
  std::vector<std::filesystem::path> rad_files;
  pipeline::RadOptions rad_opts;
  rad->add_option("duals", rad_files, "Dual JSON files")->required();
  rad->add_option("--mc-draws", rad_opts.mc_draws, "Monte-Carlo draws (0 = exact)")->capture_default_str();
  rad->add_option("--seed", rad_opts.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitPrecondition;
  }

  if (gen->parsed()) {
    state.finish();
    const auto s = pipeline::cmd_gen(state.cfg);
    std::printf("wrote %zu instances to %s\n", s.ids.size(), state.cfg.out.string().c_str());
  } else if (duals->parsed()) {
    state.finish();
    const auto s = pipeline::cmd_duals(state.cfg);
    std::printf("kappa %lld%s; extracted %zu, reused %zu\n", static_cast<long long>(s.kappa),
                s.kappa_saturated ? " (saturated at hard cap)" : "", s.extracted, s.skipped);
  } else if (bnds->parsed()) {
    state.finish();
    const auto s = pipeline::cmd_bounds(state.cfg);
    std::printf("M = %llu, j* = %zu, kappa = %lld, n = %d; wrote %zu rows\n",
                static_cast<unsigned long long>(s.profile.m), s.profile.j_star,
                static_cast<long long>(s.kappa), s.n_vars, s.curve.rows.size());
  } else if (cex->parsed()) {
    const auto report = pipeline::cmd_counterexample(cex_cfg);
    io::write_file(cex_out / "counterexample.json", report.json);
    std::fputs(report.json.c_str(), stdout);
    if (!report.all_pass) {
      std::fputs("counterexample: some checks failed\n", stderr);
      return kExitNumerical;
    }
  } else if (fit->parsed()) {
    std::fputs(pipeline::cmd_fit(fit_file, fit_k, fit_sum).c_str(), stdout);
  } else if (rad->parsed()) {
    std::fputs(pipeline::cmd_rad(rad_files, rad_opts).c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cfgbounds::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const cfgbounds::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const cfgbounds::ConstructionError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::logic_error& e) {
    // ArgumentError, DomainError and ResourceError all derive from logic_error.
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
