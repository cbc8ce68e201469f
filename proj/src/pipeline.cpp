#include "cfgbounds/pipeline.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "cfgbounds/counterexample.hpp"
#include "cfgbounds/dpfit.hpp"
#include "cfgbounds/error.hpp"
#include "cfgbounds/io.hpp"
#include "cfgbounds/rademacher.hpp"
#include "json.hpp"

namespace cfgbounds::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

void PipelineConfig::validate() const {
  if (instances < 0) throw ArgumentError("instance count must be >= 0");
  generator.validate();
  if (kappa && *kappa < 1) throw ArgumentError("kappa must be >= 1");
  if (hard_cap < 1) throw ArgumentError("hard cap must be >= 1");
  if (r_grid_points < 2) throw ArgumentError("r grid needs at least two points");
  if (!(grid_eps > 0.0)) throw ArgumentError("grid_eps must be > 0");
  if (j_lo < 1 || j_hi < j_lo) throw ArgumentError("j range must satisfy 1 <= lo <= hi");
  if (n_lo < 1 || n_hi <= n_lo || n_points < 2) {
    throw ArgumentError("N schedule must be strictly increasing with at least two points");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("delta must lie in (0, 1)");
}

std::string instance_id(int index) { return fmt::format("inst_{:04d}", index); }

fs::path manifest_path(const PipelineConfig& cfg) { return cfg.out / "manifest.json"; }

fs::path instance_path(const PipelineConfig& cfg, const std::string& id) {
  return cfg.out / "instances" / (id + ".json");
}

fs::path dual_path(const PipelineConfig& cfg, const std::string& id) { return cfg.out / "duals" / (id + ".json"); }

namespace {

fs::path kappa_path(const PipelineConfig& cfg) { return cfg.out / "kappa.json"; }

json parse_json(const std::string& text, const fs::path& path) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": malformed JSON: " + e.what());
  }
}

std::vector<std::string> manifest_ids(const PipelineConfig& cfg) {
  const fs::path path = manifest_path(cfg);
  const json m = parse_json(io::read_file(path), path);
  std::vector<std::string> ids;
  try {
    for (const auto& entry : m.at("instances")) ids.push_back(entry.at("id").get<std::string>());
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return ids;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

GenSummary cmd_gen(const PipelineConfig& cfg) {
  cfg.validate();
  GenSummary summary;
  json entries = json::array();
  for (int i = 0; i < cfg.instances; ++i) {
    configspace::WdpGenConfig gen = cfg.generator;
    gen.seed = configspace::derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const std::string id = instance_id(i);
    io::write_file(instance_path(cfg, id), io::program_to_json(configspace::generate_instance(gen)));
    entries.push_back(json{{"id", id}, {"seed", gen.seed}, {"file", "instances/" + id + ".json"}});
    summary.ids.push_back(id);
  }
  const auto& g = cfg.generator;
  json manifest{{"seed", cfg.seed},
                {"generator",
                 {{"goods", g.goods},
                  {"bids", g.bids},
                  {"bundle_min", g.bundle_min},
                  {"bundle_max", g.bundle_max},
                  {"price_noise_lo", g.price_noise_lo},
                  {"price_noise_hi", g.price_noise_hi}}},
                {"instances", entries}};
  io::write_file(manifest_path(cfg), manifest.dump(1) + "\n");
  return summary;
}

namespace {

struct KappaChoice {
  std::int64_t kappa = 0;
  bool saturated = false;
};

json kappa_record(const PipelineConfig& cfg, std::size_t count) {
  return json{{"rules", cfg.rules.label()},
              {"hard_cap", cfg.hard_cap},
              {"r_grid_points", cfg.r_grid_points},
              {"node_policy", solver::policy_name(cfg.node_policy)},
              {"instances", count}};
}

KappaChoice choose_kappa(const PipelineConfig& cfg, const std::vector<solver::IntegerProgram>& programs) {
  if (cfg.kappa) return {*cfg.kappa, false};
  const json key = kappa_record(cfg, programs.size());
  const fs::path path = kappa_path(cfg);
  if (fs::exists(path)) {
    const json prev = parse_json(io::read_file(path), path);
    if (prev.contains("selection") && prev["selection"] == key) {
      return {prev.at("kappa").get<std::int64_t>(), prev.at("saturated").get<bool>()};
    }
  }
  const auto sel = configspace::select_kappa(programs, cfg.rules, configspace::uniform_r_grid(cfg.r_grid_points),
                                             cfg.hard_cap, cfg.node_policy);
  io::write_file(path, json{{"kappa", sel.kappa}, {"saturated", sel.saturated}, {"selection", key}}.dump(1) + "\n");
  return {sel.kappa, sel.saturated};
}

bool reusable(const fs::path& path, const PipelineConfig& cfg, std::int64_t kappa) {
  if (!fs::exists(path)) return false;
  try {
    const auto d = io::dual_from_json(io::read_file(path));
    return d.kappa == kappa && d.grid_eps == cfg.grid_eps && d.rules == cfg.rules &&
           d.node_policy == cfg.node_policy;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

DualsSummary cmd_duals(const PipelineConfig& cfg) {
  cfg.validate();
  const auto ids = manifest_ids(cfg);
  std::vector<std::string> missing;
  for (const auto& id : ids) {
    if (!fs::exists(instance_path(cfg, id))) missing.push_back(id);
  }
  if (!missing.empty()) throw IoError("missing instance files for: " + join(missing));
  std::vector<solver::IntegerProgram> programs;
  programs.reserve(ids.size());
  for (const auto& id : ids) programs.push_back(io::program_from_json(io::read_file(instance_path(cfg, id))));

  DualsSummary summary;
  if (programs.empty()) return summary;
  const KappaChoice choice = choose_kappa(cfg, programs);
  summary.kappa = choice.kappa;
  summary.kappa_saturated = choice.saturated;

  std::vector<solver::IntegerProgram> todo;
  std::vector<std::string> todo_ids;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (reusable(dual_path(cfg, ids[i]), cfg, choice.kappa)) {
      ++summary.skipped;
      continue;
    }
    todo.push_back(programs[i]);
    todo_ids.push_back(ids[i]);
  }
  configspace::ExtractOptions options;
  options.grid_eps = cfg.grid_eps;
  options.node_policy = cfg.node_policy;
  const auto duals = configspace::extract_duals(todo, todo_ids, cfg.rules, choice.kappa, options);
  for (const auto& d : duals) io::write_file(dual_path(cfg, d.instance), io::dual_to_json(d));
  summary.extracted = duals.size();
  return summary;
}

std::vector<configspace::DualExtraction> load_duals(const PipelineConfig& cfg) {
  const auto ids = manifest_ids(cfg);
  std::vector<std::string> missing;
  for (const auto& id : ids) {
    if (!fs::exists(dual_path(cfg, id))) missing.push_back(id);
  }
  if (!missing.empty()) throw IoError("missing dual files for: " + join(missing));
  std::vector<configspace::DualExtraction> duals;
  for (const auto& id : ids) duals.push_back(io::dual_from_json(io::read_file(dual_path(cfg, id))));
  return duals;
}

BoundsSummary compute_bounds(const std::vector<configspace::DualExtraction>& duals, const PipelineConfig& cfg) {
  cfg.validate();
  if (duals.empty()) throw ArgumentError("no duals to bound");
  BoundsSummary out;
  out.kappa = duals.front().kappa;
  std::vector<PiecewiseConstant> functions;
  for (const auto& d : duals) {
    if (d.kappa != out.kappa) throw ArgumentError("duals were extracted with different kappa values");
    out.n_vars = std::max(out.n_vars, d.n_vars);
    functions.push_back(d.dual);
  }
  if (out.n_vars < 2) throw ArgumentError("duals must record n_vars >= 2 for the worst-case bound");
  out.profile = configspace::approx_profile(functions, cfg.j_lo, cfg.j_hi);
  bounds::BoundInputs inputs;
  inputs.delta = cfg.delta;
  inputs.n_vars = out.n_vars;
  inputs.kappa = static_cast<int>(out.kappa);
  inputs.profile = out.profile;
  const auto schedule = bounds::log_spaced_schedule(cfg.n_lo, cfg.n_hi, cfg.n_points);
  out.curve = bounds::bound_curve(schedule, inputs, cfg.j_lo, cfg.j_hi, {cfg.paper_mode});
  return out;
}

BoundsSummary cmd_bounds(const PipelineConfig& cfg) {
  cfg.validate();
  const auto duals = load_duals(cfg);
  auto out = compute_bounds(duals, cfg);
  io::write_file(cfg.out / "profile.csv", io::profile_to_csv(out.profile));
  io::write_file(cfg.out / "bounds.csv", io::curve_to_csv(out.curve));
  io::write_file(cfg.out / "reported.csv", io::reported_to_csv(out.curve));
  return out;
}

void CounterexampleConfig::validate() const {
  if (gammas.empty() || ps.empty() || ns.empty() || cs.empty()) {
    throw ArgumentError("counterexample: every parameter list must be nonempty");
  }
  for (double g : gammas) {
    if (!(g > 0.0 && g < 0.25)) throw ArgumentError(fmt::format("gamma = {} violates 0 < gamma < 1/4", g));
  }
  for (double p : ps) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError(fmt::format("p = {} violates 1 <= p < inf", p));
  }
  for (int n : ns) {
    if (n < 1 || n > counterexample::kDemoMaxN) {
      throw ArgumentError(fmt::format("N = {} violates 1 <= N <= {}", n, counterexample::kDemoMaxN));
    }
  }
  for (double c : cs) {
    if (!(c > 0.0 && c < 0.5)) throw ArgumentError(fmt::format("c = {} violates 0 < c < 1/2", c));
  }
}

CounterexampleReport cmd_counterexample(const CounterexampleConfig& cfg) {
  namespace ce = counterexample;
  cfg.validate();
  bool all_pass = true;
  const int n_max = *std::max_element(cfg.ns.begin(), cfg.ns.end());
  json families = json::array();
  for (double gamma : cfg.gammas) {
    for (double p : cfg.ps) {
      const ce::CosineFamily fam(gamma, p);
      json approx = json::array();
      json sup = json::array();
      json demos = json::array();
      auto check_approx = [&](double x) {
        const double err = ce::lp_approx_error(fam, x);
        const bool ok = err < gamma;
        all_pass = all_pass && ok;
        approx.push_back(json{{"x", x}, {"error", err}, {"pass", ok}});
      };
      for (double mult : {1.0, 1.5, 2.0, 4.0, 10.0, 100.0, 1e4}) check_approx(mult * fam.a());
      for (double c : cfg.cs) {
        const auto sample = ce::make_sample(fam, n_max, c);
        for (double x : sample.x) {
          check_approx(x);
          const double dev = ce::sup_deviation(fam, x);
          const bool ok = dev >= 0.5 - 1e-6;
          all_pass = all_pass && ok;
          sup.push_back(json{{"c", c}, {"x", x}, {"sup_deviation", dev}, {"pass", ok}});
        }
        for (int n : cfg.ns) {
          const auto demo = ce::rad_lower_demo(fam, n, c);
          const bool in_range = demo.value >= c && demo.value <= 0.5;
          const bool ok = in_range && demo.violations == 0 && demo.r0_out_of_range == 0;
          all_pass = all_pass && ok;
          demos.push_back(json{{"n", n},
                               {"c", c},
                               {"alpha", demo.alpha},
                               {"value", demo.value},
                               {"sign_vectors", demo.sign_vectors},
                               {"violations", demo.violations},
                               {"r0_out_of_range", demo.r0_out_of_range},
                               {"pass", ok}});
        }
      }
      families.push_back(json{{"gamma", gamma},
                              {"p", p},
                              {"t", fam.t()},
                              {"approx_errors", approx},
                              {"sup_deviation", sup},
                              {"demos", demos}});
    }
  }
  json constant = json::array();
  for (int n : cfg.ns) {
    const double rad = ce::constant_class_rad(n);
    const bool ok = rad == 0.0;
    all_pass = all_pass && ok;
    constant.push_back(json{{"n", n}, {"rad", rad}, {"pass", ok}});
  }
  json report{{"families", families}, {"constant_class", constant}, {"all_pass", all_pass}};
  return {report.dump(1) + "\n", all_pass};
}

std::string cmd_fit(const fs::path& dual_file, int k, bool sum_recurrence) {
  const auto d = io::dual_from_json(io::read_file(dual_file));
  dpfit::FitOptions options;
  options.combine = sum_recurrence ? dpfit::Combine::sum : dpfit::Combine::max;
  return io::fit_to_json(dpfit::fit(d.dual, k, options));
}

std::string cmd_rad(const std::vector<fs::path>& dual_files, const RadOptions& options) {
  if (dual_files.empty()) throw ArgumentError("rad: no dual files given");
  std::vector<PiecewiseConstant> duals;
  for (const auto& f : dual_files) duals.push_back(io::dual_from_json(io::read_file(f)).dual);
  const rademacher::DualSample sample(std::move(duals));
  const auto vectors = rademacher::distinct_vectors(sample);
  const auto n = static_cast<std::uint64_t>(sample.size());
  json out{{"n", n},
           {"distinct_vectors", vectors.size()},
           {"max_segments", sample.max_segments()},
           {"massart", bounds::massart_bound(vectors.size(), n)},
           {"pwc", bounds::pwc_rad_bound(n, sample.max_segments())}};
  if (options.mc_draws == 0) {
    if (sample.size() > rademacher::kExactMaxN) {
      throw ResourceError("rad: exact enumeration needs N <= 20; pass a Monte-Carlo draw count");
    }
    out["mode"] = "exact";
    out["rad"] = rademacher::rad_of_vectors(vectors);
  } else {
    const auto est = rademacher::empirical_rad_mc(sample, options.mc_draws, options.seed);
    out["mode"] = "monte_carlo";
    out["rad"] = est.estimate;
    out["stderr"] = est.stderr_;
    out["draws"] = est.draws;
    out["seed"] = options.seed;
  }
  return out.dump(1) + "\n";
}

}  // namespace cfgbounds::pipeline
