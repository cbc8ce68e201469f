#include "cfgbounds/configspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cfgbounds/dpfit.hpp"
#include "cfgbounds/error.hpp"
#include "cfgbounds/parallel.hpp"

namespace cfgbounds::configspace {

using solver::IntegerProgram;

void WdpGenConfig::validate() const {
  if (goods < 1) throw ArgumentError("generator: goods must be >= 1");
  if (bids < 1) throw ArgumentError("generator: bids must be >= 1");
  if (bundle_min < 1 || bundle_max < bundle_min) throw ArgumentError("generator: need 1 <= bundle_min <= bundle_max");
  if (!(price_noise_lo > 0.0 && price_noise_hi >= price_noise_lo)) {
    throw ArgumentError("generator: need 0 < price_noise_lo <= price_noise_hi");
  }
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

IntegerProgram generate_instance(const WdpGenConfig& cfg) {
  cfg.validate();
  std::mt19937_64 gen(cfg.seed);
  const int lo = std::min(cfg.bundle_min, cfg.goods);
  const int hi = std::min(cfg.bundle_max, cfg.goods);
  std::uniform_int_distribution<int> size_dist(lo, hi);
  std::uniform_real_distribution<double> noise(cfg.price_noise_lo, cfg.price_noise_hi);

  IntegerProgram ip;
  ip.n = cfg.bids;
  ip.c.resize(static_cast<std::size_t>(cfg.bids));
  std::vector<std::vector<int>> bidders_of(static_cast<std::size_t>(cfg.goods));
  std::vector<int> goods(static_cast<std::size_t>(cfg.goods));
  for (int bid = 0; bid < cfg.bids; ++bid) {
    const int size = size_dist(gen);
    std::iota(goods.begin(), goods.end(), 0);
    // Partial Fisher-Yates: the first `size` entries form the bundle.
    for (int k = 0; k < size; ++k) {
      std::uniform_int_distribution<int> pick(k, cfg.goods - 1);
      std::swap(goods[static_cast<std::size_t>(k)], goods[static_cast<std::size_t>(pick(gen))]);
      bidders_of[static_cast<std::size_t>(goods[static_cast<std::size_t>(k)])].push_back(bid);
    }
    const double price = static_cast<double>(size) * noise(gen);
    ip.c[static_cast<std::size_t>(bid)] = std::round(price * 1024.0) / 1024.0;
    ip.binary.push_back(bid);
  }
  for (const auto& bidders : bidders_of) {
    if (bidders.empty()) continue;
    solver::Row row;
    row.idx = bidders;
    row.coef.assign(bidders.size(), 1.0);
    row.b = 1.0;
    ip.rows.push_back(std::move(row));
  }
  return ip;
}

std::string RulePair::label() const {
  return std::string{solver::rule_name(first), '-', solver::rule_name(second)};
}

RulePair RulePair::parse(const std::string& text) {
  if (text.size() != 3 || (text[1] != ',' && text[1] != '-')) {
    throw ArgumentError("rule pair must look like L,S or L-S, got '" + text + "'");
  }
  return {solver::parse_rule(text[0]), solver::parse_rule(text[2])};
}

namespace {

class DualTracer {
 public:
  DualTracer(const IntegerProgram& ip, RulePair rules, std::int64_t kappa, const ExtractOptions& opt)
      : bnb_(ip), opt_(opt) {
    config_.rule1 = rules.first;
    config_.rule2 = rules.second;
    config_.kappa = kappa;
    config_.node_policy = opt.node_policy;
  }

  std::int64_t size_at(double r) {
    config_.r = r;
    ++evaluations_;
    return std::min(bnb_.run(config_).tree_size, config_.kappa);
  }

  // Bisects [a, b] (values va != vb), appending breakpoints and the value to
  // their right.
  void refine(double a, std::int64_t va, double b, std::int64_t vb) {
    if (va == vb) return;
    if (b - a <= opt_.grid_eps) {
      breaks_.push_back(0.5 * (a + b));
      sizes_.push_back(vb);
      return;
    }
    const double m = 0.5 * (a + b);
    const std::int64_t vm = size_at(m);
    refine(a, va, m, vm);
    refine(m, vm, b, vb);
  }

  void trace() {
    const int cells = 1 << opt_.base_grid_log2;
    std::vector<std::int64_t> grid(static_cast<std::size_t>(cells) + 1);
    for (int k = 0; k <= cells; ++k) grid[static_cast<std::size_t>(k)] = size_at(static_cast<double>(k) / cells);
    sizes_.push_back(grid[0]);
    for (int k = 0; k < cells; ++k) {
      refine(static_cast<double>(k) / cells, grid[static_cast<std::size_t>(k)],
             static_cast<double>(k + 1) / cells, grid[static_cast<std::size_t>(k) + 1]);
    }
  }

  // Drops plateaus narrower than grid_eps / 2 (near-duplicate breakpoints).
  void merge_near_duplicates() {
    std::vector<double> b;
    std::vector<std::int64_t> v{sizes_.front()};
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (!b.empty() && breaks_[i] - b.back() < opt_.grid_eps / 2) {
        v.back() = sizes_[i + 1];
        continue;
      }
      b.push_back(breaks_[i]);
      v.push_back(sizes_[i + 1]);
    }
    breaks_ = std::move(b);
    sizes_ = std::move(v);
  }

  PiecewiseConstant dual() const {
    std::vector<double> b{0.0};
    b.insert(b.end(), breaks_.begin(), breaks_.end());
    b.push_back(1.0);
    std::vector<double> vals;
    vals.reserve(sizes_.size());
    for (auto s : sizes_) vals.push_back(static_cast<double>(s) / static_cast<double>(config_.kappa));
    return PiecewiseConstant(std::move(b), std::move(vals));
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  solver::BranchAndBound bnb_;
  ExtractOptions opt_;
  solver::BnbConfig config_;
  std::vector<double> breaks_;
  std::vector<std::int64_t> sizes_;
  std::size_t evaluations_ = 0;
};

}  // namespace

DualExtraction extract_dual(const IntegerProgram& ip, RulePair rules, std::int64_t kappa,
                            const ExtractOptions& options, std::string instance) {
  if (!(options.grid_eps > 0.0)) throw ArgumentError("extract_dual: grid_eps must be > 0");
  if (kappa < 1) throw ArgumentError("extract_dual: kappa must be >= 1");
  if (options.base_grid_log2 < 0 || options.base_grid_log2 > 20) {
    throw ArgumentError("extract_dual: base grid exponent out of range");
  }
  DualTracer tracer(ip, rules, kappa, options);
  tracer.trace();
  tracer.merge_near_duplicates();
  DualExtraction out;
  out.instance = std::move(instance);
  out.dual = tracer.dual();
  out.grid_eps = options.grid_eps;
  out.kappa = kappa;
  out.rules = rules;
  out.node_policy = options.node_policy;
  out.n_vars = ip.n;
  out.evaluations = tracer.evaluations();
  return out;
}

namespace {

std::vector<DualExtraction> extract_all(const std::vector<IntegerProgram>& instances,
                                        const std::vector<std::string>& ids, RulePair rules,
                                        std::int64_t kappa, const ExtractOptions& options,
                                        bool parallel) {
  if (ids.size() != instances.size()) throw ArgumentError("extract_duals: ids and instances differ in length");
  std::vector<DualExtraction> out(instances.size());
  const auto n = static_cast<std::int64_t>(instances.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::thread_count())
    for (std::int64_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      out[k] = extract_dual(instances[k], rules, kappa, options, ids[k]);
    }
  } else {
    for (std::size_t k = 0; k < instances.size(); ++k) {
      out[k] = extract_dual(instances[k], rules, kappa, options, ids[k]);
    }
  }
  return out;
}

}  // namespace

std::vector<DualExtraction> extract_duals(const std::vector<IntegerProgram>& instances,
                                          const std::vector<std::string>& ids, RulePair rules,
                                          std::int64_t kappa, const ExtractOptions& options) {
  return extract_all(instances, ids, rules, kappa, options, true);
}

std::vector<DualExtraction> extract_duals_serial(const std::vector<IntegerProgram>& instances,
                                                 const std::vector<std::string>& ids, RulePair rules,
                                                 std::int64_t kappa, const ExtractOptions& options) {
  return extract_all(instances, ids, rules, kappa, options, false);
}

std::vector<double> uniform_r_grid(int points) {
  if (points < 2) throw ArgumentError("r grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (points - 1);
  return grid;
}

KappaSelection select_kappa(const std::vector<IntegerProgram>& instances, RulePair rules,
                            const std::vector<double>& r_grid, std::int64_t hard_cap,
                            solver::NodePolicy policy) {
  if (instances.empty()) throw ArgumentError("select_kappa: no instances");
  if (r_grid.empty()) throw ArgumentError("select_kappa: empty r grid");
  if (hard_cap < 1) throw ArgumentError("select_kappa: hard cap must be >= 1");
  std::vector<std::int64_t> largest(instances.size(), 0);
  std::vector<char> saturated(instances.size(), 0);
  const auto n = static_cast<std::int64_t>(instances.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::thread_count())
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    solver::BranchAndBound bnb(instances[k]);
    solver::BnbConfig cfg;
    cfg.rule1 = rules.first;
    cfg.rule2 = rules.second;
    cfg.kappa = hard_cap;
    cfg.node_policy = policy;
    for (double r : r_grid) {
      cfg.r = r;
      const auto res = bnb.run(cfg);
      largest[k] = std::max(largest[k], res.tree_size);
      if (res.capped) saturated[k] = 1;
    }
  }
  KappaSelection out;
  out.kappa = *std::max_element(largest.begin(), largest.end());
  out.saturated = std::any_of(saturated.begin(), saturated.end(), [](char s) { return s != 0; });
  if (out.saturated) out.kappa = hard_cap;
  return out;
}

bounds::ApproxProfile approx_profile(const std::vector<PiecewiseConstant>& duals, int j_lo, int j_hi) {
  if (duals.empty()) throw ArgumentError("approx_profile: no duals");
  if (j_lo < 1 || j_hi < j_lo) throw ArgumentError("approx_profile: empty j range");
  std::vector<std::vector<double>> errors(duals.size());
  const auto n = static_cast<std::int64_t>(duals.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::thread_count())
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    errors[k] = dpfit::fit_errors(duals[k], j_hi);
  }
  bounds::ApproxProfile profile;
  profile.j_lo = j_lo;
  profile.m = duals.size();
  for (const auto& d : duals) profile.j_star = std::max(profile.j_star, d.segments());
  for (int j = j_lo; j <= j_hi; ++j) {
    double sum = 0.0;
    for (const auto& e : errors) sum += e[static_cast<std::size_t>(j - 1)];
    profile.e_hat.push_back(sum / static_cast<double>(duals.size()));
  }
  return profile;
}

}  // namespace cfgbounds::configspace
