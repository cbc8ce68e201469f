#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cfgbounds::solver {

/// One sparse constraint row: sum coef[k] * z[idx[k]] <= b.
struct Row {
  std::vector<int> idx;
  std::vector<double> coef;
  double b = 0.0;
};

/// maximize c.z  s.t.  rows,  0 <= z <= 1,  z_i in {0, 1} for i in `binary`.
struct IntegerProgram {
  int n = 0;
  std::vector<double> c;
  std::vector<Row> rows;
  std::vector<int> binary;

  std::size_t m() const { return rows.size(); }
  /// Throws ArgumentError on out-of-range indices or size mismatches.
  void validate() const;
  bool is_binary(int var) const;
  double objective(std::span<const double> z) const;
  bool feasible(std::span<const double> z, double tol = 1e-9) const;
  /// ||c||_1
  double c_norm1() const;
};

/// Per-variable fixing state along a branch: kFree, 0 or 1.
using Fixings = std::vector<std::int8_t>;
inline constexpr std::int8_t kFree = -1;

struct LpResult {
  bool feasible = false;
  double value = 0.0;
  /// Full-length point (fixed variables included); empty when infeasible.
  std::vector<double> point;
};

/// LP relaxation at a node: fixed variables substituted, the rest in [0, 1].
LpResult solve_lp(const IntegerProgram& ip, const Fixings& fixings);

/// Memoises node relaxations for one program. The relaxation is a pure
/// function of the fixings, so runs with different branching parameters can
/// share it. Not thread-safe; use one per worker.
class LpOracle {
 public:
  explicit LpOracle(const IntegerProgram& ip) : ip_(&ip) {}

  const LpResult& solve(const Fixings& fixings);
  const IntegerProgram& program() const { return *ip_; }
  std::size_t lp_solves() const { return solves_; }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  const IntegerProgram* ip_;
  std::unordered_map<std::string, LpResult> cache_;
  std::size_t solves_ = 0;
};

enum class ScoreRule { L, S, A, P };
enum class NodePolicy { best_bound, depth_first };

char rule_name(ScoreRule rule);
/// Accepts 'L', 'S', 'A', 'P' (case-insensitive).
ScoreRule parse_rule(char name);

/// "best_bound" / "depth_first".
const char* policy_name(NodePolicy policy);
/// Inverse of policy_name; ArgumentError on anything else.
NodePolicy parse_policy(const std::string& name);

/// score_L = max, score_S = min, score_A = L/6 + 5S/6,
/// score_P = max(d_down, 1e-6) * max(d_up, 1e-6).
double rule_score(ScoreRule rule, double delta_down, double delta_up);

struct BnbConfig {
  ScoreRule rule1 = ScoreRule::L;
  ScoreRule rule2 = ScoreRule::S;
  /// Weight on rule2 in (1 - r) score1 + r score2.
  double r = 0.0;
  std::int64_t kappa = 1000;
  NodePolicy node_policy = NodePolicy::best_bound;
  double fathom_tol = 1e-9;
  double integrality_tol = 1e-6;

  void validate() const;
};

/// Strong-branching data for one fractional candidate.
struct BranchCandidate {
  int var = 0;
  /// Parent LP value minus child LP value (sentinel when the child is infeasible).
  double delta_down = 0.0;
  double delta_up = 0.0;
  double score1 = 0.0;
  double score2 = 0.0;
  double combined = 0.0;
};

/// Sentinel objective change for an infeasible child: 2 (||c||_1 + 1).
double infeasible_sentinel(const IntegerProgram& ip);

/// Scores every unfixed binary variable that is fractional in `lp` by solving
/// both child relaxations. An empty result means the node is integral.
std::vector<BranchCandidate> branch_scores(LpOracle& oracle, const Fixings& node,
                                           const LpResult& lp, const BnbConfig& config);

struct BnbResult {
  std::int64_t tree_size = 0;
  bool capped = false;
  std::optional<double> incumbent_value;
  std::optional<std::vector<double>> incumbent_solution;
  /// min(tree_size, kappa) / kappa
  double normalized = 0.0;
  /// Branching variable of every expanded node, in expansion order.
  std::vector<int> branch_sequence;
};

/// Branch-and-bound bound to one program; reuses relaxations across runs.
/// Tree size counts every node taken off the open list (root included); the
/// run stops with `capped` set when that count reaches kappa while open
/// nodes remain.
class BranchAndBound {
 public:
  explicit BranchAndBound(const IntegerProgram& ip) : ip_(&ip), oracle_(ip) { ip.validate(); }

  BnbResult run(const BnbConfig& config);
  LpOracle& oracle() { return oracle_; }

 private:
  const IntegerProgram* ip_;
  LpOracle oracle_;
};

BnbResult branch_and_bound(const IntegerProgram& ip, const BnbConfig& config);

}  // namespace cfgbounds::solver
