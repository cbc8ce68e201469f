#include "cfgbounds/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <queue>

#include "cfgbounds/error.hpp"
#include "cfgbounds/lp.hpp"

namespace cfgbounds::solver {

void IntegerProgram::validate() const {
  if (n < 0) throw ArgumentError("IntegerProgram: negative variable count");
  if (c.size() != static_cast<std::size_t>(n)) throw ArgumentError("IntegerProgram: |c| != n");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.idx.size() != row.coef.size()) {
      throw ArgumentError("IntegerProgram: row " + std::to_string(r) + " has mismatched idx/coef");
    }
    for (int v : row.idx) {
      if (v < 0 || v >= n) throw ArgumentError("IntegerProgram: row " + std::to_string(r) + " index out of range");
    }
  }
  for (int v : binary) {
    if (v < 0 || v >= n) throw ArgumentError("IntegerProgram: binary index out of range");
  }
}

bool IntegerProgram::is_binary(int var) const {
  return std::find(binary.begin(), binary.end(), var) != binary.end();
}

double IntegerProgram::objective(std::span<const double> z) const {
  double v = 0.0;
  for (int j = 0; j < n; ++j) v += c[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(j)];
  return v;
}

bool IntegerProgram::feasible(std::span<const double> z, double tol) const {
  for (const auto& row : rows) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < row.idx.size(); ++k) lhs += row.coef[k] * z[static_cast<std::size_t>(row.idx[k])];
    if (lhs > row.b + tol) return false;
  }
  return true;
}

double IntegerProgram::c_norm1() const {
  double s = 0.0;
  for (double v : c) s += std::abs(v);
  return s;
}

LpResult solve_lp(const IntegerProgram& ip, const Fixings& fixings) {
  if (fixings.size() != static_cast<std::size_t>(ip.n)) throw ArgumentError("solve_lp: fixings size != n");
  std::vector<int> column_of(static_cast<std::size_t>(ip.n), -1);
  std::vector<int> free_vars;
  for (int j = 0; j < ip.n; ++j) {
    const auto f = fixings[static_cast<std::size_t>(j)];
    if (f == kFree) {
      column_of[static_cast<std::size_t>(j)] = static_cast<int>(free_vars.size());
      free_vars.push_back(j);
    } else if (f != 0 && f != 1) {
      throw ArgumentError("solve_lp: fixings must be -1, 0 or 1");
    } else if (!ip.is_binary(j)) {
      throw ArgumentError("solve_lp: only binary variables may be fixed");
    }
  }

  lp::Problem p;
  p.cols = free_vars.size();
  p.c.resize(p.cols);
  p.upper.assign(p.cols, 1.0);
  for (std::size_t k = 0; k < p.cols; ++k) p.c[k] = ip.c[static_cast<std::size_t>(free_vars[k])];
  for (const auto& row : ip.rows) {
    double rhs = row.b;
    std::vector<double> dense(p.cols, 0.0);
    bool touches_free = false;
    for (std::size_t k = 0; k < row.idx.size(); ++k) {
      const auto v = static_cast<std::size_t>(row.idx[k]);
      if (fixings[v] == kFree) {
        dense[static_cast<std::size_t>(column_of[v])] += row.coef[k];
        touches_free = true;
      } else {
        rhs -= row.coef[k] * fixings[v];
      }
    }
    if (!touches_free) {
      if (rhs < -1e-9) return {};
      continue;
    }
    p.a.insert(p.a.end(), dense.begin(), dense.end());
    p.b.push_back(rhs);
    ++p.rows;
  }

  LpResult out;
  if (p.cols == 0) {
    out.feasible = true;
  } else {
    const lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::optimal) return {};
    out.feasible = true;
    out.point.resize(static_cast<std::size_t>(ip.n));
    for (std::size_t k = 0; k < p.cols; ++k) out.point[static_cast<std::size_t>(free_vars[k])] = sol.x[k];
  }
  out.point.resize(static_cast<std::size_t>(ip.n));
  for (int j = 0; j < ip.n; ++j) {
    const auto f = fixings[static_cast<std::size_t>(j)];
    if (f != kFree) out.point[static_cast<std::size_t>(j)] = f;
  }
  out.value = ip.objective(out.point);
  return out;
}

const LpResult& LpOracle::solve(const Fixings& fixings) {
  std::string key(fixings.size(), '.');
  for (std::size_t j = 0; j < fixings.size(); ++j) {
    if (fixings[j] != kFree) key[j] = static_cast<char>('0' + fixings[j]);
  }
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  ++solves_;
  return cache_.emplace(std::move(key), solve_lp(*ip_, fixings)).first->second;
}

char rule_name(ScoreRule rule) {
  switch (rule) {
    case ScoreRule::L: return 'L';
    case ScoreRule::S: return 'S';
    case ScoreRule::A: return 'A';
    case ScoreRule::P: return 'P';
  }
  return '?';
}

ScoreRule parse_rule(char name) {
  switch (std::toupper(static_cast<unsigned char>(name))) {
    case 'L': return ScoreRule::L;
    case 'S': return ScoreRule::S;
    case 'A': return ScoreRule::A;
    case 'P': return ScoreRule::P;
    default: throw ArgumentError(std::string("unknown scoring rule '") + name + "' (expected L, S, A or P)");
  }
}

const char* policy_name(NodePolicy policy) {
  return policy == NodePolicy::best_bound ? "best_bound" : "depth_first";
}

NodePolicy parse_policy(const std::string& name) {
  if (name == "best_bound") return NodePolicy::best_bound;
  if (name == "depth_first") return NodePolicy::depth_first;
  throw ArgumentError("unknown node policy '" + name + "' (expected best_bound or depth_first)");
}

double rule_score(ScoreRule rule, double delta_down, double delta_up) {
  const double largest = std::max(delta_down, delta_up);
  const double smallest = std::min(delta_down, delta_up);
  switch (rule) {
    case ScoreRule::L: return largest;
    case ScoreRule::S: return smallest;
    case ScoreRule::A: return largest / 6.0 + 5.0 * smallest / 6.0;
    case ScoreRule::P: return std::max(delta_down, 1e-6) * std::max(delta_up, 1e-6);
  }
  return 0.0;
}

void BnbConfig::validate() const {
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("BnbConfig: r must lie in [0, 1]");
  if (kappa < 1) throw ArgumentError("BnbConfig: kappa must be >= 1");
  if (!(fathom_tol >= 0.0) || !(integrality_tol >= 0.0 && integrality_tol < 0.5)) {
    throw ArgumentError("BnbConfig: tolerances out of range");
  }
}

double infeasible_sentinel(const IntegerProgram& ip) { return 2.0 * (ip.c_norm1() + 1.0); }

namespace {

bool is_fractional(double x, double tol) { return std::min(x, 1.0 - x) > tol; }

// Parent-minus-child change, with numerical noise below `tol` folded to 0.
double objective_change(double parent, const LpResult& child, double sentinel, double tol) {
  if (!child.feasible) return sentinel;
  const double d = parent - child.value;
  return d <= tol * (1.0 + std::abs(parent)) ? 0.0 : d;
}

}  // namespace

std::vector<BranchCandidate> branch_scores(LpOracle& oracle, const Fixings& node, const LpResult& lp,
                                           const BnbConfig& config) {
  const IntegerProgram& ip = oracle.program();
  const double sentinel = infeasible_sentinel(ip);
  std::vector<int> vars = ip.binary;
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  std::vector<BranchCandidate> out;
  Fixings child = node;
  for (int v : vars) {
    const auto vi = static_cast<std::size_t>(v);
    if (node[vi] != kFree || !is_fractional(lp.point[vi], config.integrality_tol)) continue;
    BranchCandidate cand;
    cand.var = v;
    child[vi] = 0;
    cand.delta_down = objective_change(lp.value, oracle.solve(child), sentinel, config.fathom_tol);
    child[vi] = 1;
    cand.delta_up = objective_change(lp.value, oracle.solve(child), sentinel, config.fathom_tol);
    child[vi] = kFree;
    cand.score1 = rule_score(config.rule1, cand.delta_down, cand.delta_up);
    cand.score2 = rule_score(config.rule2, cand.delta_down, cand.delta_up);
    cand.combined = (1.0 - config.r) * cand.score1 + config.r * cand.score2;
    out.push_back(cand);
  }
  return out;
}

namespace {

struct Node {
  Fixings fix;
  double bound;
  std::uint64_t seq;
};

struct BestBoundOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;  // larger bound first
    return a.seq > b.seq;                              // then FIFO
  }
};

class OpenList {
 public:
  explicit OpenList(NodePolicy policy) : policy_(policy) {}

  bool empty() const { return policy_ == NodePolicy::best_bound ? heap_.empty() : stack_.empty(); }

  void push(Node node) {
    if (policy_ == NodePolicy::best_bound) {
      heap_.push(std::move(node));
    } else {
      stack_.push_back(std::move(node));
    }
  }

  Node pop() {
    if (policy_ == NodePolicy::best_bound) {
      Node n = heap_.top();
      heap_.pop();
      return n;
    }
    Node n = std::move(stack_.back());
    stack_.pop_back();
    return n;
  }

 private:
  NodePolicy policy_;
  std::priority_queue<Node, std::vector<Node>, BestBoundOrder> heap_;
  std::vector<Node> stack_;
};

double bound_of(const LpResult& lp) {
  return lp.feasible ? lp.value : -std::numeric_limits<double>::infinity();
}

}  // namespace

BnbResult BranchAndBound::run(const BnbConfig& config) {
  config.validate();
  const IntegerProgram& ip = *ip_;
  BnbResult result;
  OpenList open(config.node_policy);
  std::uint64_t seq = 0;
  Fixings root(static_cast<std::size_t>(ip.n), kFree);
  open.push({root, bound_of(oracle_.solve(root)), seq++});

  while (!open.empty()) {
    if (result.tree_size >= config.kappa) {
      result.capped = true;
      break;
    }
    Node node = open.pop();
    ++result.tree_size;
    const LpResult& lp = oracle_.solve(node.fix);
    if (!lp.feasible) continue;
    if (result.incumbent_value && lp.value <= *result.incumbent_value + config.fathom_tol) continue;

    const auto candidates = branch_scores(oracle_, node.fix, lp, config);
    if (candidates.empty()) {
      std::vector<double> z = lp.point;
      for (int v : ip.binary) z[static_cast<std::size_t>(v)] = std::round(z[static_cast<std::size_t>(v)]);
      const double value = ip.objective(z);
      if (!result.incumbent_value || value > *result.incumbent_value) {
        result.incumbent_value = value;
        result.incumbent_solution = std::move(z);
      }
      continue;
    }
    // Candidates arrive in ascending variable order; strict > keeps the
    // lowest index among equal scores.
    const BranchCandidate* chosen = &candidates.front();
    for (const auto& cand : candidates) {
      if (cand.combined > chosen->combined) chosen = &cand;
    }
    result.branch_sequence.push_back(chosen->var);

    const auto vi = static_cast<std::size_t>(chosen->var);
    Fixings down = node.fix;
    down[vi] = 0;
    Fixings up = std::move(node.fix);
    up[vi] = 1;
    const double down_bound = bound_of(oracle_.solve(down));
    const double up_bound = bound_of(oracle_.solve(up));
    open.push({std::move(down), down_bound, seq++});
    open.push({std::move(up), up_bound, seq++});
  }
  result.normalized = static_cast<double>(std::min(result.tree_size, config.kappa)) /
                      static_cast<double>(config.kappa);
  return result;
}

BnbResult branch_and_bound(const IntegerProgram& ip, const BnbConfig& config) {
  BranchAndBound bnb(ip);
  return bnb.run(config);
}

}  // namespace cfgbounds::solver
