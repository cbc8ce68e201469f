#include <random>

#include "cfgbounds/error.hpp"
#include "cfgbounds/solver.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cfgbounds;
using namespace cfgbounds::solver;

namespace {

IntegerProgram single_bid() {
  IntegerProgram ip;
  ip.n = 1;
  ip.c = {1.5};
  ip.rows = {{{0}, {1.0}, 1.0}};
  ip.binary = {0};
  return ip;
}

// Root relaxation (7/9, 0, 2/3). Branching on z0 changes the bound by
// (7/12, 7/6); on z2 by (1/6, infeasible), so L and S disagree at the root.
IntegerProgram three_var() {
  IntegerProgram ip;
  ip.n = 3;
  ip.c = {0.75, 2.0, 2.0};
  ip.rows = {{{1, 2}, {3.0, 3.0}, 2.0}, {{0, 1, 2}, {3.0, 2.0, 1.0}, 3.0}};
  ip.binary = {0, 1, 2};
  return ip;
}

IntegerProgram random_packing(std::mt19937_64& gen, int bids, int goods) {
  IntegerProgram ip;
  ip.n = bids;
  std::uniform_real_distribution<double> price(0.5, 3.0);
  std::vector<std::vector<int>> holders(static_cast<std::size_t>(goods));
  for (int j = 0; j < bids; ++j) {
    ip.c.push_back(std::round(price(gen) * 64.0) / 64.0);
    ip.binary.push_back(j);
    for (int g = 0; g < goods; ++g) {
      if (gen() % 3 == 0) holders[static_cast<std::size_t>(g)].push_back(j);
    }
  }
  for (const auto& h : holders) {
    if (h.empty()) continue;
    ip.rows.push_back({h, std::vector<double>(h.size(), 1.0), 1.0});
  }
  return ip;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("program validation") {
  IntegerProgram ip = single_bid();
  CHECK_NOTHROW(ip.validate());
  ip.rows[0].idx = {3};
  CHECK_THROWS_AS(ip.validate(), ArgumentError);
  ip = single_bid();
  ip.c.push_back(1.0);
  CHECK_THROWS_AS(ip.validate(), ArgumentError);
}

TEST_CASE("scoring rules") {
  CHECK(rule_score(ScoreRule::L, 2.0, 3.0) == 3.0);
  CHECK(rule_score(ScoreRule::S, 2.0, 3.0) == 2.0);
  CHECK(rule_score(ScoreRule::A, 2.0, 3.0) == doctest::Approx(3.0 / 6.0 + 10.0 / 6.0));
  CHECK(rule_score(ScoreRule::P, 2.0, 3.0) == 6.0);
  CHECK(rule_score(ScoreRule::P, 0.0, 3.0) == doctest::Approx(3e-6));
  CHECK(parse_rule('l') == ScoreRule::L);
  CHECK(rule_name(ScoreRule::P) == 'P');
  CHECK_THROWS_AS(parse_rule('X'), ArgumentError);
  CHECK(parse_policy("depth_first") == NodePolicy::depth_first);
  CHECK_THROWS_AS(parse_policy("dfs"), ArgumentError);
}

TEST_CASE("configuration validation") {
  BnbConfig c;
  c.r = 1.5;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c.r = 0.5;
  c.kappa = 0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
}

TEST_CASE("node relaxations") {
  const IntegerProgram ip = three_var();
  const Fixings root(3, kFree);
  const auto lp = solve_lp(ip, root);
  REQUIRE(lp.feasible);
  CHECK(lp.value == doctest::Approx(23.0 / 12.0));
  CHECK(lp.point[0] == doctest::Approx(7.0 / 9.0));
  CHECK(lp.point[1] == doctest::Approx(0.0));
  CHECK(lp.point[2] == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(solve_lp(ip, {kFree, kFree, 1}).feasible);
  CHECK(solve_lp(ip, {1, 0, 0}).value == 0.75);
  CHECK_THROWS_AS(solve_lp(ip, {2, kFree, kFree}), ArgumentError);

  IntegerProgram mixed = ip;
  mixed.binary = {0, 1};
  CHECK_THROWS_AS(solve_lp(mixed, {kFree, kFree, 0}), ArgumentError);
}

TEST_CASE("strong-branching scores at the root") {
  const IntegerProgram ip = three_var();
  LpOracle oracle(ip);
  const Fixings root(3, kFree);
  BnbConfig cfg;
  const auto cands = branch_scores(oracle, root, oracle.solve(root), cfg);
  REQUIRE(cands.size() == 2);
  CHECK(cands[0].var == 0);
  CHECK(cands[0].delta_down == doctest::Approx(7.0 / 12.0));
  CHECK(cands[0].delta_up == doctest::Approx(7.0 / 6.0));
  CHECK(cands[1].var == 2);
  CHECK(cands[1].delta_down == doctest::Approx(1.0 / 6.0));
  CHECK(cands[1].delta_up == infeasible_sentinel(ip));
  CHECK(infeasible_sentinel(ip) == 11.5);
}

TEST_CASE("rules disagree on the crafted instance") {
  const IntegerProgram ip = three_var();
  BnbConfig cfg;
  cfg.rule1 = ScoreRule::L;
  cfg.rule2 = ScoreRule::S;
  cfg.r = 0.0;
  const auto l = branch_and_bound(ip, cfg);
  cfg.r = 1.0;
  const auto s = branch_and_bound(ip, cfg);
  REQUIRE_FALSE(l.branch_sequence.empty());
  REQUIRE_FALSE(s.branch_sequence.empty());
  CHECK(l.branch_sequence.front() == 2);
  CHECK(s.branch_sequence.front() == 0);
  CHECK(l.tree_size == 5);
  CHECK(s.tree_size == 7);
  CHECK(*l.incumbent_value == *s.incumbent_value);
  CHECK(*l.incumbent_value == testing_support::enumerate_optimum(ip));
}

TEST_CASE("trivial instances") {
  const auto one = branch_and_bound(single_bid(), {});
  CHECK(one.tree_size == 1);
  CHECK(*one.incumbent_value == 1.5);
  CHECK(one.branch_sequence.empty());

  IntegerProgram both;
  both.n = 2;
  both.c = {1.25, 2.5};
  both.rows = {{{0, 1}, {1.0, 1.0}, 1.0}};
  both.binary = {0, 1};
  CHECK(*branch_and_bound(both, {}).incumbent_value == 2.5);
}

TEST_CASE("cap stops the search") {
  const IntegerProgram ip = three_var();
  BnbConfig cfg;
  cfg.kappa = 2;
  const auto r = branch_and_bound(ip, cfg);
  CHECK(r.capped);
  CHECK(r.tree_size == 2);
  CHECK(r.normalized == 1.0);

  cfg.kappa = 1000;
  const auto full = branch_and_bound(ip, cfg);
  CHECK_FALSE(full.capped);
  CHECK(full.normalized == doctest::Approx(full.tree_size / 1000.0));
}

TEST_CASE("incumbent equals enumeration") {
  std::mt19937_64 gen(17);
  for (int rep = 0; rep < 80; ++rep) {
    const IntegerProgram ip = random_packing(gen, 2 + rep % 10, 2 + rep % 6);
    const double expected = testing_support::enumerate_optimum(ip);
    for (auto policy : {NodePolicy::best_bound, NodePolicy::depth_first}) {
      for (auto rule : {ScoreRule::L, ScoreRule::S, ScoreRule::A, ScoreRule::P}) {
        BnbConfig cfg;
        cfg.rule1 = rule;
        cfg.rule2 = ScoreRule::L;
        cfg.r = 0.3;
        cfg.node_policy = policy;
        cfg.kappa = 1 << 20;
        const auto r = branch_and_bound(ip, cfg);
        REQUIRE(r.incumbent_value.has_value());
        CHECK(*r.incumbent_value == expected);
        CHECK(ip.feasible(*r.incumbent_solution));
        CHECK(ip.objective(*r.incumbent_solution) == expected);
      }
    }
  }
}

TEST_CASE("relaxations are reused across runs") {
  std::mt19937_64 gen(23);
  const IntegerProgram ip = random_packing(gen, 12, 6);
  BranchAndBound bnb(ip);
  BnbConfig cfg;
  const auto first = bnb.run(cfg);
  const auto solves = bnb.oracle().lp_solves();
  const auto second = bnb.run(cfg);
  CHECK(bnb.oracle().lp_solves() == solves);
  CHECK(first.tree_size == second.tree_size);
  CHECK(first.branch_sequence == second.branch_sequence);
  CHECK(branch_and_bound(ip, cfg).tree_size == first.tree_size);
}

}
