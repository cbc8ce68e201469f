#include <cstdlib>
#include <filesystem>
#include <unistd.h>

#include "cfgbounds/error.hpp"
#include "cfgbounds/io.hpp"
#include "cfgbounds/pipeline.hpp"
#include "doctest.h"

using namespace cfgbounds;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cfgb_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

pipeline::PipelineConfig small_config(const fs::path& out) {
  pipeline::PipelineConfig cfg;
  cfg.out = out;
  cfg.instances = 5;
  cfg.grid_eps = 1e-3;
  cfg.j_hi = 16;
  return cfg;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("config validation") {
  pipeline::PipelineConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.delta = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.j_lo = 5;
  cfg.j_hi = 4;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.n_hi = cfg.n_lo;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.kappa = 0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("gen writes instances and a manifest deterministically") {
  const auto out = scratch("gen");
  auto cfg = small_config(out);
  const auto s = pipeline::cmd_gen(cfg);
  CHECK(s.ids.size() == 5);
  CHECK(s.ids.front() == "inst_0000");
  const auto manifest = io::read_file(pipeline::manifest_path(cfg));
  const auto first = io::read_file(pipeline::instance_path(cfg, "inst_0003"));
  CHECK(manifest.find("\"seed\"") != std::string::npos);
  CHECK(manifest.find(std::to_string(configspace::derive_seed(1, 3))) != std::string::npos);
  pipeline::cmd_gen(cfg);
  CHECK(io::read_file(pipeline::manifest_path(cfg)) == manifest);
  CHECK(io::read_file(pipeline::instance_path(cfg, "inst_0003")) == first);

  cfg.instances = 0;
  cfg.out = out / "empty";
  CHECK(pipeline::cmd_gen(cfg).ids.empty());
  CHECK(io::read_file(pipeline::manifest_path(cfg)).find("\"instances\": []") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("duals are resumable and report missing instances") {
  const auto out = scratch("duals");
  auto cfg = small_config(out);
  pipeline::cmd_gen(cfg);
  const auto first = pipeline::cmd_duals(cfg);
  CHECK(first.extracted == 5);
  CHECK(first.skipped == 0);
  CHECK(first.kappa >= 1);
  const auto text = io::read_file(pipeline::dual_path(cfg, "inst_0001"));

  const auto again = pipeline::cmd_duals(cfg);
  CHECK(again.extracted == 0);
  CHECK(again.skipped == 5);
  CHECK(again.kappa == first.kappa);

  fs::remove(pipeline::dual_path(cfg, "inst_0001"));
  CHECK(pipeline::cmd_duals(cfg).extracted == 1);
  CHECK(io::read_file(pipeline::dual_path(cfg, "inst_0001")) == text);

  cfg.grid_eps = 1e-4;
  CHECK(pipeline::cmd_duals(cfg).extracted == 5);

  fs::remove(pipeline::instance_path(cfg, "inst_0002"));
  fs::remove(pipeline::instance_path(cfg, "inst_0004"));
  try {
    pipeline::cmd_duals(cfg);
    FAIL("expected an IoError");
  } catch (const IoError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("inst_0002") != std::string::npos);
    CHECK(msg.find("inst_0004") != std::string::npos);
  }
  fs::remove_all(out);
}

TEST_CASE("identical rules give constant duals") {
  const auto out = scratch("ll");
  auto cfg = small_config(out);
  cfg.rules = configspace::RulePair::parse("L,L");
  pipeline::cmd_gen(cfg);
  pipeline::cmd_duals(cfg);
  for (const auto& d : pipeline::load_duals(cfg)) CHECK(d.dual.segments() == 1);
  fs::remove_all(out);
}

TEST_CASE("bounds from extracted duals") {
  const auto out = scratch("bounds");
  auto cfg = small_config(out);
  cfg.kappa = 60;
  pipeline::cmd_gen(cfg);
  pipeline::cmd_duals(cfg);
  const auto s = pipeline::cmd_bounds(cfg);
  CHECK(s.kappa == 60);
  CHECK(s.n_vars == 20);
  CHECK(s.profile.m == 5);
  CHECK(s.profile.e_hat.size() == 16);
  for (const auto& row : s.curve.rows) {
    CHECK(row.reported() <= row.worst_case);
    CHECK(row.reported() <= row.srm);
  }
  const auto csv = io::read_file(out / "bounds.csv");
  CHECK(io::curve_to_csv(io::curve_from_csv(csv)) == csv);
  const auto profile = io::read_file(out / "profile.csv");
  CHECK(io::profile_to_csv(io::profile_from_csv(profile)) == profile);
  CHECK(fs::exists(out / "reported.csv"));
  CHECK_THROWS_AS(pipeline::compute_bounds({}, cfg), ArgumentError);

  fs::remove(pipeline::dual_path(cfg, "inst_0000"));
  CHECK_THROWS_AS(pipeline::cmd_bounds(cfg), IoError);
  fs::remove_all(out);
}

TEST_CASE("fit and rad commands") {
  const auto out = scratch("fitrad");
  auto cfg = small_config(out);
  pipeline::cmd_gen(cfg);
  pipeline::cmd_duals(cfg);
  const auto fit = pipeline::cmd_fit(pipeline::dual_path(cfg, "inst_0000"), 2);
  CHECK(fit.find("\"error\"") != std::string::npos);
  std::vector<fs::path> files;
  for (int i = 0; i < 5; ++i) files.push_back(pipeline::dual_path(cfg, pipeline::instance_id(i)));
  const auto exact = pipeline::cmd_rad(files, {});
  CHECK(exact.find("\"mode\": \"exact\"") != std::string::npos);
  const auto mc = pipeline::cmd_rad(files, {5000, 3});
  CHECK(mc.find("\"stderr\"") != std::string::npos);
  CHECK(mc == pipeline::cmd_rad(files, {5000, 3}));
  CHECK_THROWS_AS(pipeline::cmd_rad({}, {}), ArgumentError);
  fs::remove_all(out);
}

TEST_CASE("counterexample report") {
  pipeline::CounterexampleConfig cfg;
  cfg.gammas = {0.1};
  cfg.ps = {1.0, 2.0, 3.0};
  cfg.ns = {8};
  cfg.cs = {0.45};
  const auto report = pipeline::cmd_counterexample(cfg);
  CHECK(report.all_pass);
  CHECK(report.json.find("\"constant_class\"") != std::string::npos);
  CHECK(report.json == pipeline::cmd_counterexample(cfg).json);

  cfg.gammas = {0.3};
  try {
    pipeline::cmd_counterexample(cfg);
    FAIL("expected an ArgumentError");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("gamma < 1/4") != std::string::npos);
  }
  cfg.gammas = {0.1};
  cfg.ns = {17};
  CHECK_THROWS_AS(pipeline::cmd_counterexample(cfg), ArgumentError);
}

}
