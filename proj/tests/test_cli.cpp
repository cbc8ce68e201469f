#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(CONFIGBOUNDS_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  const fs::path out = fs::temp_directory_path() / ("cfgb_cli_" + std::to_string(::getpid()));
  fs::remove_all(out);
  const std::string o = " --out " + out.string();
  CHECK(run("--help") == 0);
  CHECK(run("") == 2);
  CHECK(run("gen --instances 3" + o) == 0);
  CHECK(run("duals --grid-eps 1e-3" + o) == 0);
  CHECK(run("bounds --j-range 1:8" + o) == 0);
  CHECK(run("bounds --j-range 8" + o) == 2);
  CHECK(run("bounds --paper-mode --j-range 1:8" + o) == 0);
  CHECK(run("bounds --n-range 1e3:1e8" + o) == 0);
  CHECK(run("bounds --n-range 1e3:2.5" + o) == 2);
  CHECK(run("duals --kappa lots" + o) == 2);
  CHECK(run("duals --rules L,Z" + o) == 2);
  CHECK(run("duals --out " + (out / "nowhere").string()) == 3);
  CHECK(run("fit " + (out / "duals" / "inst_0000.json").string() + " -k 2") == 0);
  CHECK(run("rad " + (out / "duals" / "inst_0000.json").string()) == 0);
  CHECK(run("counterexample --gamma 0.3" + o) == 2);
  CHECK(run("counterexample --gamma 0.1 --n 4 --c 0.45" + o) == 0);
  CHECK(fs::exists(out / "counterexample.json"));
  fs::remove_all(out);
}

}
