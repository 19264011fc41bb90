#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "greenlab/cli.hpp"

using namespace greenlab;
using json = nlohmann::json;

namespace {
std::string cli() {
  const char* c = std::getenv("GREENLAB_CLI");
  return c ? c : "./greenlab";
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("greenlab_cli_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

int run(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = cli() + " " + args + " --out " + out.string() + " > " + (out.string() + ".stdout") + " 2> " +
                          (out.string() + ".stderr");
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}
}  // namespace

TEST_CASE("config parsing and defaults") {
  const RunConfig d = config_from_json(json::object());
  CHECK(d.dim == 2);
  CHECK(d.intervals == std::vector<int>{64, 64});
  const RunConfig c = config_from_json(json::parse(R"({"domain":{"dim":3,"intervals":16},"kernels":{"rho_h":3,"sources":[[0.5,0.5,0.5]]},"seed":9})"));
  CHECK(c.dim == 3);
  CHECK(c.intervals == std::vector<int>{16, 16, 16});
  CHECK(c.extent == std::vector<double>{1, 1, 1});
  CHECK(c.rho_h == 3.0);
  CHECK(c.sources.size() == 1);
  CHECK(c.seed == 9);
  const RunConfig r = config_from_json(config_to_json(c));
  CHECK(config_to_json(r) == config_to_json(c));
  RunConfig bad = d;
  bad.dim = 4;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = d;
  bad.method = "magic";
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = d;
  bad.coeff = {{"kind", "nope"}};
  const Mesh m = config_mesh(d);
  CHECK_THROWS_AS(config_coeff(m, bad), std::invalid_argument);
}

TEST_CASE("coefficient and source kinds") {
  RunConfig c;
  c.intervals = {16, 16};
  const Mesh m = config_mesh(c);
  c.coeff = {{"kind", "distance"}, {"gammas", {0.25, 0.0}}};
  CHECK(config_coeff(m, c).envelope_b[0] == 0.0);
  c.coeff = {{"kind", "diagonal"}, {"values", {1.0, 4.0}}};
  CHECK(config_coeff(m, c).envelope_bbar[5] == 4.0);
  c.coeff = {{"kind", "full"}, {"matrix", {{2.0, 1.0}, {1.0, 2.0}}}};
  CHECK(!config_coeff(m, c).diagonal);
  c.coeff = {{"kind", "random_diagonal"}, {"min", 0.5}, {"max", 2.0}};
  const auto rd = config_coeff(m, c);
  for (double b : rd.envelope_b) CHECK(b >= 0.5 - 1e-12);
  c.source = {{"kind", "bump"}, {"radius", 0.2}};
  const auto f = config_source(m, c);
  CHECK(f[m.index(8, 8)] == 1.0);
  CHECK(f[0] == 0.0);
  c.source = {{"kind", "random"}, {"seed", 4}};
  CHECK(config_source(m, c) == config_source(m, c));
}

TEST_CASE("params subcommand") {
  const auto out = scratch("params");
  REQUIRE(run("params --N 3 --zeta 0.005", out) == 0);
  const json j = json::parse(slurp(out / "params.json"));
  CHECK(j["command"] == "params");
  CHECK(j["parameters"]["violations"].empty());
  CHECK(j["parameters"]["t_lower_bound"] == "11/7");
  CHECK(j["exponent_ledger"]["all_identities_hold"] == true);
  CHECK(j.contains("seed"));
}

TEST_CASE("weights pathological table") {
  const auto out = scratch("weights");
  REQUIRE(run("weights --pathological --beta 2 --kmax 8", out) == 0);
  const json j = json::parse(slurp(out / "weights.json"));
  REQUIRE(j["tables"].size() == 2);
  for (const auto& t : j["tables"]) CHECK(t["strictly_increasing"] == true);
  CHECK(std::filesystem::exists(out / "weights_pathological.csv"));
}

TEST_CASE("validation and solver failures map to exit codes") {
  const auto out = scratch("errors");
  CHECK(run("params --N 12", out) == 1);
  CHECK(slurp(out.string() + ".stderr").find("N must lie in 2..8") != std::string::npos);
  CHECK(run("solve --intervals 2", out) == 1);
  CHECK(run("nonsense", out) == 1);
  const auto cfg = out.string() + "_cfg.json";
  std::ofstream(cfg) << R"({"domain":{"intervals":32},"solver":{"method":"pcg","tol":1e-300}})";
  CHECK(run("--config " + cfg + " solve", out) == 2);
  std::ofstream(cfg) << R"({"domain":{"intervals": "many"}})";
  CHECK(run("--config " + cfg + " solve", out) == 1);
}

TEST_CASE("help lists the flags") {
  const auto out = scratch("help");
  CHECK(run("--help", out) == 0);
  const std::string h = slurp(out.string() + ".stdout");
  for (const char* f : {"--config", "--out", "--seed", "--jobs", "verify-aux", "moser-bound", "sobolev-check"})
    CHECK(h.find(f) != std::string::npos);
}

TEST_CASE("solve, green and decay are deterministic") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const char* cmd : {"solve", "green", "decay", "holder"}) {
    REQUIRE(run(std::string("--intervals 32 --rho-h 3 ") + cmd, a) == 0);
    REQUIRE(run(std::string("--intervals 32 --rho-h 3 ") + cmd, b) == 0);
  }
  for (const char* f : {"solve.json", "green.json", "decay.json", "holder.json"}) {
    const std::string x = slurp(a / f), y = slurp(b / f);
    CHECK(!x.empty());
    CHECK(x == y);
  }
  const json s = json::parse(slurp(a / "solve.json"));
  CHECK(s["grid"]["nodes"] == 33 * 33);
  CHECK(s["tolerances"]["solver"] == 1e-10);
  CHECK(std::filesystem::exists(a / "solution.csv"));
  CHECK(std::filesystem::exists(a / "decay_green.csv"));
  CHECK(slurp(a / "decay_green.csv").rfind("radius,annulus_max\n", 0) == 0);
}

TEST_CASE("GREEN_OUT_DIR overrides the output directory") {
  const auto env = scratch("env");
  const auto flag = scratch("flag");
  const std::string cmd = "GREEN_OUT_DIR=" + env.string() + " " + cli() + " params --out " + flag.string() + " > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(std::filesystem::exists(env / "params.json"));
  CHECK(!std::filesystem::exists(flag / "params.json"));
}

TEST_CASE("remaining subcommands run") {
  const auto out = scratch("misc");
  CHECK(run("--intervals 16 gradkernel --axis 1", out) == 0);
  CHECK(run("--intervals 16 --rho-h 0.5 represent --samples 2", out) == 0);
  const json r = json::parse(slurp(out / "represent.json"));
  CHECK(r["worst_relative_error"].get<double>() < 1e-8);
  CHECK(run("--intervals 16 riesz --order 1 --p 1.3333333333", out) == 0);
  CHECK(run("--intervals 16 sobolev-check --members 60", out) == 0);
  CHECK(run("--intervals 16 moser-bound", out) == 0);
  const json mb = json::parse(slurp(out / "moser_bound.json"));
  CHECK(mb["holds"] == true);
  CHECK(run("--intervals 16 weights --gamma 0.25 --p 1", out) == 0);
  CHECK(run("verify-aux --pairs 5 --samples 200 --s-values 3 --points 1000", out) == 0);
  const json v = json::parse(slurp(out / "verify_aux.json"));
  CHECK(v["all_pass"] == true);
}
