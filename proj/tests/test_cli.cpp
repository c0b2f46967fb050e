#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "doctest.h"
#include "gvar/commands.hpp"
#include "gvar/serialization.hpp"

using namespace gvar;
namespace fs = std::filesystem;

namespace {

// A scratch directory removed on scope exit.
struct Scratch {
  fs::path root;
  Scratch() {
    static int counter = 0;
    root = fs::temp_directory_path() /
           ("gvar-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(root);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
  CommandOptions with(const json& cfg) const {
    const fs::path p = root / "config.json";
    std::ofstream(p) << cfg.dump();
    CommandOptions o;
    o.config_path = p.string();
    o.out_dir = (root / "out").string();
    return o;
  }
  [[nodiscard]] json read(const std::string& name) const { return read_json_file((root / "out" / name).string()); }
  [[nodiscard]] bool has(const std::string& name) const { return fs::exists(root / "out" / name); }
};

json tri_json() { return json{{"bp", json::array({json::array({0, 0}), json::array({1, 1})})}, {"vals", {0.0, 1.0}}}; }

}  // namespace

TEST_CASE("sequence parameters round-trip") {
  const json lj = json{{"kind", "n_gamma"}, {"beta", 0.5}, {"scale", 2.0}};
  const LambdaParams lp = lambda_params_from_json(lj);
  CHECK(lp.kind == LambdaKind::n_gamma);
  CHECK(lambda_params_from_json(to_json(lp)).beta == 0.5);
  const ExponentParams pp = exponent_params_from_json(json{{"kind", "linear"}, {"a", 1.0}, {"b", 2.0}});
  CHECK(pp.kind == ExponentKind::linear);
  CHECK(exponent_params_from_json(to_json(pp)).b == 2.0);
  CHECK_THROWS_AS(lambda_params_from_json(json{{"kind", "harmonic"}, {"colour", 1}}), ConfigError);
  CHECK_THROWS_AS(lambda_params_from_json(json{{"kind", "fibonacci"}}), ConfigError);
  CHECK_THROWS_AS(exponent_params_from_json(json{{"kind", "table"}, {"values", json::array()}, {"hold", "x"}}),
                  ConfigError);
}

TEST_CASE("functions round-trip") {
  const Function1D comb = function_from_json(json{{"s", 5}, {"j_lo", "1"}, {"j_hi", 9}, {"h", 0.25}});
  REQUIRE(comb.is_comb());
  CHECK(comb.comb()->teeth() == 8);
  CHECK(function_from_json(to_json(comb)).comb()->h() == 0.25);
  const Function1D pl = function_from_json(tri_json());
  CHECK(function_from_json(to_json(pl)).eval(0.25) == doctest::Approx(0.5));
  const TensorSum2D f = tensor_from_json(json{{"terms", json::array({json{{"u", tri_json()}, {"v", tri_json()}}})}});
  CHECK(tensor_from_json(to_json(f)).eval(0.5, 0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(function_from_json(json{{"s", 3}, {"j_lo", 0}, {"j_hi", 9}, {"h", 1.0}}), ConfigError);
  CHECK_THROWS_AS(function_from_json(json{{"bp", json::array({json::array({1, 0})})}, {"vals", {1.0}}}),
                  ConfigError);
}

TEST_CASE("log level from the environment") {
  ::setenv("GVAR_LOG", "debug", 1);
  CHECK(log_level_from_env() == LogLevel::debug);
  ::setenv("GVAR_LOG", "nonsense", 1);
  CHECK(log_level_from_env() == LogLevel::error);
  ::unsetenv("GVAR_LOG");
  CHECK(log_level_from_env() == LogLevel::error);
}

TEST_CASE("conditions") {
  std::ostringstream log;
  {
    const Scratch s;
    CHECK(cmd_conditions(s.with(json::object()), log) == kExitOk);
    for (const char* f : {"condition_2.csv", "lambda_admissible.csv", "cond1.csv", "t1_sums.csv", "t1_ratios.csv"}) {
      CHECK(s.has(f));
    }
    const json sum = s.read("summary.json");
    CHECK(sum["corollary"]["reciprocal_sum_verdict"] == "divergent-trend");
    CHECK(sum["corollary"]["regime"].get<std::string>().find("!=") != std::string::npos);
  }
  {
    const Scratch s;
    CHECK(cmd_conditions(s.with(json{{"lambda", {{"kind", "power"}, {"exponent", 2.0}}}}), log) == kExitOk);
    CHECK(s.read("summary.json")["corollary"]["reciprocal_sum_verdict"] == "bounded-trend");
  }
  {
    const Scratch s;
    const json bad = {{"lambda", {{"kind", "table"}, {"values", {1.0, 3.0, 2.0}}, {"extend", "repeat_last_growth"}}}};
    CHECK(cmd_conditions(s.with(bad), log) == kExitAssertion);
    CHECK(s.read("summary.json")["pass"] == false);
  }
  {
    const Scratch s;
    CHECK(cmd_conditions(s.with(json{{"n_maxx", 3}}), log) == kExitConfig);
  }
}

TEST_CASE("construct") {
  std::ostringstream log;
  {
    const Scratch s;
    CHECK(cmd_construct(s.with(json::object()), log) == kExitAssertion);
    CHECK(log.str().find("refused") != std::string::npos);
  }
  {
    const Scratch s;
    const json cfg = {{"p", {{"kind", "n_over_log"}, {"c", 2.0}}}, {"K", 2}};
    CHECK(cmd_construct(s.with(cfg), log) == kExitOk);
    CHECK(s.read("selection.json")["mode"] == "case-b");
    CHECK(s.has("function.json"));
    CHECK(s.has("upper_lambda_sharp.csv"));
    CHECK(s.read("summary.json")["pass"] == true);
  }
  {
    const Scratch s;
    CHECK(cmd_construct(s.with(json{{"construction", "r"}, {"K", 6}}), log) == kExitOk);
    CHECK(s.has("r_wiener_l12.csv"));
    CHECK(s.has("witness_lower_r_k6.csv"));
  }
  {
    const Scratch s;
    CHECK(cmd_construct(s.with(json{{"construction", "g"}}), log) == kExitConfig);
  }
}

TEST_CASE("variation") {
  std::ostringstream log;
  {
    const Scratch s;
    CHECK(cmd_variation(s.with(json{{"functional", "lambda_1d"}, {"function", tri_json()}}), log) == kExitOk);
    const json e = s.read("estimate.json");
    CHECK(e["value"].get<double>() == doctest::Approx(1.5));
    CHECK(e["seed"] == 42);
    CHECK(e.contains("witness"));
    CHECK(e.contains("budget"));
  }
  {
    const Scratch s;
    const json f = {{"terms", json::array({json{{"u", tri_json()}, {"v", tri_json()}}})}};
    const json cfg = {{"functional", "lambda_v12"}, {"function", f}, {"budget", {{"grid_depth", 2}}}};
    CHECK(cmd_variation(s.with(cfg), log) == kExitOk);
    CHECK(s.read("estimate.json")["value"].get<double>() == doctest::Approx(2.25));
  }
  {
    const Scratch s;
    CHECK(cmd_variation(s.with(json{{"functional", "lambda_9"}, {"function", tri_json()}}), log) == kExitConfig);
    CHECK(cmd_variation(s.with(json{{"functional", "lambda_1d"}}), log) == kExitConfig);
  }
}

TEST_CASE("oracle-check and a small verify") {
  std::ostringstream log;
  {
    const Scratch s;
    CHECK(cmd_oracle_check(s.with(json{{"trials", 3}}), log) == kExitOk);
    CHECK(s.has("oracle_check.csv"));
  }
  {
    const Scratch s;
    const json cfg = {{"oracle",
                       {{"assignment_lists", 10}, {"lambda_functions", 2}, {"wiener_functions", 2},
                        {"tensor_instances", 1}}},
                      {"trials", 10}};
    // The default Theorem 1 parameters admit no selection, so verify fails.
    CHECK(cmd_verify(s.with(cfg), log) == kExitAssertion);
    CHECK(s.has("verify.csv"));
    const json sum = s.read("summary.json");
    CHECK(sum["pass"] == false);
    CHECK(sum["criteria"].size() == 7);
  }
}
