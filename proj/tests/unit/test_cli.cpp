#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "config.hpp"

using namespace logasm;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "logasm");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Last CSV line, without the trailing newline.
std::string last_row(const std::string& text) {
  std::string t = text;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const std::string path = std::string(LOGASM_FIXTURE_DIR) + "/../../build_tmp_" + name;
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("count and tv") {
    const auto count = invoke({"count", "--spec", "permutations", "--n", "5"});
    CHECK(count.code == cli::kExitOk);
    CHECK(last_row(count.out) == "5,120");
    CHECK(count.out.rfind("# logasm ", 0) == 0);

    const auto tv = invoke({"tv", "--spec", "ewens:1", "--n", "3", "--r", "1"});
    CHECK(tv.code == cli::kExitOk);
    const std::string row = last_row(tv.out);
    const double value = std::stod(row.substr(4, row.find(',', 4) - 4));
    CHECK(value == doctest::Approx(0.5 - std::exp(-1.0) + 1.0 / 6.0 - std::exp(-1.0) / 6.0).epsilon(1e-10));
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"count", "--spec", "nonsense", "--n", "5"}).code == cli::kExitUsage);
    CHECK(invoke({"count", "--bogus", "1"}).code == cli::kExitUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
    CHECK(invoke({"tv", "--n", "3"}).code == cli::kExitUsage);  // r missing
    CHECK(invoke({"tv", "--n", "3", "--r", "9"}).code == cli::kExitUsage);
    CHECK(invoke({"count", "--n", "-4"}).code == cli::kExitUsage);
  }

  TEST_CASE("failed verification exits with 3") {
    const auto ok = invoke({"check-log", "--spec", "permutations", "--n", "20", "--theta-lo", "1",
                            "--theta-hi", "1"});
    CHECK(ok.code == cli::kExitOk);
    const auto bad = invoke({"check-log", "--spec", "set-partitions", "--n", "20", "--theta-lo",
                             "1/2", "--theta-hi", "2"});
    CHECK(bad.code == cli::kExitVerification);
    CHECK(last_row(bad.out).find("false") != std::string::npos);
  }

  TEST_CASE("config files") {
    const auto good = temp_file("good.cfg", "# comment\nspec: ewens\ntheta: 2\n\nn: 4\n");
    const auto rates = invoke({"rates", "--config", good});
    CHECK(rates.code == cli::kExitOk);
    CHECK(last_row(rates.out).rfind("4,1/2,", 0) == 0);
    // A flag overrides the file.
    const auto override = invoke({"rates", "--config", good, "--n", "2"});
    CHECK(last_row(override.out).rfind("2,1,", 0) == 0);

    const auto dup = temp_file("dup.cfg", "n: 4\nn: 5\n");
    const auto r1 = invoke({"count", "--config", dup});
    CHECK(r1.code == cli::kExitUsage);
    CHECK(r1.err.find("line 2") != std::string::npos);

    const auto unknown = temp_file("unknown.cfg", "colour: blue\n");
    CHECK(invoke({"count", "--config", unknown}).code == cli::kExitUsage);
    CHECK(invoke({"count", "--config", "/nonexistent/file.cfg"}).code == cli::kExitUsage);
    for (const auto& p : {good, dup, unknown}) std::remove(p.c_str());
  }

  TEST_CASE("resolved defaults") {
    cli::Settings s;
    s.set("n", "7");
    const auto cfg = cli::resolve(s);
    CHECK(cfg.spec_text == cfg.spec.canonical());
    CHECK(cfg.u == 1);
    CHECK(cfg.seed == 0);
    CHECK(cfg.backend == BackendChoice::exact);
    CHECK(*cfg.n == 7);
    std::istringstream bad("spec permutations\n");
    CHECK_THROWS_AS(cli::parse_settings(bad), cli::ConfigError);
    std::istringstream empty("n:\n");
    CHECK_THROWS_AS(cli::parse_settings(empty), cli::ConfigError);
  }

  TEST_CASE("other subcommands run") {
    CHECK(invoke({"law", "--spec", "permutations", "--n", "3"}).code == cli::kExitOk);
    CHECK(invoke({"sample", "--n", "10", "--seed", "3", "--replicas", "4"}).code == cli::kExitOk);
    CHECK(invoke({"sample", "--n", "10", "--method", "component", "--replicas", "2"}).code == cli::kExitOk);
    CHECK(invoke({"sample", "--n", "10", "--method", "bogus"}).code == cli::kExitUsage);
    CHECK(invoke({"strassen", "--path", "0.5:1,1:1"}).code == cli::kExitOk);
    CHECK(invoke({"prop1", "--n", "50", "--r", "2", "--m", "50", "--delta", "0.25"}).code == cli::kExitOk);
    CHECK(invoke({"prop1", "--n", "50", "--r", "2", "--m", "60", "--delta", "0.25"}).code == cli::kExitUsage);
    CHECK(invoke({"feller", "--J", "50", "--s", "2", "--x", "0.5"}).code == cli::kExitOk);
    CHECK(invoke({"ruzsa", "--replicas", "5", "--seed", "1"}).code == cli::kExitOk);
    CHECK(invoke({"tv-scan", "--spec", "ewens:1/2", "--n", "64"}).code == cli::kExitOk);
    CHECK(invoke({"lil", "--n", "2000", "--replicas", "3"}).code == cli::kExitOk);
    CHECK(invoke({"exceed", "--n", "2000", "--replicas", "3"}).code == cli::kExitOk);
    CHECK(invoke({"--version"}).code == cli::kExitOk);
  }
}
