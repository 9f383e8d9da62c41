#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support.hpp"

#ifndef CLI_BINARY_PATH
#error "CLI_BINARY_PATH must point at the built command-line binary"
#endif

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cachealloc_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

CliRun run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("stdout" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("stderr" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string("\"") + CLI_BINARY_PATH + "\" " + args +
                          " > \"" + out.string() + "\" 2> \"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.out = slurp(out);
  r.err = slurp(err);
#if defined(_WIN32)
  r.code = status;
#else
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  fs::remove(out);
  fs::remove(err);
  return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("usp subcommand emits the expected table") {
  const fs::path cfg = write_file("basic.json", "{}");
  const CliRun r = run_cli("usp --config " + q(cfg));
  CHECK(r.code == 0);
  const auto rows = testsupport::parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "cell");
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "15");
  CHECK_FALSE(r.err.empty());  // human summary goes to stderr
}

TEST_CASE("output flag writes the same bytes to a file") {
  const fs::path cfg = write_file("basic2.json", "{}");
  const fs::path out = scratch_dir() / "usp.csv";
  const CliRun direct = run_cli("usp --config " + q(cfg));
  const CliRun filed =
      run_cli("usp --config " + q(cfg) + " --output " + q(out));
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(out) == direct.out);
  fs::remove(out);
}

TEST_CASE("missing and malformed configs exit with code 2") {
  const CliRun missing = run_cli("usp --config /nonexistent/nope.json");
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  const fs::path bad = write_file("bad.json", "{\"schema\": 1,,}");
  const CliRun malformed = run_cli("usp --config " + q(bad));
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("parse error") != std::string::npos);

  const fs::path unknown =
      write_file("unknown.json", R"({"radoi": {"radius_m": 10}})");
  const CliRun u = run_cli("usp --config " + q(unknown));
  CHECK(u.code == 2);
  CHECK(u.err.find("radoi") != std::string::npos);

  const fs::path invalid =
      write_file("invalid.json", R"({"cells": [{"users": -2}]})");
  const CliRun v = run_cli("usp --config " + q(invalid));
  CHECK(v.code == 2);
  CHECK(v.err.find("users") != std::string::npos);
}

TEST_CASE("flag overrides are validated like config fields") {
  const fs::path cfg = write_file("basic3.json", "{}");
  const CliRun r =
      run_cli("validate --config " + q(cfg) + " --trials 0");
  CHECK(r.code == 2);
  CHECK(r.err.find("trials") != std::string::npos);

  const CliRun e =
      run_cli("allocate --config " + q(cfg) + " --epsilon 2.0");
  CHECK(e.code == 2);
  CHECK(e.err.find("epsilon") != std::string::npos);
}

TEST_CASE("unreachable targets exit with code 3") {
  const fs::path cfg = write_file("unreach.json", R"({"theta": [0.9999]})");
  const CliRun r = run_cli("tradeoff --config " + q(cfg));
  CHECK(r.code == 3);
  CHECK(r.out.find("infeasible") != std::string::npos);
}

TEST_CASE("missing required arguments fail the parse") {
  const CliRun none = run_cli("usp");
  CHECK(none.code != 0);
  const CliRun nosub = run_cli("");
  CHECK(nosub.code != 0);
  const fs::path cfg = write_file("basic4.json", "{}");
  const CliRun badaxis =
      run_cli("sweep --config " + q(cfg) + " --axis rank");
  CHECK(badaxis.code != 0);
}

TEST_CASE("sweep axes produce their tables") {
  const fs::path cfg = write_file(
      "sweep.json",
      R"({"cells": [{"users": 15, "backhaul_mbps": 0}],
          "sweep": {"files": [200, 400], "gammas": [0.8],
                    "gamma_grid": [0.4, 0.8, 1.2]}})");
  const CliRun files = run_cli("sweep --config " + q(cfg) + " --axis files");
  CHECK(files.code == 0);
  auto rows = testsupport::parse_csv(files.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "files");

  const CliRun gamma = run_cli("sweep --config " + q(cfg) + " --axis gamma");
  CHECK(gamma.code == 0);
  rows = testsupport::parse_csv(gamma.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][0] == "zipf_exp");

  // files is the default axis
  const CliRun dflt = run_cli("sweep --config " + q(cfg));
  CHECK(dflt.out == files.out);
}

TEST_CASE("validation runs are reproducible end to end") {
  const fs::path cfg = write_file(
      "valid.json",
      R"({"trials": 16384, "seed": 5,
          "cells": [{"users": 8, "backhaul_mbps": 6, "cache_files": 100}]})");
  const CliRun a = run_cli("validate --config " + q(cfg));
  CHECK(a.code == 0);
  const CliRun b = run_cli("validate --config " + q(cfg));
  CHECK(b.out == a.out);
  const CliRun w1 =
      run_cli("validate --config " + q(cfg) + " --workers 1");
  const CliRun w4 =
      run_cli("validate --config " + q(cfg) + " --workers 4");
  CHECK(w1.out == a.out);
  CHECK(w4.out == a.out);

  // a different seed gives a different sample
  const CliRun other =
      run_cli("validate --config " + q(cfg) + " --seed 6");
  CHECK(other.code == 0);
  CHECK(other.out != a.out);
}

TEST_CASE("allocate subcommand round trip") {
  const fs::path cfg = write_file(
      "alloc.json",
      R"({"popularity": {"library_size": 120, "zipf_exp": 0.9},
          "cells": [{"users": 8, "backhaul_mbps": 0},
                    {"users": 8, "backhaul_mbps": 8}],
          "budgets": [0, 40, 120]})");
  const CliRun r = run_cli("allocate --config " + q(cfg));
  CHECK(r.code == 0);
  const auto rows = testsupport::parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 6 + 1 + 1 + 6);
  CHECK(rows[0][0] == "budget");
  // deterministic: same command, same bytes
  CHECK(run_cli("allocate --config " + q(cfg)).out == r.out);
}
