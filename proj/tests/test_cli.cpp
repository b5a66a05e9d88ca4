#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "jetvar/cli.hpp"

using jetvar::run_command;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& path) {
  Csv out;
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) out.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream rs(line);
    std::vector<double> row;
    while (std::getline(rs, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    REQUIRE(row.size() == out.header.size());
    out.rows.push_back(std::move(row));
  }
  return out;
}

int run(std::vector<std::string> args) { return run_command(args); }

const char* kForceConfig = R"({
  "problem": {"dim": 1, "k": 1},
  "lagrangian": {"preset": "harmonic"},
  "curve": {"preset": "sine"},
  "interval": {"t0": 0.0, "t1": 1.0},
  "output": {"csv": "cli_tmp_force.csv", "samples": 11}
})";

}  // namespace

TEST_CASE("force subcommand writes the expected table") {
  write_file("cli_tmp_force.json", kForceConfig);
  CHECK(run({"force", "--config", "cli_tmp_force.json"}) == 0);
  Csv csv = parse_csv("cli_tmp_force.csv");
  REQUIRE((csv.header == std::vector<std::string>{"t", "x0_0", "f0"}));
  REQUIRE(csv.rows.size() == 11);
  CHECK(csv.rows.front()[0] == 0.0);
  CHECK(csv.rows.back()[0] == 1.0);
  for (const auto& row : csv.rows) {
    CHECK(row[1] == doctest::Approx(std::sin(row[0])).epsilon(1e-14));
    CHECK(row[2] == doctest::Approx(0.0).epsilon(1e-12));  // sine solves the EL equation
  }
}

TEST_CASE("identical configs give byte-identical output") {
  write_file("cli_tmp_force.json", kForceConfig);
  CHECK(run({"force", "--config", "cli_tmp_force.json"}) == 0);
  std::string first = read_file("cli_tmp_force.csv");
  CHECK(run({"force", "--config", "cli_tmp_force.json"}) == 0);
  CHECK(read_file("cli_tmp_force.csv") == first);
  CHECK(first.find("\r") == std::string::npos);
}

TEST_CASE("force on a two-coordinate expression curve") {
  write_file("cli_tmp_force2.json", R"cfg({
    "problem": {"dim": 2, "k": 1},
    "lagrangian": {"preset": "free_particle"},
    "curve": {"expressions": ["t^2", "sin(t)"]},
    "interval": {"t0": 0.1, "t1": 0.9},
    "output": {"csv": "cli_tmp_force2.csv", "samples": 5}
  })cfg");
  CHECK(run({"force", "--config", "cli_tmp_force2.json"}) == 0);
  Csv csv = parse_csv("cli_tmp_force2.csv");
  REQUIRE((csv.header == std::vector<std::string>{"t", "x0_0", "x1_0", "f0", "f1"}));
  for (const auto& row : csv.rows) {
    CHECK(row[3] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(row[4] == doctest::Approx(std::sin(row[0])).epsilon(1e-12));
  }
}

TEST_CASE("momentum subcommand reports iterated-by-parts levels") {
  write_file("cli_tmp_mom.json", R"({
    "problem": {"dim": 1, "k": 2},
    "lagrangian": {"expression": "0.5*x0''^2"},
    "curve": {"preset": "cubic_poly"},
    "interval": {"t0": 0.5, "t1": 1.0},
    "output": {"csv": "cli_tmp_mom.csv", "samples": 2}
  })");
  CHECK(run({"momentum", "--config", "cli_tmp_mom.json"}) == 0);
  Csv csv = parse_csv("cli_tmp_mom.csv");
  REQUIRE(csv.header ==
          std::vector<std::string>{"t", "x0_0", "x0_1", "p0_0", "p0_1"});
  REQUIRE(csv.rows.size() == 2);
  const auto& last = csv.rows.back();  // t = 1 on the cubic t^3
  CHECK(last[1] == doctest::Approx(1.0));
  CHECK(last[2] == doctest::Approx(3.0));
  CHECK(last[3] == doctest::Approx(-6.0).epsilon(1e-10));  // p_(0) = -d/dt dL/dxddot
  CHECK(last[4] == doctest::Approx(6.0).epsilon(1e-10));   // p_(1) = dL/dxddot
}

TEST_CASE("vary subcommand validates the decomposition") {
  write_file("cli_tmp_vary.json", R"({
    "problem": {"dim": 1, "k": 1},
    "lagrangian": {"preset": "harmonic"},
    "curve": {"preset": "sine"},
    "variation": {"expressions": ["t^2"]},
    "interval": {"t0": 0.0, "t1": 0.8}
  })");
  CHECK(run({"vary", "--config", "cli_tmp_vary.json"}) == 0);

  // Panel override: malformed values are configuration errors.
  setenv("JETVAR_PANELS", "abc", 1);
  CHECK(run({"vary", "--config", "cli_tmp_vary.json"}) == 2);
  setenv("JETVAR_PANELS", "32", 1);
  CHECK(run({"vary", "--config", "cli_tmp_vary.json"}) == 0);
  unsetenv("JETVAR_PANELS");
}

TEST_CASE("integrate subcommand writes trajectory levels and residual") {
  write_file("cli_tmp_int.json", R"({
    "problem": {"dim": 1, "k": 1},
    "lagrangian": {"preset": "harmonic"},
    "initial_state": {"derivatives": [[1.0, 0.0]]},
    "interval": {"t0": 0.0, "t1": 6.283185307179586},
    "solver": {"step": 0.05},
    "output": {"csv": "cli_tmp_int.csv", "samples": 9}
  })");
  CHECK(run({"integrate", "--config", "cli_tmp_int.json"}) == 0);
  Csv csv = parse_csv("cli_tmp_int.csv");
  REQUIRE((csv.header == std::vector<std::string>{"t", "x0_0", "x0_1", "el_residual"}));
  REQUIRE(csv.rows.size() == 9);
  const auto& last = csv.rows.back();
  CHECK(last[1] == doctest::Approx(1.0).epsilon(2e-5));
  CHECK(last[2] == doctest::Approx(0.0).epsilon(2e-5));
  for (const auto& row : csv.rows) CHECK(std::fabs(row[3]) <= 1e-7);
}

TEST_CASE("bvp subcommand with both endpoints") {
  write_file("cli_tmp_bvp.json", R"({
    "problem": {"dim": 1, "k": 2},
    "lagrangian": {"preset": "accel_squared"},
    "boundary": {"initial": [[0.0, 1.0]], "final": [[1.0, -1.0]]},
    "interval": {"t0": 0.0, "t1": 1.0},
    "solver": {"step": 0.01},
    "output": {"csv": "cli_tmp_bvp.csv", "samples": 11}
  })");
  CHECK(run({"bvp", "--config", "cli_tmp_bvp.json"}) == 0);
  Csv csv = parse_csv("cli_tmp_bvp.csv");
  REQUIRE((csv.header == std::vector<std::string>{"t", "x0_0", "x0_1", "x0_2", "x0_3",
                                                  "el_residual"}));
  for (const auto& row : csv.rows) {
    const double t = row[0];
    CHECK(row[1] == doctest::Approx(t + 2 * t * t - 2 * t * t * t).epsilon(1e-7));
    CHECK(std::fabs(row[5]) <= 1e-6);
  }
}

TEST_CASE("bvp subcommand with a natural end condition") {
  write_file("cli_tmp_nat.json", R"({
    "problem": {"dim": 1, "k": 1},
    "lagrangian": {"preset": "harmonic"},
    "boundary": {"initial": [[1.0]]},
    "interval": {"t0": 0.0, "t1": 1.0},
    "solver": {"step": 0.005},
    "output": {"csv": "cli_tmp_nat.csv", "samples": 11}
  })");
  CHECK(run({"bvp", "--config", "cli_tmp_nat.json"}) == 0);
  Csv csv = parse_csv("cli_tmp_nat.csv");
  const auto& last = csv.rows.back();
  CHECK(last[0] == doctest::Approx(1.0));
  CHECK(std::fabs(last[2]) <= 1e-6);  // xdot vanishes at the free end
}

TEST_CASE("cubic subcommand on the flat metric") {
  write_file("cli_tmp_cubic.json", R"({
    "problem": {"dim": 2, "k": 2},
    "metric": {"preset": "euclidean"},
    "boundary": {"initial": [[0.0, 1.0], [0.0, 0.0]], "final": [[1.0, -1.0], [0.5, 0.0]]},
    "interval": {"t0": 0.0, "t1": 1.0},
    "solver": {"step": 0.02},
    "output": {"csv": "cli_tmp_cubic.csv", "samples": 6}
  })");
  CHECK(run({"cubic", "--config", "cli_tmp_cubic.json"}) == 0);
  Csv csv = parse_csv("cli_tmp_cubic.csv");
  REQUIRE(csv.header.size() == 10);
  CHECK(csv.header.front() == "t");
  CHECK(csv.header.back() == "cubic_residual");
  for (const auto& row : csv.rows) {
    const double t = row[0];
    CHECK(row[1] == doctest::Approx(t + 2 * t * t - 2 * t * t * t).epsilon(1e-6));
    // Second coordinate: clamped cubic from (0, 0) to (0.5, 0).
    CHECK(row[5] == doctest::Approx(1.5 * t * t - t * t * t).epsilon(1e-6));
    CHECK(std::fabs(row[9]) <= 1e-6);
  }
}

TEST_CASE("verify subcommand runs all groups") {
  CHECK(run({"verify", "--seed", "3", "--max-k", "1"}) == 0);
}

TEST_CASE("configuration errors exit with status 2") {
  CHECK(run({"force", "--config", "cli_tmp_missing.json"}) == 2);

  write_file("cli_tmp_bad.json", "{ not json");
  CHECK(run({"force", "--config", "cli_tmp_bad.json"}) == 2);

  write_file("cli_tmp_k.json", R"({
    "problem": {"dim": 1, "k": 2},
    "lagrangian": {"preset": "harmonic"},
    "curve": {"preset": "sine"},
    "interval": {"t0": 0.0, "t1": 1.0},
    "output": {"csv": "cli_tmp_k.csv"}
  })");
  CHECK(run({"force", "--config", "cli_tmp_k.json"}) == 2);  // preset order mismatch

  write_file("cli_tmp_key.json", R"({
    "problem": {"dim": 1, "k": 1, "extra": 3},
    "lagrangian": {"preset": "harmonic"},
    "curve": {"preset": "sine"},
    "interval": {"t0": 0.0, "t1": 1.0},
    "output": {"csv": "cli_tmp_key.csv"}
  })");
  CHECK(run({"force", "--config", "cli_tmp_key.json"}) == 2);  // unknown key

  write_file("cli_tmp_syn.json", R"({
    "problem": {"dim": 1, "k": 1},
    "lagrangian": {"expression": "0.5*x0'^2 - 0.5*x0^"},
    "curve": {"preset": "sine"},
    "interval": {"t0": 0.0, "t1": 1.0},
    "output": {"csv": "cli_tmp_syn.csv"}
  })");
  CHECK(run({"force", "--config", "cli_tmp_syn.json"}) == 2);  // syntax error

  write_file("cli_tmp_iv.json", R"({
    "problem": {"dim": 1, "k": 1},
    "lagrangian": {"preset": "harmonic"},
    "curve": {"preset": "sine"},
    "interval": {"t0": 1.0, "t1": 1.0},
    "output": {"csv": "cli_tmp_iv.csv"}
  })");
  CHECK(run({"force", "--config", "cli_tmp_iv.json"}) == 2);  // empty interval

  write_file("cli_tmp_deg.json", R"({
    "problem": {"dim": 1, "k": 1},
    "lagrangian": {"expression": "x0"},
    "initial_state": {"derivatives": [[1.0, 0.0]]},
    "interval": {"t0": 0.0, "t1": 1.0},
    "output": {"csv": "cli_tmp_deg.csv"}
  })");
  CHECK(run({"integrate", "--config", "cli_tmp_deg.json"}) == 2);  // degenerate Lagrangian

  write_file("cli_tmp_met.json", R"({
    "problem": {"dim": 1, "k": 2},
    "metric": {"preset": "sphere2"},
    "boundary": {"initial": [[0.0, 1.0]], "final": [[1.0, -1.0]]},
    "interval": {"t0": 0.0, "t1": 1.0},
    "output": {"csv": "cli_tmp_met.csv"}
  })");
  CHECK(run({"cubic", "--config", "cli_tmp_met.json"}) == 2);  // sphere needs dim 2

  write_file("cli_tmp_cnt.json", R"({
    "problem": {"dim": 2, "k": 1},
    "lagrangian": {"preset": "harmonic"},
    "curve": {"expressions": ["t"]},
    "interval": {"t0": 0.0, "t1": 1.0},
    "output": {"csv": "cli_tmp_cnt.csv"}
  })");
  CHECK(run({"force", "--config", "cli_tmp_cnt.json"}) == 2);  // wrong expression count

  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({}) == 2);
  CHECK(run({"force"}) == 2);  // --config is required
}
