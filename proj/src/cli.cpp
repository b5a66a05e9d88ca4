#include "jetvar/cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "jetvar/expr.hpp"
#include "jetvar/geometry.hpp"
#include "jetvar/solver.hpp"
#include "jetvar/variational.hpp"
#include "jetvar/verify.hpp"

namespace jetvar {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- config IO

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path + ": " + e.what());  // nlohmann reports the byte position
  }
}

const json& section(const json& cfg, const char* name) {
  auto it = cfg.find(name);
  if (it == cfg.end()) bad(std::string("missing config section '") + name + "'");
  if (!it->is_object()) bad(std::string("config section '") + name + "' must be an object");
  return *it;
}

const json* optional_section(const json& cfg, const char* name) {
  auto it = cfg.find(name);
  if (it == cfg.end()) return nullptr;
  if (!it->is_object()) bad(std::string("config section '") + name + "' must be an object");
  return &*it;
}

void check_keys(const json& sec, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = sec.begin(); it != sec.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) bad(where + ": unknown key '" + it.key() + "'");
  }
}

int int_field(const json& sec, const std::string& where, const char* key, int lo, int hi) {
  auto it = sec.find(key);
  if (it == sec.end()) bad(where + "." + key + " is required");
  if (!it->is_number_integer()) bad(where + "." + key + " must be an integer");
  const int v = it->get<int>();
  if (v < lo || v > hi)
    bad(where + "." + key + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

double num_field(const json& sec, const std::string& where, const char* key) {
  auto it = sec.find(key);
  if (it == sec.end()) bad(where + "." + key + " is required");
  if (!it->is_number()) bad(where + "." + key + " must be a number");
  return it->get<double>();
}

std::string str_field(const json& sec, const std::string& where, const char* key) {
  auto it = sec.find(key);
  if (it == sec.end()) bad(where + "." + key + " is required");
  if (!it->is_string()) bad(where + "." + key + " must be a string");
  return it->get<std::string>();
}

struct ProblemSpec {
  int dim = 1;
  int k = 1;
};

ProblemSpec read_problem(const json& cfg) {
  const json& sec = section(cfg, "problem");
  check_keys(sec, "problem", {"dim", "k"});
  ProblemSpec p;
  p.dim = int_field(sec, "problem", "dim", 1, 8);
  p.k = int_field(sec, "problem", "k", 1, 4);
  return p;
}

// ------------------------------------------------------- expression plumbing

Lagrangian expression_lagrangian(const std::string& src, int dim, int k) {
  ExprContext ctx;
  ctx.dim = dim;
  ctx.max_order = k;
  ctx.allow_t = false;
  ctx.allow_coords = true;
  Expression ex = parse_expression(src, ctx);
  Lagrangian L;
  L.dim = dim;
  L.k = k;
  L.eval = [ex, dim, k](const std::vector<JetScalar>& args) {
    std::map<std::string, JetScalar> binds;
    for (int a = 0; a < dim; ++a)
      for (int al = 0; al <= k; ++al)
        binds[coord_name(a, al)] = args[static_cast<std::size_t>(a * (k + 1) + al)];
    return evaluate(ex, binds);
  };
  return L;
}

Lagrangian read_lagrangian(const json& cfg, const ProblemSpec& p) {
  const json& sec = section(cfg, "lagrangian");
  check_keys(sec, "lagrangian", {"preset", "expression"});
  const bool has_preset = sec.contains("preset");
  const bool has_expr = sec.contains("expression");
  if (has_preset == has_expr)
    bad("lagrangian: exactly one of 'preset' and 'expression' is required");
  if (has_preset) {
    const std::string name = str_field(sec, "lagrangian", "preset");
    Lagrangian L;
    if (name == "free_particle")
      L = lagrangian_free_particle(p.dim);
    else if (name == "harmonic")
      L = lagrangian_harmonic(p.dim);
    else if (name == "accel_squared")
      L = lagrangian_accel_squared(p.dim);
    else
      bad("lagrangian.preset: unknown preset '" + name + "'");
    if (L.k != p.k)
      bad("lagrangian.preset '" + name + "' has order k=" + std::to_string(L.k) +
          " but problem.k is " + std::to_string(p.k));
    return L;
  }
  return expression_lagrangian(str_field(sec, "lagrangian", "expression"), p.dim, p.k);
}

/// Curve and variation sections: a preset name or one t-expression per
/// coordinate.  Presets apply the same expression to every coordinate.
CurveEvaluator read_curve(const json& cfg, const char* name, int dim) {
  const json& sec = section(cfg, name);
  check_keys(sec, name, {"preset", "expressions"});
  const bool has_preset = sec.contains("preset");
  const bool has_expr = sec.contains("expressions");
  if (has_preset == has_expr)
    bad(std::string(name) + ": exactly one of 'preset' and 'expressions' is required");
  std::vector<std::string> sources;
  if (has_preset) {
    const std::string preset = str_field(sec, name, "preset");
    std::string src;
    if (preset == "line")
      src = "t";
    else if (preset == "sine")
      src = "sin(t)";
    else if (preset == "cubic_poly")
      src = "t^3";
    else
      bad(std::string(name) + ".preset: unknown preset '" + preset + "'");
    sources.assign(static_cast<std::size_t>(dim), src);
  } else {
    const json& arr = sec.at("expressions");
    if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
      bad(std::string(name) + ".expressions must be an array of " + std::to_string(dim) +
          " strings");
    for (const json& e : arr) {
      if (!e.is_string()) bad(std::string(name) + ".expressions entries must be strings");
      sources.push_back(e.get<std::string>());
    }
  }
  ExprContext ctx;
  ctx.dim = 0;
  ctx.max_order = 0;
  ctx.allow_t = true;
  ctx.allow_coords = false;
  std::vector<Expression> parsed;
  for (const std::string& src : sources) parsed.push_back(parse_expression(src, ctx));
  CurveEvaluator curve;
  curve.dim = dim;
  curve.eval = [parsed](const JetScalar& t) {
    std::map<std::string, JetScalar> binds{{"t", t}};
    std::vector<JetScalar> out;
    out.reserve(parsed.size());
    for (const Expression& e : parsed) out.push_back(evaluate(e, binds));
    return out;
  };
  return curve;
}

MetricField read_metric(const json& cfg, int dim) {
  const json& sec = section(cfg, "metric");
  check_keys(sec, "metric", {"preset", "expression"});
  const bool has_preset = sec.contains("preset");
  const bool has_expr = sec.contains("expression");
  if (has_preset == has_expr)
    bad("metric: exactly one of 'preset' and 'expression' is required");
  if (has_preset) {
    const std::string name = str_field(sec, "metric", "preset");
    if (name == "euclidean") return metric_euclidean(dim);
    if (name == "sphere2" || name == "hyperbolic2") {
      if (dim != 2) bad("metric.preset '" + name + "' requires problem.dim = 2");
      return name == "sphere2" ? metric_sphere2() : metric_hyperbolic2();
    }
    bad("metric.preset: unknown preset '" + name + "'");
  }
  const json& rows = sec.at("expression");
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    bad("metric.expression must be a " + std::to_string(dim) + " by " + std::to_string(dim) +
        " array of strings");
  ExprContext ctx;
  ctx.dim = dim;
  ctx.max_order = 0;
  ctx.allow_t = false;
  ctx.allow_coords = true;
  std::vector<Expression> entries;
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      bad("metric.expression rows must have " + std::to_string(dim) + " entries");
    for (const json& e : row) {
      if (!e.is_string()) bad("metric.expression entries must be strings");
      entries.push_back(parse_expression(e.get<std::string>(), ctx));
    }
  }
  MetricField g;
  g.dim = dim;
  g.eval = [entries, dim](const std::vector<JetScalar>& x) {
    std::map<std::string, JetScalar> binds;
    for (int a = 0; a < dim; ++a) binds[coord_name(a, 0)] = x[static_cast<std::size_t>(a)];
    std::vector<JetScalar> out;
    out.reserve(entries.size());
    for (const Expression& e : entries) out.push_back(evaluate(e, binds));
    return out;
  };
  return g;
}

SolverConfig read_solver(const json& cfg) {
  SolverConfig s;
  const json* sec = optional_section(cfg, "solver");
  if (!sec) return s;
  check_keys(*sec, "solver",
             {"step", "newton_tol", "newton_max_iter", "shoot_tol", "shoot_max_iter", "fd_step"});
  if (sec->contains("step")) s.step = num_field(*sec, "solver", "step");
  if (sec->contains("newton_tol")) s.newton_tol = num_field(*sec, "solver", "newton_tol");
  if (sec->contains("newton_max_iter"))
    s.newton_max_iter = int_field(*sec, "solver", "newton_max_iter", 1, 1000);
  if (sec->contains("shoot_tol")) s.shoot_tol = num_field(*sec, "solver", "shoot_tol");
  if (sec->contains("shoot_max_iter"))
    s.shoot_max_iter = int_field(*sec, "solver", "shoot_max_iter", 1, 1000);
  if (sec->contains("fd_step")) s.fd_step = num_field(*sec, "solver", "fd_step");
  if (s.step <= 0.0 || s.newton_tol <= 0.0 || s.shoot_tol <= 0.0 || s.fd_step <= 0.0)
    bad("solver: step sizes and tolerances must be positive");
  return s;
}

struct Interval {
  double t0 = 0.0;
  double t1 = 1.0;
};

Interval read_interval(const json& cfg) {
  const json& sec = section(cfg, "interval");
  check_keys(sec, "interval", {"t0", "t1"});
  Interval iv;
  iv.t0 = num_field(sec, "interval", "t0");
  iv.t1 = num_field(sec, "interval", "t1");
  if (!(iv.t1 > iv.t0)) bad("interval: t1 must exceed t0");
  return iv;
}

struct OutputSpec {
  std::string csv;
  int samples = 101;
};

OutputSpec read_output(const json& cfg) {
  const json& sec = section(cfg, "output");
  check_keys(sec, "output", {"csv", "samples"});
  OutputSpec o;
  o.csv = str_field(sec, "output", "csv");
  if (sec.contains("samples")) o.samples = int_field(sec, "output", "samples", 2, 100000);
  return o;
}

/// Nested per-coordinate array of derivative values, flattened to
/// [a*orders + m].
std::vector<double> nested_array(const json& sec, const std::string& where, const char* key,
                                 int dim, int orders) {
  auto it = sec.find(key);
  if (it == sec.end()) bad(where + "." + key + " is required");
  if (!it->is_array() || static_cast<int>(it->size()) != dim)
    bad(where + "." + key + " must be an array of " + std::to_string(dim) +
        " coordinate arrays");
  std::vector<double> out;
  for (const json& row : *it) {
    if (!row.is_array() || static_cast<int>(row.size()) != orders)
      bad(where + "." + key + " entries must be arrays of " + std::to_string(orders) +
          " numbers (derivative orders 0.." + std::to_string(orders - 1) + ")");
    for (const json& v : row) {
      if (!v.is_number()) bad(where + "." + key + " entries must be numbers");
      out.push_back(v.get<double>());
    }
  }
  return out;
}

int quad_panels() {
  const char* env = std::getenv("JETVAR_PANELS");
  if (!env || !*env) return 64;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (!end || *end != '\0' || v < 1 || v > 1000000)
    bad(std::string("JETVAR_PANELS must be a positive integer, got '") + env + "'");
  return static_cast<int>(v);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary keeps line endings fixed
  if (!out) bad("cannot open output file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << fmt17(row[i]);
    }
    out << '\n';
  }
  if (!out) bad("failed writing output file: " + path);
}

std::vector<double> sample_grid(const Interval& iv, int samples) {
  std::vector<double> ts(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s)
    ts[static_cast<std::size_t>(s)] =
        iv.t0 + (iv.t1 - iv.t0) * static_cast<double>(s) / static_cast<double>(samples - 1);
  return ts;
}

// ------------------------------------------------------------- subcommands

int cmd_verify(std::uint64_t seed, int max_k) {
  VerificationReport rep = run_verification(seed, max_k);
  std::printf("%-26s %-6s %s\n", "group", "result", "detail");
  int passed = 0;
  for (const GroupResult& g : rep.groups) {
    std::printf("%-26s %-6s %s\n", g.name.c_str(), g.pass ? "PASS" : "FAIL", g.detail.c_str());
    passed += g.pass ? 1 : 0;
  }
  std::printf("%d/%zu groups passed (seed %" PRIu64 ", max order %d)\n", passed,
              rep.groups.size(), seed, max_k);
  return rep.all_pass ? 0 : 1;
}

int cmd_force(const std::string& path) {
  const json cfg = load_config(path);
  const ProblemSpec p = read_problem(cfg);
  const Lagrangian L = read_lagrangian(cfg, p);
  const CurveEvaluator curve = read_curve(cfg, "curve", p.dim);
  const Interval iv = read_interval(cfg);
  const OutputSpec out = read_output(cfg);
  std::vector<std::string> header{"t"};
  for (int a = 0; a < p.dim; ++a) header.push_back("x" + std::to_string(a) + "_0");
  for (int a = 0; a < p.dim; ++a) header.push_back("f" + std::to_string(a));
  std::vector<std::vector<double>> rows;
  for (double t : sample_grid(iv, out.samples)) {
    ForceValue fv = force_along(L, curve, t);
    std::vector<double> row{t};
    row.insert(row.end(), fv.x.begin(), fv.x.end());
    row.insert(row.end(), fv.f.begin(), fv.f.end());
    rows.push_back(std::move(row));
  }
  write_csv(out.csv, header, rows);
  std::printf("wrote %zu samples to %s\n", rows.size(), out.csv.c_str());
  return 0;
}

int cmd_momentum(const std::string& path) {
  const json cfg = load_config(path);
  const ProblemSpec p = read_problem(cfg);
  const Lagrangian L = read_lagrangian(cfg, p);
  const CurveEvaluator curve = read_curve(cfg, "curve", p.dim);
  const Interval iv = read_interval(cfg);
  const OutputSpec out = read_output(cfg);
  const int k = p.k;  // momentum lives at order k-1: levels 0..k-1
  std::vector<std::string> header{"t"};
  for (int a = 0; a < p.dim; ++a)
    for (int al = 0; al < k; ++al)
      header.push_back("x" + std::to_string(a) + "_" + std::to_string(al));
  for (int a = 0; a < p.dim; ++a)
    for (int al = 0; al < k; ++al)
      header.push_back("p" + std::to_string(a) + "_" + std::to_string(al));
  std::vector<std::vector<double>> rows;
  for (double t : sample_grid(iv, out.samples)) {
    CotangentLift cl = dual_eps_inverse(momentum_along(L, curve, t));
    std::vector<double> row{t};
    row.insert(row.end(), cl.x.begin(), cl.x.end());
    row.insert(row.end(), cl.p.begin(), cl.p.end());
    rows.push_back(std::move(row));
  }
  write_csv(out.csv, header, rows);
  std::printf("wrote %zu samples to %s\n", rows.size(), out.csv.c_str());
  return 0;
}

int cmd_vary(const std::string& path) {
  const json cfg = load_config(path);
  const ProblemSpec p = read_problem(cfg);
  const Lagrangian L = read_lagrangian(cfg, p);
  VariationField var{read_curve(cfg, "curve", p.dim), read_curve(cfg, "variation", p.dim)};
  const Interval iv = read_interval(cfg);
  const ActionVariationReport rep = action_variation(L, var, iv.t0, iv.t1, quad_panels());
  std::printf("direct variation      %s\n", fmt17(rep.lhs).c_str());
  std::printf("force integral        %s\n", fmt17(rep.force_integral).c_str());
  std::printf("boundary term at t0   %s\n", fmt17(rep.boundary_start).c_str());
  std::printf("boundary term at t1   %s\n", fmt17(rep.boundary_end).c_str());
  std::printf("decomposed variation  %s\n", fmt17(rep.rhs).c_str());
  std::printf("difference            %s\n", fmt17(rep.lhs - rep.rhs).c_str());
  const double tol = 1e-6 * std::max({1.0, std::fabs(rep.lhs), std::fabs(rep.rhs)});
  if (!rep.converged) {
    std::fprintf(stderr, "quadrature did not converge; raise JETVAR_PANELS\n");
    return 1;
  }
  return std::fabs(rep.lhs - rep.rhs) <= tol ? 0 : 1;
}

/// Shared CSV writer for integrated trajectories: all derivative levels
/// below 2k plus the Euler-Lagrange residual sup norm at each sample.
void write_trajectory_csv(const Lagrangian& L, const Trajectory& traj, const Interval& iv,
                          const OutputSpec& out, const SolverConfig& scfg) {
  const int dim = L.dim, k = L.k;
  std::vector<std::string> header{"t"};
  for (int a = 0; a < dim; ++a)
    for (int m = 0; m < 2 * k; ++m)
      header.push_back("x" + std::to_string(a) + "_" + std::to_string(m));
  header.push_back("el_residual");
  std::vector<std::vector<double>> rows;
  for (double t : sample_grid(iv, out.samples)) {
    std::vector<double> d = trajectory_derivatives(L, traj, t, scfg);
    std::vector<double> row{t};
    for (int a = 0; a < dim; ++a)
      for (int m = 0; m < 2 * k; ++m)
        row.push_back(d[static_cast<std::size_t>(a * (2 * k + 1) + m)]);
    std::vector<double> f = force_along(L, trajectory_curve(L, traj, t, scfg), t).f;
    double res = 0.0;
    for (double v : f) res = std::max(res, std::fabs(v));
    row.push_back(res);
    rows.push_back(std::move(row));
  }
  write_csv(out.csv, header, rows);
  std::printf("wrote %zu samples to %s\n", rows.size(), out.csv.c_str());
}

int cmd_integrate(const std::string& path) {
  const json cfg = load_config(path);
  const ProblemSpec p = read_problem(cfg);
  const Lagrangian L = read_lagrangian(cfg, p);
  const Interval iv = read_interval(cfg);
  const SolverConfig scfg = read_solver(cfg);
  const OutputSpec out = read_output(cfg);
  const json& sec = section(cfg, "initial_state");
  check_keys(sec, "initial_state", {"derivatives"});
  std::vector<double> z0 = nested_array(sec, "initial_state", "derivatives", p.dim, 2 * p.k);
  Trajectory traj = integrate_el(L, z0, iv.t0, iv.t1, scfg);
  write_trajectory_csv(L, traj, iv, out, scfg);
  return 0;
}

int cmd_bvp(const std::string& path) {
  const json cfg = load_config(path);
  const ProblemSpec p = read_problem(cfg);
  const Lagrangian L = read_lagrangian(cfg, p);
  const Interval iv = read_interval(cfg);
  const SolverConfig scfg = read_solver(cfg);
  const OutputSpec out = read_output(cfg);
  const json& sec = section(cfg, "boundary");
  check_keys(sec, "boundary", {"initial", "final"});
  std::vector<double> start = nested_array(sec, "boundary", "initial", p.dim, p.k);
  Trajectory traj;
  if (sec.contains("final")) {
    std::vector<double> end = nested_array(sec, "boundary", "final", p.dim, p.k);
    traj = shoot_bvp(L, start, end, iv.t0, iv.t1, scfg);
  } else {
    traj = shoot_natural(L, start, iv.t0, iv.t1, scfg);
  }
  write_trajectory_csv(L, traj, iv, out, scfg);
  return 0;
}

int cmd_cubic(const std::string& path) {
  const json cfg = load_config(path);
  const ProblemSpec p = read_problem(cfg);
  if (p.k != 2) bad("cubic: problem.k must be 2");
  const MetricField g = read_metric(cfg, p.dim);
  const Lagrangian L = cubic_lagrangian(g);
  const Interval iv = read_interval(cfg);
  const SolverConfig scfg = read_solver(cfg);
  const OutputSpec out = read_output(cfg);
  const json& sec = section(cfg, "boundary");
  check_keys(sec, "boundary", {"initial", "final"});
  std::vector<double> start = nested_array(sec, "boundary", "initial", p.dim, 2);
  std::vector<double> end = nested_array(sec, "boundary", "final", p.dim, 2);
  Trajectory traj = shoot_bvp(L, start, end, iv.t0, iv.t1, scfg);
  const int dim = p.dim;
  std::vector<std::string> header{"t"};
  for (int a = 0; a < dim; ++a)
    for (int m = 0; m < 4; ++m)
      header.push_back("x" + std::to_string(a) + "_" + std::to_string(m));
  header.push_back("cubic_residual");
  std::vector<std::vector<double>> rows;
  for (double t : sample_grid(iv, out.samples)) {
    std::vector<double> d = trajectory_derivatives(L, traj, t, scfg);
    std::vector<double> row{t};
    for (int a = 0; a < dim; ++a)
      for (int m = 0; m < 4; ++m) row.push_back(d[static_cast<std::size_t>(a * 5 + m)]);
    std::vector<double> res = cubic_el_residual(g, trajectory_curve(L, traj, t, scfg), t);
    double sup = 0.0;
    for (double v : res) sup = std::max(sup, std::fabs(v));
    row.push_back(sup);
    rows.push_back(std::move(row));
  }
  write_csv(out.csv, header, rows);
  std::printf("wrote %zu samples to %s\n", rows.size(), out.csv.c_str());
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& argv) {
  CLI::App app{"higher-order variational calculus toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  int max_k = 3;
  CLI::App* verify = app.add_subcommand("verify", "run the randomized identity suite");
  verify->add_option("--seed", seed, "random seed (default 42)");
  verify->add_option("--max-k", max_k, "highest velocity order exercised (1..3)");

  std::string cfg_force, cfg_momentum, cfg_vary, cfg_integrate, cfg_bvp, cfg_cubic;
  CLI::App* force = app.add_subcommand("force", "sample the Euler-Lagrange covector along a curve");
  force->add_option("--config", cfg_force, "JSON problem description")->required();
  CLI::App* momentum = app.add_subcommand("momentum", "sample boundary momenta along a curve");
  momentum->add_option("--config", cfg_momentum, "JSON problem description")->required();
  CLI::App* vary = app.add_subcommand("vary", "first variation of the action, two ways");
  vary->add_option("--config", cfg_vary, "JSON problem description")->required();
  CLI::App* integrate = app.add_subcommand("integrate", "integrate the Euler-Lagrange equations");
  integrate->add_option("--config", cfg_integrate, "JSON problem description")->required();
  CLI::App* bvp = app.add_subcommand("bvp", "two-point boundary value problem by shooting");
  bvp->add_option("--config", cfg_bvp, "JSON problem description")->required();
  CLI::App* cubic = app.add_subcommand("cubic", "Riemannian cubic boundary value problem");
  cubic->add_option("--config", cfg_cubic, "JSON problem description")->required();

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(seed, max_k);
    if (*force) return cmd_force(cfg_force);
    if (*momentum) return cmd_momentum(cfg_momentum);
    if (*vary) return cmd_vary(cfg_vary);
    if (*integrate) return cmd_integrate(cfg_integrate);
    if (*bvp) return cmd_bvp(cfg_bvp);
    if (*cubic) return cmd_cubic(cfg_cubic);
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: line %d, column %d: %s\n", e.line, e.column, e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

}  // namespace jetvar
