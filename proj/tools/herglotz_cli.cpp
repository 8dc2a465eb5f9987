// herglotz: command-line front end.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "herglotz/approx.hpp"
#include "herglotz/error.hpp"
#include "herglotz/frac_ops.hpp"
#include "herglotz/herglotz.hpp"
#include "herglotz/io.hpp"
#include "herglotz/noether.hpp"
#include "herglotz/problems.hpp"

namespace fs = std::filesystem;
using namespace herglotz;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct UsageError : Error {
  using Error::Error;
};

struct GridArg {
  std::optional<double> a, b;
  std::size_t n = 0;
};

GridArg parse_grid(const std::string& text) {
  GridArg g;
  std::string s = text;
  for (auto& ch : s)
    if (ch == ':') ch = ',';
  const auto v = parse_number_list(s);
  double n = 0;
  if (v.size() == 1) {
    n = v[0];
  } else if (v.size() == 3) {
    g.a = v[0];
    g.b = v[1];
    n = v[2];
  } else {
    throw UsageError("--grid expects n or a:b:n");
  }
  if (!(n >= 3) || n != std::floor(n)) throw UsageError("--grid resolution must be an integer >= 3");
  g.n = static_cast<std::size_t>(n);
  return g;
}

struct Options {
  std::string grid = "1001";
  bool grid_given = false;
  std::string out;
  std::string format = "auto";
  std::string config;

  std::string problem;
  std::optional<double> gamma, power, alpha_param;
  bool free_right = false;

  // ops
  std::string fn;
  std::string op;
  double order = 0.5;

  // residual / noether
  std::string traj;
  double tol = 5e-2;

  // solve
  std::string exact;
  std::string slope_range;
  std::optional<int> max_iter;

  // noether
  std::string xi = "const:1";
  bool from_solve = false;
  std::vector<double> s_values = {1e-4, 1e-3, 1e-2};
  double flat_tol = 5e-2;
};

class Output {
public:
  Output(const Options& o, const char* default_format) : dir_(o.out) {
    format_ = o.format == "auto" ? (o.out.empty() ? default_format : "both") : o.format;
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec || !fs::is_directory(dir_)) throw UsageError("cannot create output directory '" + dir_ + "'");
    }
  }

  bool csv() const { return format_ == "csv" || format_ == "both"; }
  bool json() const { return format_ == "json" || format_ == "both"; }
  bool to_files() const { return !dir_.empty(); }

  void write(const std::string& name, const std::string& body) const {
    if (dir_.empty()) {
      std::cout << body;
      return;
    }
    const fs::path path = fs::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    if (!(f << body)) throw UsageError("cannot write '" + path.string() + "'");
  }

private:
  std::string dir_;
  std::string format_;
};

// reciprocal Γ, zero at the poles
double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / herglotz::gamma(x);
}

// closed forms for the builtin function specs, where one is available
std::optional<std::vector<double>> reference(const FunctionSpec& f, const std::string& op, double al,
                                             const Grid& g) {
  using K = FunctionSpec::Kind;
  const double a = g.a(), b = g.b();
  // f as Σ c_k (t-a)^{p_k}, or as Σ c_k (b-t)^{p_k}
  std::vector<std::pair<double, double>> left, right;
  switch (f.kind) {
    case K::Const:
      left = {{f.c, 0.0}};
      right = {{f.c, 0.0}};
      break;
    case K::Line:
      left = {{f.m * a + f.c, 0.0}, {f.m, 1.0}};
      right = {{f.m * b + f.c, 0.0}, {-f.m, 1.0}};
      break;
    case K::Pow:
      left = {{1.0, f.p}};
      break;
  }
  const bool is_left = op == "li" || op == "lcd";
  const auto& terms = is_left ? left : right;
  if (terms.empty()) return std::nullopt;
  const int n = static_cast<int>(std::floor(al)) + 1;
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double s = is_left ? g[i] - a : b - g[i];
    double v = 0.0;
    for (const auto& [c, p] : terms) {
      if (c == 0.0) continue;
      if (op == "li" || op == "ri") {
        v += c * herglotz::gamma(p + 1.0) * rgamma(p + 1.0 + al) * std::pow(s, p + al);
      } else if (op == "lcd" || op == "rcd") {
        // Caputo annihilates polynomial terms of degree < n; for the right
        // operator the (-1)^n factors of the definition and of d^n/dt^n cancel
        if (p == std::floor(p) && p < n) continue;
        v += c * herglotz::gamma(p + 1.0) * rgamma(p + 1.0 - al) * std::pow(s, p - al);
      } else {  // rld
        v += c * herglotz::gamma(p + 1.0) * rgamma(p + 1.0 - al) * std::pow(s, p - al);
      }
    }
    out[i] = v;
  }
  return out;
}

int cmd_ops(const Options& o) {
  const GridArg ga = parse_grid(o.grid);
  const Grid g(ga.a.value_or(0.0), ga.b.value_or(1.0), ga.n);
  const FunctionSpec f = parse_function_spec(o.fn);
  const SampledFunction x = f.sample(g);
  SampledFunction y = SampledFunction::zeros(g);
  if (o.op == "li") y = left_rl_integral(x, FractionalOrder(o.order));
  else if (o.op == "ri") y = right_rl_integral(x, FractionalOrder(o.order));
  else if (o.op == "lcd") y = left_caputo_deriv(x, FractionalOrder(o.order));
  else if (o.op == "rcd") y = right_caputo_deriv(x, FractionalOrder(o.order));
  else if (o.op == "rld") y = right_rl_differintegral(x, {o.order});
  else throw UsageError("unknown operator '" + o.op + "' (expected li, ri, lcd, rcd or rld)");

  const auto ref = reference(f, o.op, o.order, g);
  std::optional<double> linf;
  if (ref) {
    std::vector<double> err(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) err[i] = y[i] - (*ref)[i];
    linf = interior_norms(err, 2, g.step()).first;
  }

  Output out(o, "csv");
  std::vector<double> t(g.nodes().begin(), g.nodes().end());
  if (out.csv()) {
    std::ostringstream ss;
    if (ref) write_csv(ss, {"t", "value", "reference"}, {t, y.values, *ref});
    else write_csv(ss, {"t", "value"}, {t, y.values});
    out.write("ops.csv", ss.str());
  }
  Json j = Json::object();
  j.set("fn", o.fn).set("op", o.op).set("order", o.order).set("n", g.size()).set("h", g.step()).set("trim", 2);
  j.set("linf_vs_reference", linf ? Json(*linf) : Json(nullptr));
  if (out.json()) out.write("ops.json", j.dump());
  // summary line; on stderr when the table goes to stdout
  std::ostream& msg = out.to_files() ? std::cout : std::cerr;
  if (linf) msg << "linf_vs_reference " << fmt(*linf) << '\n';
  else msg << "linf_vs_reference n/a\n";
  return kOk;
}

struct LoadedProblem {
  ProblemDef def;
  std::optional<ConfigFile> cfg;
};

LoadedProblem load_problem(const Options& o) {
  LoadedProblem lp;
  if (!o.config.empty()) lp.cfg = load_config(o.config);
  const bool cfg_problem = lp.cfg && lp.cfg->defines_problem();
  if (cfg_problem && !o.problem.empty()) throw UsageError("give either --problem or a config with a lagrangian, not both");
  if (cfg_problem) {
    lp.def = problem_from_config(*lp.cfg);
  } else if (!o.problem.empty()) {
    ProblemParams params;
    if (o.gamma) params["gamma"] = *o.gamma;
    if (o.power) params["p"] = *o.power;
    if (o.alpha_param) params["alpha"] = *o.alpha_param;
    lp.def = builtin_problem(o.problem, params);
  } else {
    throw UsageError("no problem given (use --problem NAME or --config PATH)");
  }
  if (o.free_right)
    for (auto& r : lp.def.bc_right) r.reset();
  return lp;
}

HerglotzProblem make_problem(const Options& o, const ProblemDef& def) {
  // a trajectory file brings its own mesh unless --grid is explicit
  if (!o.grid_given && !o.traj.empty() && fs::exists(o.traj))
    return HerglotzProblem(def, read_trajectory_csv(o.traj).grid.size());
  const GridArg ga = parse_grid(o.grid);
  if ((ga.a && *ga.a != def.a) || (ga.b && *ga.b != def.b))
    throw UsageError("--grid interval does not match the problem interval");
  return HerglotzProblem(def, ga.n);
}

std::vector<SampledFunction> load_trajectory(const Options& o, const HerglotzProblem& p) {
  if (o.traj.empty()) throw UsageError("no trajectory given (use --traj SPEC or --traj FILE.csv)");
  if (p.dimension() != 1) throw UsageError("trajectory input supports a single component");
  if (fs::exists(o.traj)) {
    SampledFunction x = read_trajectory_csv(o.traj);
    if (!(x.grid == p.grid)) throw UsageError("trajectory file grid does not match --grid");
    return {x};
  }
  const bool csv_name = o.traj.size() >= 4 && o.traj.compare(o.traj.size() - 4, 4, ".csv") == 0;
  if (csv_name || o.traj.find(':') == std::string::npos)
    throw UsageError("trajectory file '" + o.traj + "' not found");
  const FunctionSpec f = parse_function_spec(o.traj);
  return {f.sample(p.grid, p.higher_order() ? 2 : 0)};
}

Json residual_json(const ResidualReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json jc = Json::object();
    jc.set("linf", c.linf).set("l2", c.l2);
    jc.set("transversality", c.transversality ? Json(*c.transversality) : Json(nullptr));
    comps.push(std::move(jc));
  }
  Json j = Json::object();
  j.set("h", r.h).set("trim", r.trim).set("linf", r.linf()).set("l2", r.l2()).set("components", std::move(comps));
  return j;
}

std::string residual_csv(const HerglotzProblem& p, const std::vector<std::vector<double>>& samples) {
  std::vector<std::string> head{"t"};
  std::vector<std::vector<double>> cols{{p.grid.nodes().begin(), p.grid.nodes().end()}};
  for (std::size_t j = 0; j < samples.size(); ++j) {
    head.push_back("r" + std::to_string(j + 1));
    cols.push_back(samples[j]);
  }
  std::ostringstream ss;
  write_csv(ss, head, cols);
  return ss.str();
}

int cmd_residual(const Options& o) {
  const auto lp = load_problem(o);
  const HerglotzProblem p = make_problem(o, lp.def);
  const auto x = load_trajectory(o, p);
  const Trajectory tr = solve_z(p, x);
  const ResidualReport rep = p.higher_order() ? higher_order_el_residual(p, tr) : el_residual(p, tr);

  Json j = Json::object();
  j.set("problem", p.def.name).set("n", p.grid.size()).set("functional_value", tr.z.values.back());
  j.set("residual", residual_json(rep)).set("tol", o.tol);
  if (p.higher_order() && p.any_free_right()) {
    const auto ht = higher_order_transversality(p, tr);
    Json rows = Json::array();
    for (const auto& row : ht.values) rows.push(Json(row));
    j.set("higher_order_transversality", std::move(rows)).set("stated_without_proof", ht.stated_without_proof);
  }
  const bool pass = rep.linf() <= o.tol;
  j.set("pass", pass);

  Output out(o, "json");
  if (out.json()) out.write("residual.json", j.dump());
  if (out.csv()) {
    std::vector<std::vector<double>> s;
    for (const auto& c : rep.components) s.push_back(c.samples);
    out.write("residual.csv", residual_csv(p, s));
  }
  if (out.to_files()) std::cout << "residual_linf " << fmt(rep.linf()) << (pass ? " PASS" : " FAIL") << '\n';
  return pass ? kOk : kCheckFailed;
}

SolverSettings solver_settings(const Options& o, const std::optional<ConfigFile>& cfg) {
  SolverSettings s;
  if (cfg) s = solver_settings_from_config(*cfg, s);
  if (!o.slope_range.empty()) {
    ConfigFile c;
    c.entries["solver.slope_range"] = o.slope_range;
    s = solver_settings_from_config(c, s);
  }
  if (o.max_iter) s.max_iter = *o.max_iter;
  return s;
}

ReducedLagrangian reduction_for(const HerglotzProblem& p) {
  if (p.dimension() != 1) throw UsageError("solve supports a single dependent variable");
  if (p.higher_order()) throw UsageError("solve supports orders in (0,1) only");
  return build_reduced_lagrangian(p.def.lagrangian, ExpansionSpec{1, p.grid.a(), p.order(0)}, p.def.bc_left[0]);
}

int cmd_solve(const Options& o) {
  const auto lp = load_problem(o);
  const HerglotzProblem p = make_problem(o, lp.def);
  if (p.any_free_right()) throw UsageError("solve needs a fixed right boundary value");
  const ReducedLagrangian red = reduction_for(p);
  const SolverSettings s = solver_settings(o, lp.cfg);
  const ShootingResult res = solve_reduced_herglotz(red, p, s);
  std::optional<SampledFunction> exact;
  if (!o.exact.empty()) exact = parse_function_spec(o.exact).sample(p.grid);
  const Comparison cmp = emit_comparison(res, exact);
  const ReducedResidual rr = reduced_el_residual(red, res);

  Json j = Json::object();
  j.set("problem", p.def.name).set("n", p.grid.size()).set("h", p.grid.step());
  j.set("slope", res.slope).set("iterations", res.iterations).set("terminal_mismatch", res.mismatch);
  j.set("bracket", Json(std::vector<double>{res.bracket_lo, res.bracket_hi}));
  j.set("self_consistency_linf", rr.linf);
  if (exact) j.set("exact", o.exact).set("linf", cmp.linf).set("l2", cmp.l2);
  const bool pass = res.mismatch <= s.tol;
  j.set("pass", pass);

  Output out(o, "csv");
  if (out.csv()) {
    std::ostringstream ss;
    cmp.write_csv(ss);
    out.write("solve.csv", ss.str());
  }
  if (out.json()) out.write("solve.json", j.dump());
  if (out.to_files()) {
    std::cout << "terminal_mismatch " << fmt(res.mismatch);
    if (exact) std::cout << " max_abs_error " << fmt(cmp.linf);
    std::cout << '\n';
  }
  return pass ? kOk : kCheckFailed;
}

int cmd_noether(const Options& o) {
  const auto lp = load_problem(o);
  const HerglotzProblem p = make_problem(o, lp.def);
  const TransformationFamily fam = TransformationFamily::parse(o.xi, p.dimension());

  std::vector<SampledFunction> x;
  std::string source;
  if (o.from_solve) {
    if (!o.traj.empty()) throw UsageError("give either --traj or --from-solve");
    if (first_integral_applies(p)) {
      x = {solve_first_integral(p).x};
      source = "first_integral";
    } else {
      const ShootingResult res = solve_reduced_herglotz(reduction_for(p), p, solver_settings(o, lp.cfg));
      x = {res.x};
      source = "reduced";
    }
  } else {
    x = load_trajectory(o, p);
    source = "input";
  }
  const Trajectory tr = solve_z(p, x);
  const InvarianceReport inv = invariance_check(p, tr, fam, o.s_values);
  const NoetherReport nr = noether_residual(p, tr, fam);

  Json rows = Json::array();
  for (const auto& r : inv.rows) {
    Json jr = Json::object();
    jr.set("s", r.s).set("ratio_linear", r.ratio_linear);
    jr.set("ratio_exact", r.ratio_exact ? Json(*r.ratio_exact) : Json(nullptr));
    rows.push(std::move(jr));
  }
  Json j = Json::object();
  j.set("problem", p.def.name).set("n", p.grid.size()).set("trajectory", source).set("xi", o.xi);
  Json ji = Json::object();
  ji.set("rows", std::move(rows)).set("scale", inv.scale).set("threshold", inv.threshold).set("invariant", inv.invariant);
  j.set("invariance", std::move(ji));
  Json jn = Json::object();
  jn.set("h", nr.h).set("trim", nr.trim).set("linf", nr.residual.linf).set("l2", nr.residual.l2);
  jn.set("el_linf", nr.el.linf()).set("el_l2", nr.el.l2());
  j.set("noether_residual", std::move(jn));

  Output out(o, "json");
  int code = inv.invariant ? kOk : kCheckFailed;
  std::string violation;
  try {
    const ConservedQuantity cq = constant_of_motion(p, tr, 0);
    const bool flat = cq.flatness <= o.flat_tol * cq.c_linf;
    Json jc = Json::object();
    jc.set("component", cq.component + 1).set("flatness", cq.flatness).set("c_linf", cq.c_linf);
    jc.set("relative_flatness", cq.c_linf > 0 ? Json(cq.flatness / cq.c_linf) : Json(nullptr));
    jc.set("mean", cq.mean).set("trim", cq.trim).set("h", p.grid.step()).set("tol", o.flat_tol).set("flat", flat);
    j.set("conserved_quantity", std::move(jc));
    if (!flat) code = kCheckFailed;
    if (out.csv()) {
      std::ostringstream ss;
      write_csv(ss, {"t", "C"}, {{p.grid.nodes().begin(), p.grid.nodes().end()}, cq.c.values});
      out.write("conserved.csv", ss.str());
    }
  } catch (const SymmetryViolation& e) {
    violation = e.what();
    j.set("conserved_quantity", nullptr).set("symmetry_violation", violation);
    code = kCheckFailed;
  }
  j.set("pass", code == kOk);
  if (out.json()) out.write("noether.json", j.dump());
  if (out.csv()) out.write("noether_residual.csv", residual_csv(p, {nr.residual.samples}));
  if (!violation.empty()) std::cerr << "symmetry violation: " << violation << '\n';
  return code;
}

int cmd_list() {
  for (const auto& n : builtin_problem_names()) std::cout << n << "  " << builtin_problem_summary(n) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Herglotz variational problems: operators, residuals, shooting, Noether checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--grid", o.grid, "n or a:b:n")->capture_default_str();
  app.add_option("--out", o.out, "output directory (default: stdout)");
  app.add_option("--format", o.format, "csv, json or both")->check(CLI::IsMember({"auto", "csv", "json", "both"}));
  app.add_option("--config", o.config, "key = value problem/solver file");

  auto problem_opts = [&](CLI::App* c) {
    c->add_option("--problem", o.problem, "builtin problem name");
    c->add_option("--gamma", o.gamma, "noether_gamma: damping");
    c->add_option("--p", o.power, "noether_gamma: exponent of the kinetic term");
    c->add_option("--alpha", o.alpha_param, "noether_gamma: fractional order");
    c->add_flag("--free", o.free_right, "free the right endpoint");
  };

  auto* ops = app.add_subcommand("ops", "apply a fractional operator to a builtin function");
  ops->add_option("--fn", o.fn, "pow:p, const:c or line:m:c")->required();
  ops->add_option("--op", o.op, "li, ri, lcd, rcd or rld")->required();
  ops->add_option("--alpha,--order", o.order, "operator order")->capture_default_str();

  auto* res = app.add_subcommand("residual", "Euler-Lagrange residual of a trajectory");
  problem_opts(res);
  res->add_option("--traj", o.traj, "pow:p, const:c, line:m:c or a CSV file");
  res->add_option("--tol", o.tol, "pass threshold on the interior L-infinity norm")->capture_default_str();

  auto* sol = app.add_subcommand("solve", "N=1 expansion + shooting");
  problem_opts(sol);
  sol->add_option("--exact", o.exact, "exact solution spec for the comparison table");
  sol->add_option("--slope-range", o.slope_range, "lo:hi bracket scan range");
  sol->add_option("--max-iter", o.max_iter, "secant iteration cap");

  auto* noe = app.add_subcommand("noether", "invariance, Noether residual and constant of motion");
  problem_opts(noe);
  noe->add_option("--traj", o.traj, "pow:p, const:c, line:m:c or a CSV file");
  noe->add_flag("--from-solve", o.from_solve, "use a numerically solved EL trajectory");
  noe->add_option("--xi", o.xi, "const:c or generator expression(s) separated by ';'")->capture_default_str();
  noe->add_option("--s", o.s_values, "transformation parameters for the invariance test");
  noe->add_option("--flat-tol", o.flat_tol, "relative flatness threshold")->capture_default_str();

  auto* lst = app.add_subcommand("list-problems", "list builtin problems");

  try {
    app.parse(argc, argv);
    o.grid_given = app.get_option("--grid")->count() > 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (ops->parsed()) return cmd_ops(o);
    if (res->parsed()) return cmd_residual(o);
    if (sol->parsed()) return cmd_solve(o);
    if (noe->parsed()) return cmd_noether(o);
    if (lst->parsed()) return cmd_list();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SymmetryViolation& e) {
    std::cerr << "symmetry violation: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const NoBracket& e) {
    std::cerr << "error: " << e.what() << " [" << fmt(e.lo()) << ", " << fmt(e.hi()) << "]\n";
    return kCheckFailed;
  } catch (const StiffnessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
