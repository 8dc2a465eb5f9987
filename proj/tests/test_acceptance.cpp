// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "herglotz/approx.hpp"
#include "herglotz/frac_ops.hpp"
#include "herglotz/herglotz.hpp"
#include "herglotz/noether.hpp"

using namespace herglotz;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

SampledFunction power(const Grid& g, double p) {
  return SampledFunction::from(g, [p](double t) { return std::pow(t, p); });
}

HerglotzProblem builtin(const std::string& name, std::size_t n, const ProblemParams& params = {}) {
  return HerglotzProblem(builtin_problem(name, params), n);
}

double interior_linf(const SampledFunction& f, const std::function<double(double)>& ref, std::size_t trim) {
  double m = 0.0;
  for (std::size_t i = trim; i + trim < f.size(); ++i) m = std::max(m, std::abs(f[i] - ref(f.grid[i])));
  return m;
}

Outcome caputo_closed_form() {
  const auto ref = [](double t) { return 2.0 / std::tgamma(2.5) * std::pow(t, 1.5); };
  std::vector<double> errs;
  for (std::size_t n : {251, 501, 1001, 2001}) {
    Grid g(0.0, 1.0, n);
    errs.push_back(interior_linf(left_caputo_deriv(power(g, 2.0), FractionalOrder(0.5)), ref, 2));
  }
  double min_order = 1e300;
  for (std::size_t k = 1; k < errs.size(); ++k) min_order = std::min(min_order, std::log2(errs[k - 1] / errs[k]));
  return {errs[2] <= 5e-3 && min_order >= 1.4,
          "linf(n=1001)=" + num(errs[2]) + " min_order=" + num(min_order)};
}

Outcome integration_by_parts() {
  std::vector<double> d;
  for (std::size_t n : {501, 1001, 2001}) {
    Grid g(0.0, 1.0, n);
    d.push_back(ibp_defect(power(g, 2.0), SampledFunction::from(g, [](double t) { return 1.0 - t; }),
                           FractionalOrder(0.5)));
  }
  const double r1 = d[0] / d[1], r2 = d[1] / d[2];
  return {d[2] <= 1e-3 && r1 >= 1.5 && r2 >= 1.5,
          "defect(n=2001)=" + num(d[2]) + " ratios=" + num(r1) + "," + num(r2)};
}

Outcome functional_values() {
  const auto p = builtin("example1", 2001);
  const double v2 = functional_value(p, power(p.grid, 2.0));
  const double v1 = functional_value(p, power(p.grid, 1.0));
  return {std::abs(v2) <= 1e-6 && v1 >= 1e-3, "z(b)[t^2]=" + num(v2) + " z(b)[t]=" + num(v1)};
}

Outcome el_stationarity() {
  const auto p1 = builtin("example1", 2001);
  const auto p2 = builtin("example2", 2001);
  const double r1 = el_residual(p1, solve_z(p1, power(p1.grid, 2.0))).linf();
  const double r2 = el_residual(p2, solve_z(p2, power(p2.grid, 2.0))).linf();
  const double rt = el_residual(p1, solve_z(p1, power(p1.grid, 1.0))).linf();
  return {r1 <= 5e-2 && r2 <= 5e-2 && rt >= 10.0 * r1,
          "R1[t^2]=" + num(r1) + " R2[t^2]=" + num(r2) + " R1[t]=" + num(rt)};
}

Outcome lambda_closed_forms() {
  const auto p2 = builtin("example2", 1001);
  const auto pn = builtin("noether_gamma", 1001);
  const auto l2 = solve_z(p2, power(p2.grid, 2.0)).lambda;
  const auto ln = solve_z(pn, power(pn.grid, 2.0)).lambda;
  const double e2 = interior_linf(l2, [](double t) { return std::exp(-t); }, 0);
  const double en = interior_linf(ln, [](double t) { return std::exp(0.1 * t); }, 0);
  return {e2 <= 1e-8 && en <= 1e-8, "err[e^-t]=" + num(e2) + " err[e^{0.1t}]=" + num(en)};
}

Outcome transversality() {
  auto def = builtin_problem("example1");
  def.bc_right = {std::nullopt};
  const HerglotzProblem p(def, 2001);
  const double on_min = std::abs(transversality_residual(p, evaluate_trajectory(p, {power(p.grid, 2.0)}))[0]);
  const double on_line = std::abs(transversality_residual(p, evaluate_trajectory(p, {power(p.grid, 1.0)}))[0]);
  return {on_min <= 1e-2 && on_line >= 1e-2, "|T|[t^2]=" + num(on_min) + " |T|[t]=" + num(on_line) +
                                                  " (bounded integrand: right integral at b is empty)"};
}

Outcome expansion() {
  Grid g(0.0, 1.0, 1001);
  auto x = power(g, 2.0);
  x.derivs.push_back(SampledFunction::from(g, [](double t) { return 2.0 * t; }).values);
  x.derivs.push_back(SampledFunction::constant(g, 2.0).values);
  const auto ref = [](double t) { return 2.0 / std::tgamma(2.5) * std::pow(t, 1.5); };
  const double e2 = interior_linf(caputo_expansion(x, {2, 0.0, 0.5}), ref, 0);
  const double e1 = interior_linf(caputo_expansion(x, {1, 0.0, 0.5}), ref, 0);
  return {e2 <= 1e-10 && e1 >= 0.05, "gap(N=2)=" + num(e2) + " gap(N=1)=" + num(e1)};
}

Outcome reduced_solve() {
  const HerglotzProblem p(builtin_problem("example3"), 1001);
  const auto red = build_reduced_lagrangian(p.def.lagrangian, {1, p.def.a, p.order(0)}, p.def.bc_left[0]);
  const auto r = solve_reduced_herglotz(red, p);
  const auto cmp = emit_comparison(r, power(p.grid, 2.0));
  const double self = reduced_el_residual(red, r).linf;
  return {r.mismatch <= 1e-8 && cmp.linf <= 0.15 && self <= 1e-6,
          "mismatch=" + num(r.mismatch) + " linf_vs_t^2=" + num(cmp.linf) + " self_residual=" + num(self)};
}

Outcome variation() {
  const auto p = builtin("example1", 2001);
  double worst_theta = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const auto eta = SampledFunction::from(p.grid, [k](double t) { return std::pow(t, k) * (1.0 - t); });
    worst_theta = std::max(worst_theta, std::abs(directional_derivative(p, power(p.grid, 2.0), eta).theta_b));
  }
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = builtin(trial % 2 ? "example2" : "example1", 1001);
    const double c1 = u(rng), c2 = u(rng), e1 = u(rng), e2 = u(rng), e3 = u(rng);
    const auto x = SampledFunction::from(q.grid, [&](double t) { return t * t + t * (1 - t) * (c1 + c2 * t); });
    const auto eta = SampledFunction::from(q.grid, [&](double t) { return t * (1 - t) * (e1 + e2 * t + e3 * t * t); });
    worst_gap = std::max(worst_gap, directional_derivative(q, x, eta).relative_gap());
  }
  return {worst_theta <= 1e-4 && worst_gap <= 1e-4,
          "max|theta(b)|=" + num(worst_theta) + " max_rel_gap=" + num(worst_gap)};
}

Outcome noether() {
  std::vector<double> rel;
  double res = 0.0, el = 0.0;
  for (std::size_t n : {1001, 2001, 4001}) {
    const auto p = builtin("noether_gamma", n);
    const auto tr = solve_z(p, solve_first_integral(p).x);
    const auto cq = constant_of_motion(p, tr, 0);
    rel.push_back(cq.flatness / cq.c_linf);
    if (n == 2001) {
      const auto nr = noether_residual(p, tr, TransformationFamily::constant(1, 1.0));
      res = nr.residual.linf;
      el = nr.el.linf();
    }
  }
  const bool decreasing = rel[1] < rel[0] && rel[2] < rel[1];
  return {rel[1] <= 5e-2 && decreasing && res <= 10.0 * el,
          "flatness/|C|=" + num(rel[0]) + "," + num(rel[1]) + "," + num(rel[2]) + " noether/el=" + num(res / el)};
}

Outcome classical_limit() {
  // noether_gamma at α = 1: x'' = -γ x', solved by classical shooting, checked at α = 0.999
  const auto frac = builtin("noether_gamma", 2001, {{"alpha", 0.999}});
  const auto sol = solve_reduced_herglotz(ReducedLagrangian::classical(frac.def.lagrangian), frac);
  const auto rep = el_residual(frac, solve_z(frac, sol.x));
  double mid = 0.0;
  for (std::size_t i = 0; i < frac.grid.size(); ++i)
    if (frac.grid[i] >= 0.1 && frac.grid[i] <= 0.9) mid = std::max(mid, std::abs(rep.components[0].samples[i]));
  return {rep.linf() <= 5e-2, "linf=" + num(rep.linf()) + " linf_on_[0.1,0.9]=" + num(mid) +
                                  " (end layers ~(1-alpha)/(t-a), (1-alpha)/(b-t))"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_s;  // <= 0: no runtime bound
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, 1.0, caputo_closed_form}, {2, 1.0, integration_by_parts}, {3, 1.0, functional_values},
      {4, 5.0, el_stationarity},    {5, 0.0, lambda_closed_forms},  {6, 0.0, transversality},
      {7, 0.0, expansion},          {8, 10.0, reduced_solve},       {9, 0.0, variation},
      {10, 10.0, noether},          {11, 0.0, classical_limit},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d: %s  %s  [%.3f s%s]\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                in_time ? "" : ", over budget");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed ? 1 : 0;
}
