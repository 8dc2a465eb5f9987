#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "herglotz/error.hpp"
#include "herglotz/frac_ops.hpp"
#include "herglotz/noether.hpp"

using namespace herglotz;

namespace {

HerglotzProblem noether_problem(std::size_t n) { return HerglotzProblem(builtin_problem("noether_gamma"), n); }

ProblemDef custom(const std::string& lag, double alpha) {
  ProblemDef def;
  def.name = "custom";
  def.lagrangian = LagrangianDef::from_text(lag, 1, {alpha});
  def.bc_left = {0.0};
  def.bc_right = {1.0};
  return def;
}

}  // namespace

TEST_CASE("bracket of a constant with t^2") {
  // 𝒟^α[1, t^2] = C D^α t^2 - t^2 (1-t)^{-α}/Γ(1-α)
  Grid g(0.0, 1.0, 2001);
  const double al = 0.5;
  const auto one = SampledFunction::constant(g, 1.0);
  const auto sq = SampledFunction::from(g, [](double t) { return t * t; });
  const auto br = d_alpha_bracket(one, sq, al);
  for (std::size_t i = 100; i + 100 < g.size(); i += 100) {
    const double t = g[i];
    const double ref = 2.0 / std::tgamma(3.0 - al) * std::pow(t, 2.0 - al) -
                       t * t * std::pow(1.0 - t, -al) / std::tgamma(1.0 - al);
    CHECK(std::abs(br[i] - ref) <= 5e-3 * std::max(1.0, std::abs(ref)));
  }
  CHECK_THROWS_AS(d_alpha_bracket(one, sq, 1.5), OrderError);
}

TEST_CASE("transformation family parsing") {
  const auto c = TransformationFamily::parse("const:2", 1);
  REQUIRE(c.generators.size() == 1);
  CHECK(evaluate(c.generators[0], EvalPoint{0.3, {0.7}, {}, 0.0}) == 2.0);
  const auto two = TransformationFamily::parse("t; x2", 2);
  CHECK(two.generators.size() == 2);
  CHECK_THROWS_AS(TransformationFamily::parse("t", 2), DimensionError);
  CHECK_THROWS_AS(TransformationFamily::parse("d1", 1), UnknownIdentifier);
  CHECK_THROWS_AS(TransformationFamily::parse("const:", 1), InvalidArgument);
}

TEST_CASE("translations leave a cyclic Lagrangian invariant") {
  const auto p = noether_problem(501);
  const auto tr = solve_z(p, SampledFunction::from(p.grid, [](double t) { return t * t; }));
  auto fam = TransformationFamily::constant(1, 1.0);
  fam.maps.push_back(parse("x1 + s", VarSet::transformation(1)));
  const auto rep = invariance_check(p, tr, fam, {1e-3, 1e-2, 0.1});
  CHECK(rep.invariant);
  REQUIRE(rep.invariant_exact.has_value());
  CHECK(*rep.invariant_exact);
  REQUIRE(rep.rows.size() == 3);
  for (const auto& r : rep.rows) CHECK(r.ratio_linear <= rep.threshold);
}

TEST_CASE("a non-symmetry is reported as such") {
  const HerglotzProblem p(custom("pow(d1, 2) + x1", 0.65), 501);
  const auto tr = solve_z(p, SampledFunction::from(p.grid, [](double t) { return t; }));
  const auto rep = invariance_check(p, tr, TransformationFamily::constant(1, 1.0), {1e-3, 1e-2});
  CHECK_FALSE(rep.invariant);
  // z[x + s] - z[x] = s ∫ λ, and λ = 1 here
  CHECK(rep.rows[0].ratio_linear == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(constant_of_motion(p, tr, 0), SymmetryViolation);
}

TEST_CASE("first-integral solver") {
  const auto p = noether_problem(1001);
  CHECK(first_integral_applies(p));
  const auto sol = solve_first_integral(p);
  CHECK(sol.mismatch <= 1e-10);
  CHECK(sol.x[0] == 0.0);
  CHECK(sol.x[sol.x.size() - 1] == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_FALSE(first_integral_applies(HerglotzProblem(custom("pow(d1, 2) + x1", 0.65), 101)));
  CHECK_FALSE(first_integral_applies(HerglotzProblem(custom("pow(d1, 2) * z", 0.65), 101)));
  CHECK_FALSE(first_integral_applies(HerglotzProblem(custom("pow(d1, 2)", 0.4), 101)));
  CHECK_THROWS_AS(solve_first_integral(HerglotzProblem(custom("pow(d1, 2) + x1", 0.65), 101)), SymmetryViolation);
}

TEST_CASE("first-integral solution with z-free Lagrangian matches the closed form") {
  // L = d^2: d = K (1-t)^{α-1}/(2Γ(α)), x = K/(2Γ(α)) aI^α (1-t)^{α-1}
  const HerglotzProblem p(custom("pow(d1, 2)", 0.75), 801);
  const auto sol = solve_first_integral(p);
  const auto tr = solve_z(p, sol.x);
  const auto el = el_residual(p, tr);
  const auto cq = constant_of_motion(p, tr, 0);
  CHECK(cq.mean == doctest::Approx(sol.K).epsilon(5e-2));
  // the momentum blows up like (1-t)^{α-1}; judge the residual away from b
  double mid = 0.0;
  for (std::size_t i = 0; i < p.grid.size(); ++i)
    if (p.grid[i] >= 0.1 && p.grid[i] <= 0.9) mid = std::max(mid, std::abs(el.components[0].samples[i]));
  CHECK(mid <= 5e-2 * cq.c_linf);
}

TEST_CASE("conserved quantity is flat and sharpens under refinement") {
  std::vector<double> rel;
  for (std::size_t n : {1001, 2001, 4001}) {
    const auto p = noether_problem(n);
    const auto sol = solve_first_integral(p);
    const auto tr = solve_z(p, sol.x);
    const auto cq = constant_of_motion(p, tr, 0);
    rel.push_back(cq.flatness / cq.c_linf);
    if (n == 2001) {
      CHECK(cq.flatness <= 5e-2 * cq.c_linf);
      const auto nr = noether_residual(p, tr, TransformationFamily::constant(1, 1.0));
      CHECK(nr.residual.linf <= 10.0 * nr.el.linf());
    }
  }
  CHECK(rel[1] < rel[0]);
  CHECK(rel[2] < rel[1]);
}

TEST_CASE("Noether residual equals the Euler-Lagrange residual for unit translations") {
  // ξ = 1 and L_x = 0: 𝒟^α[λ L_d, 1] = -tD^α_b(λ L_d) = -R
  const auto p = noether_problem(1001);
  const auto tr = solve_z(p, solve_first_integral(p).x);
  const auto nr = noether_residual(p, tr, TransformationFamily::constant(1, 1.0));
  CHECK(nr.residual.linf == doctest::Approx(nr.el.linf()).epsilon(1e-9));
}
