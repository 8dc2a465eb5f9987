#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "herglotz/error.hpp"
#include "herglotz/herglotz.hpp"

using namespace herglotz;

namespace {

SampledFunction power(const Grid& g, double p) {
  return SampledFunction::from(g, [p](double t) { return std::pow(t, p); });
}

HerglotzProblem builtin(const std::string& name, std::size_t n, const ProblemParams& params = {}) {
  return HerglotzProblem(builtin_problem(name, params), n);
}

HerglotzProblem with_free_right(const std::string& name, std::size_t n) {
  auto def = builtin_problem(name);
  def.bc_right = {std::nullopt};
  return HerglotzProblem(def, n);
}

double max_abs_diff(const SampledFunction& f, double (*ref)(double)) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - ref(f.grid[i])));
  return m;
}

}  // namespace

TEST_CASE("functional value of the first example") {
  const auto p = builtin("example1", 1001);
  CHECK(std::abs(functional_value(p, power(p.grid, 2.0))) <= 1e-6);
  CHECK(functional_value(p, power(p.grid, 1.0)) >= 1e-3);
}

TEST_CASE("z along a z-independent Lagrangian is the running integral of L") {
  const auto p = builtin("example1", 2001);
  const auto tr = solve_z(p, power(p.grid, 1.0));
  // x = t: d = t^{0.5}/Γ(1.5), so z(1) = ∫ (d - c t^{1.5})^2
  const double c1 = 1.0 / std::tgamma(1.5), c2 = 2.0 / std::tgamma(2.5);
  const double exact = c1 * c1 / 2.0 - 2.0 * c1 * c2 / 3.0 + c2 * c2 / 4.0;
  CHECK(tr.z[tr.z.size() - 1] == doctest::Approx(exact).epsilon(1e-3));
  for (double v : tr.lambda.values) CHECK(v == 1.0);
}

TEST_CASE("integrating factor closed forms") {
  const auto p2 = builtin("example2", 1001);
  const auto tr2 = solve_z(p2, power(p2.grid, 2.0));
  CHECK(max_abs_diff(tr2.lambda, [](double t) { return std::exp(-t); }) <= 1e-8);

  const auto pn = builtin("noether_gamma", 1001);
  const auto trn = solve_z(pn, power(pn.grid, 2.0));
  CHECK(max_abs_diff(trn.lambda, [](double t) { return std::exp(0.1 * t); }) <= 1e-8);
}

TEST_CASE("z solves a linear Herglotz equation") {
  // L = z + 1, z(0)=0 gives z = e^t - 1
  ProblemDef def;
  def.name = "linear";
  def.lagrangian = LagrangianDef::from_text("z + 1", 1, {0.5});
  def.bc_left = {0.0};
  def.bc_right = {std::nullopt};
  HerglotzProblem p(def, 201);
  const auto tr = solve_z(p, SampledFunction::zeros(p.grid));
  CHECK(max_abs_diff(tr.z, [](double t) { return std::exp(t) - 1.0; }) <= 1e-9);
}

TEST_CASE("boundary data is enforced") {
  const auto p = builtin("example1", 101);
  const auto shifted = SampledFunction::from(p.grid, [](double t) { return t * t + 0.1; });
  CHECK_THROWS_AS(solve_z(p, shifted), BoundaryError);
  const auto short_right = SampledFunction::from(p.grid, [](double t) { return 0.9 * t; });
  CHECK_THROWS_AS(solve_z(p, short_right), BoundaryError);
  CHECK_NOTHROW(evaluate_trajectory(p, {short_right}));
  CHECK_THROWS_AS(solve_z(p, SampledFunction::zeros(Grid(0.0, 1.0, 50))), GridMismatch);
}

TEST_CASE("Euler-Lagrange residual separates the minimiser from a competitor") {
  for (const char* name : {"example1", "example2"}) {
    const auto p = builtin(name, 2001);
    const auto good = el_residual(p, solve_z(p, power(p.grid, 2.0)));
    INFO(name);
    CHECK(good.linf() <= 5e-2);
    CHECK(good.components.size() == 1);
    CHECK_FALSE(good.stated_without_proof);
  }
  const auto p = builtin("example1", 2001);
  const auto good = el_residual(p, solve_z(p, power(p.grid, 2.0)));
  const auto bad = el_residual(p, solve_z(p, power(p.grid, 1.0)));
  CHECK(bad.linf() >= 10.0 * good.linf());
}

TEST_CASE("residual shrinks under refinement on the minimiser") {
  double prev = 1e300;
  for (std::size_t n : {501, 1001, 2001}) {
    const auto p = builtin("example1", n);
    const double r = el_residual(p, solve_z(p, power(p.grid, 2.0))).linf();
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("momentum on the competitor matches its closed form") {
  const auto p = builtin("example1", 1001);
  const auto tr = solve_z(p, power(p.grid, 1.0));
  const auto parts = node_partials(p, tr);
  const auto m = momentum(p, tr, parts, 0);
  const double c1 = 1.0 / std::tgamma(1.5), c2 = 2.0 / std::tgamma(2.5);
  for (std::size_t i = 0; i < m.size(); i += 50) {
    const double t = p.grid[i];
    CHECK(std::abs(m[i] - 2.0 * (c1 * std::sqrt(t) - c2 * std::pow(t, 1.5))) <= 2e-2);
  }
}

TEST_CASE("transversality is evaluated at the free endpoint") {
  const auto p = with_free_right("example1", 2001);
  CHECK(p.any_free_right());
  const auto tr = evaluate_trajectory(p, {power(p.grid, 2.0)});
  const auto v = transversality_residual(p, tr);
  REQUIRE(v.size() == 1);
  CHECK(std::abs(v[0]) <= 1e-2);
  const auto rep = el_residual(p, tr);
  REQUIRE(rep.components[0].transversality.has_value());
  CHECK(*rep.components[0].transversality == v[0]);

  // A bounded integrand gives an empty right integral at b.
  const auto tr1 = evaluate_trajectory(p, {power(p.grid, 1.0)});
  CHECK(transversality_residual(p, tr1)[0] == 0.0);

  const auto fixed = builtin("example1", 101);
  CHECK_THROWS_AS(transversality_residual(fixed, solve_z(fixed, power(fixed.grid, 2.0))), NoFreeEndpoint);
}

TEST_CASE("higher-order residual against a series oracle") {
  // L = d1^2/2 with α = 1.5 and x = t^3: d = 6 t^{1.5}/Γ(2.5), λ = 1, and
  // R = tD^{1.5}_1 d = c Σ_k C(1.5,k)(-1)^k Γ(k+1)/Γ(k-0.5) (1-t)^{k-1.5}.
  ProblemDef def;
  def.name = "cubic";
  def.lagrangian = LagrangianDef::from_text("pow(d1, 2) / 2", 1, {1.5});
  def.bc_left = {0.0};
  def.bc_right = {1.0};
  HerglotzProblem p(def, 2001);
  CHECK(p.higher_order());
  CHECK(p.order_index(0) == 2);
  const auto tr = solve_z(p, power(p.grid, 3.0));
  const auto rep = higher_order_el_residual(p, tr);
  const double c = 6.0 / std::tgamma(2.5);
  auto oracle = [c](double t) {
    double sum = 0.0, binom = 1.0;
    for (int k = 0; k < 4000; ++k) {
      sum += binom * (k % 2 ? -1.0 : 1.0) * std::tgamma(k + 1.0) / std::tgamma(k - 0.5) *
             std::pow(1.0 - t, k - 1.5);
      binom *= (1.5 - k) / (k + 1.0);
    }
    return c * sum;
  };
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < p.grid.size(); i += 20) {
    const double t = p.grid[i];
    if (t < 0.05 || t > 0.95) continue;
    const double o = oracle(t);
    scale = std::max(scale, std::abs(o));
    worst = std::max(worst, std::abs(rep.components[0].samples[i] - o));
  }
  CHECK(worst <= 5e-2 * scale);
}

TEST_CASE("higher-order transversality rows") {
  ProblemDef def;
  def.name = "cubic_free";
  def.lagrangian = LagrangianDef::from_text("pow(d1, 2) / 2", 1, {1.5});
  def.bc_left = {0.0};
  def.bc_right = {std::nullopt};
  std::vector<double> last;
  for (std::size_t n : {501, 2001}) {
    HerglotzProblem p(def, n);
    const auto rep = higher_order_transversality(p, evaluate_trajectory(p, {power(p.grid, 3.0)}));
    CHECK(rep.stated_without_proof);
    REQUIRE(rep.values.size() == 1);
    REQUIRE(rep.values[0].size() == 2);
    CHECK(rep.values[0][0] == 0.0);
    last.push_back(std::abs(rep.values[0][1]));
  }
  // The order-1/2 row diverges like (b-t)^{-1/2} at b since the momentum does not vanish there.
  CHECK(last[1] > 1.5 * last[0]);
}

TEST_CASE("variation formula on the minimiser") {
  const auto p = builtin("example1", 2001);
  const auto x = power(p.grid, 2.0);
  for (int k = 1; k <= 5; ++k) {
    const auto eta = SampledFunction::from(p.grid, [k](double t) { return std::pow(t, k) * (1.0 - t); });
    const auto v = directional_derivative(p, x, eta);
    INFO(k);
    CHECK(std::abs(v.theta_b) <= 1e-4);
    CHECK(std::abs(v.theta_b_fd) <= 1e-4);
  }
}

TEST_CASE("variation formula agrees with finite differences on random pairs") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = builtin(trial % 2 ? "example2" : "example1", 1001);
    const double c1 = u(rng), c2 = u(rng), e1 = u(rng), e2 = u(rng), e3 = u(rng);
    const auto x = SampledFunction::from(p.grid, [&](double t) { return t * t + t * (1 - t) * (c1 + c2 * t); });
    const auto eta = SampledFunction::from(p.grid, [&](double t) { return t * (1 - t) * (e1 + e2 * t + e3 * t * t); });
    const auto v = directional_derivative(p, x, eta);
    INFO(trial);
    CHECK(v.relative_gap() <= 1e-4);
  }
}

TEST_CASE("variations must vanish at fixed ends") {
  const auto p = builtin("example1", 101);
  const auto x = power(p.grid, 2.0);
  CHECK_THROWS_AS(directional_derivative(p, x, SampledFunction::constant(p.grid, 1.0)), BoundaryError);
  CHECK_THROWS_AS(directional_derivative(p, x, power(p.grid, 1.0)), BoundaryError);
  const auto q = with_free_right("example1", 101);
  CHECK_NOTHROW(directional_derivative(q, x, power(q.grid, 1.0)));
}

TEST_CASE("interior norms") {
  const auto [linf, l2] = interior_norms({100.0, 100.0, 1.0, -3.0, 2.0, 100.0, 100.0}, 2, 0.5);
  CHECK(linf == 3.0);
  CHECK(l2 == doctest::Approx(std::sqrt(0.5 * 14.0)));
}
