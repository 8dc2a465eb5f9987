#include "herglotz/noether.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "herglotz/error.hpp"
#include "herglotz/frac_ops.hpp"
#include "herglotz/parallel.hpp"
#include "herglotz/special.hpp"

namespace herglotz {

namespace {

constexpr std::size_t kTrim = 2;

std::vector<SampledFunction> values_only(const std::vector<SampledFunction>& xs) {
  std::vector<SampledFunction> out;
  for (const auto& x : xs) out.emplace_back(x.grid, x.values);
  return out;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ∂L/∂d and ∂²L/∂d² for a single component, x and z held fixed.
std::pair<double, double> ld_and_ldd(const Expr& L, double t, double x, double d, double z) {
  using D = Dual<double>;
  using DD = Dual<D>;
  const DD xs[1] = {DD(x)};
  const DD ds[1] = {DD(D(d, 1.0), D(1.0, 0.0))};
  const DD r = evaluate(L, Args<DD>{DD(t), xs, ds, DD(z), DD(0.0)});
  return {r.v.d, r.d.d};
}

std::string first_integral_obstacle(const HerglotzProblem& p) {
  if (p.dimension() != 1) return "needs a single dependent variable";
  if (p.free_right(0)) return "needs a fixed right boundary value";
  const double al = p.order(0);
  if (!(al > 0.5 && al < 1.0)) return "needs an order in (1/2, 1) so that x(b) is finite";
  const Expr& L = p.lagrangian();
  std::mt19937 rng(20240607);
  std::uniform_real_distribution<double> ut(p.grid.a(), p.grid.b()), ud(0.2, 2.0), uz(-1.0, 1.0);
  std::optional<double> lz0;
  for (int i = 0; i < 5; ++i) {
    const double t = ut(rng), d = ud(rng), z = uz(rng);
    try {
      const auto pa = partials(L, EvalPoint{t, {0.5}, {d}, z});
      const auto pb = partials(L, EvalPoint{t, {1.5}, {d}, z + 0.5});
      if (std::abs(pa.dx(0)) > 1e-12) return "needs a Lagrangian without explicit x dependence";
      if (!lz0) lz0 = pa.dz();
      if (std::abs(pa.dz() - *lz0) > 1e-12 * (1.0 + std::abs(*lz0)) ||
          std::abs(pb.dz() - *lz0) > 1e-12 * (1.0 + std::abs(*lz0)))
        return "needs a constant dL/dz";
      if (std::abs(pa.dd(0, 1) - pb.dd(0, 1)) > 1e-12 * (1.0 + std::abs(pa.dd(0, 1))))
        return "needs dL/dd independent of z";
    } catch (const DomainError&) {
      return "Lagrangian is not defined at probe points";
    }
  }
  return {};
}

}  // namespace

TransformationFamily TransformationFamily::constant(int n, double c) {
  TransformationFamily f;
  f.generators.assign(n, Expr::constant(c));
  return f;
}

TransformationFamily TransformationFamily::parse(const std::string& text, int n) {
  if (text.rfind("const:", 0) == 0) {
    const auto v = parse_number_list(text.substr(6));
    if (v.size() != 1) throw InvalidArgument("bad generator spec '" + text + "'");
    return constant(n, v[0]);
  }
  TransformationFamily f;
  std::size_t start = 0;
  for (;;) {
    const auto semi = text.find(';', start);
    f.generators.push_back(herglotz::parse(text.substr(start, semi - start), VarSet::generator(n)));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (static_cast<int>(f.generators.size()) != n)
    throw DimensionError("need one generator per component (" + std::to_string(n) + ")");
  return f;
}

SampledFunction d_alpha_bracket(const SampledFunction& f, const SampledFunction& g, double alpha) {
  require_same_grid(f, g, "d_alpha_bracket");
  if (!(alpha > 0.0 && alpha < 1.0)) throw OrderError("d_alpha_bracket: alpha must lie in (0,1)");
  const SampledFunction cg = left_caputo_deriv(g, FractionalOrder(alpha));
  const SampledFunction rf = right_rl_differintegral(f, {alpha});
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * cg[i] - g[i] * rf[i];
  return SampledFunction(f.grid, std::move(out));
}

std::vector<SampledFunction> generator_samples(const TransformationFamily& fam, const Trajectory& tr) {
  const std::size_t m = tr.x.size();
  if (fam.generators.size() != m) throw DimensionError("need one generator per component");
  const Grid& g = tr.grid();
  std::vector<SampledFunction> out;
  std::vector<double> xs(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      for (std::size_t i = 0; i < m; ++i) xs[i] = tr.x[i][k];
      v[k] = evaluate(fam.generators[j], Args<double>{g[k], xs, {}, 0.0, 0.0});
    }
    out.emplace_back(g, std::move(v));
  }
  return out;
}

InvarianceReport invariance_check(const HerglotzProblem& p, const Trajectory& tr,
                                  const TransformationFamily& fam, const std::vector<double>& s_values) {
  if (s_values.empty()) throw InvalidArgument("invariance_check: no s values");
  const auto base_x = values_only(tr.x);
  const auto z0 = evaluate_trajectory(p, base_x).z.values;
  const auto xi = generator_samples(fam, tr);
  const bool exact = !fam.maps.empty();
  if (exact && fam.maps.size() != tr.x.size()) throw DimensionError("need one map per component");
  const Grid& g = p.grid;
  const std::size_t m = tr.x.size();

  InvarianceReport rep;
  rep.rows.resize(s_values.size());
  parallel_for(static_cast<std::ptrdiff_t>(s_values.size()), [&](std::ptrdiff_t r) {
    const double s = s_values[r];
    if (s == 0.0) throw InvalidArgument("invariance_check: s must be non-zero");
    InvarianceRow row;
    row.s = s;
    std::vector<SampledFunction> xs;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> v(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) v[k] = base_x[j][k] + s * xi[j][k];
      xs.emplace_back(g, std::move(v));
    }
    row.ratio_linear = max_gap(evaluate_trajectory(p, xs).z.values, z0) / std::abs(s);
    if (exact) {
      std::vector<double> pt(m);
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < g.size(); ++k) {
          for (std::size_t i = 0; i < m; ++i) pt[i] = base_x[i][k];
          xs[j].values[k] = evaluate(fam.maps[j], Args<double>{g[k], pt, {}, 0.0, s});
        }
      }
      row.ratio_exact = max_gap(evaluate_trajectory(p, xs).z.values, z0) / std::abs(s);
    }
    rep.rows[r] = row;
  });

  double zmax = 0.0;
  for (double v : z0) zmax = std::max(zmax, std::abs(v));
  rep.scale = std::max(1.0, zmax);
  rep.threshold = 1e-3 * rep.scale;
  const auto smallest = std::min_element(rep.rows.begin(), rep.rows.end(), [](const auto& a, const auto& b) {
    return std::abs(a.s) < std::abs(b.s);
  });
  rep.invariant = smallest->ratio_linear < rep.threshold;
  if (exact) rep.invariant_exact = *smallest->ratio_exact < rep.threshold;
  return rep;
}

NoetherReport noether_residual(const HerglotzProblem& p, const Trajectory& tr, const TransformationFamily& fam) {
  const auto parts = node_partials(p, tr);
  const auto xi = generator_samples(fam, tr);
  NoetherReport rep;
  rep.h = p.grid.step();
  rep.trim = kTrim;
  rep.residual.samples.assign(p.grid.size(), 0.0);
  for (int j = 0; j < p.dimension(); ++j) {
    const SampledFunction q = momentum(p, tr, parts, j);
    const SampledFunction br = d_alpha_bracket(q, xi[j], p.order(j));
    for (std::size_t k = 0; k < br.size(); ++k) rep.residual.samples[k] += br[k];
  }
  std::tie(rep.residual.linf, rep.residual.l2) = interior_norms(rep.residual.samples, kTrim, rep.h);
  rep.el = el_residual(p, tr);
  return rep;
}

ConservedQuantity constant_of_motion(const HerglotzProblem& p, const Trajectory& tr, int j) {
  if (j < 0 || j >= p.dimension()) throw DimensionError("constant_of_motion: component out of range");
  if (!(p.order(j) < 1.0)) throw OrderError("constant_of_motion: order must lie in (0,1)");
  const Expr& L = p.lagrangian();
  const std::size_t n = p.grid.size();
  std::mt19937 rng(97531);
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  std::uniform_real_distribution<double> shift(0.25, 1.0);
  for (int i = 0; i < 5; ++i) {
    const std::size_t k = node(rng);
    EvalPoint pt;
    pt.t = p.grid[k];
    for (const auto& x : tr.x) pt.x.push_back(x[k] + shift(rng));
    for (const auto& d : tr.dx) pt.d.push_back(d[k]);
    pt.z = tr.z[k];
    double lx = 0.0;
    try {
      lx = partials(L, pt).dx(j);
    } catch (const DomainError&) {
      lx = HUGE_VAL;
    }
    if (!(std::abs(lx) <= 1e-12))
      throw SymmetryViolation("Lagrangian depends explicitly on x" + std::to_string(j + 1) +
                              "; constant shifts are not a symmetry");
  }

  const auto parts = node_partials(p, tr);
  const SampledFunction q = momentum(p, tr, parts, j);
  ConservedQuantity cq{right_rl_differintegral(q, {-(1.0 - p.order(j))}), 0.0, 0.0, 0.0, kTrim, j};
  const std::size_t end = n - kTrim;
  double sum = 0.0;
  for (std::size_t k = 0; k < end; ++k) sum += cq.c[k];
  cq.mean = sum / static_cast<double>(end);
  for (std::size_t k = 0; k < end; ++k) cq.flatness = std::max(cq.flatness, std::abs(cq.c[k] - cq.mean));
  cq.c_linf = cq.c.linf();
  return cq;
}

bool first_integral_applies(const HerglotzProblem& p) { return first_integral_obstacle(p).empty(); }

FirstIntegralSolution solve_first_integral(const HerglotzProblem& p, double tol, int max_iter) {
  if (const auto why = first_integral_obstacle(p); !why.empty())
    throw SymmetryViolation("first-integral solver " + why);
  const Expr& L = p.lagrangian();
  const double al = p.order(0);
  const double a = p.grid.a(), b = p.grid.b();
  const double xa = p.def.bc_left[0], xb = *p.def.bc_right[0];
  const double ga = gamma(al);
  const double lz = partials(L, EvalPoint{a, {xa}, {1.0}, p.def.z_init}).dz();

  // d at τ with b - τ = bm: solve ∂L/∂d = K (b-τ)^{α-1} / (Γ(α) λ(τ))
  auto d_at = [&](double tau, double bm, double K) {
    const double target = K * std::pow(bm, al - 1.0) / ga * std::exp(lz * (tau - a));
    double d = 0.0;
    for (int it = 0; it < 60; ++it) {
      const auto [g, gp] = ld_and_ldd(L, tau, xa, d, 0.0);
      const double f = g - target;
      if (std::abs(f) <= 1e-14 * (1.0 + std::abs(target))) return d;
      if (gp == 0.0) throw Error("first-integral solver: dL/dd is not invertible");
      d -= f / gp;
    }
    throw Error("first-integral solver: Newton iteration for d did not converge");
  };

  auto x_at = [&](double t, double K) {
    if (t <= a) return xa;
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [&](double tau, double tauc) {
      const double tm = tauc > 0.0 ? tauc : t - tau;  // t - τ
      const double bm = (b - t) + tm;                // b - τ
      return std::pow(tm, al - 1.0) * d_at(tau, bm, K);
    };
    return xa + ts.integrate(f, a, t, 1e-13) / ga;
  };

  FirstIntegralSolution sol{SampledFunction::zeros(p.grid), 0.0, 0, 0.0};
  double k0 = 0.0, k1 = 1.0;
  double f0 = x_at(b, k0) - xb, f1 = x_at(b, k1) - xb;
  int it = 0;
  while (std::abs(f1) > tol * (1.0 + std::abs(xb)) && it < max_iter) {
    if (f1 == f0) throw Error("first-integral solver: secant step stalled");
    const double k2 = k1 - f1 * (k1 - k0) / (f1 - f0);
    k0 = k1;
    f0 = f1;
    k1 = k2;
    f1 = x_at(b, k1) - xb;
    ++it;
  }
  sol.K = k1;
  sol.iterations = it;
  sol.mismatch = std::abs(f1);

  std::vector<double> x(p.grid.size());
  parallel_for(static_cast<std::ptrdiff_t>(x.size()), [&](std::ptrdiff_t k) { x[k] = x_at(p.grid[k], k1); });
  x.front() = xa;
  sol.x = SampledFunction(p.grid, std::move(x));
  return sol;
}

}  // namespace herglotz
