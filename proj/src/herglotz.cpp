#include "herglotz/herglotz.hpp"

#include <algorithm>
#include <cmath>

#include "herglotz/error.hpp"
#include "herglotz/frac_ops.hpp"
#include "herglotz/parallel.hpp"

namespace herglotz {

namespace {

constexpr std::size_t kTrim = 2;

void check_components(const HerglotzProblem& p, const std::vector<SampledFunction>& x, const char* what) {
  if (static_cast<int>(x.size()) != p.dimension())
    throw DimensionError(std::string(what) + ": expected " + std::to_string(p.dimension()) +
                         " component(s), got " + std::to_string(x.size()));
  for (const auto& xi : x)
    if (!(xi.grid == p.grid)) throw GridMismatch(std::string(what) + ": trajectory grid differs from problem grid");
}

// matches the default terminal tolerance of the shooting solver
bool close(double v, double target) { return std::abs(v - target) <= 1e-8 * (1.0 + std::abs(target)); }

void check_boundary(const HerglotzProblem& p, const std::vector<SampledFunction>& x) {
  for (int j = 0; j < p.dimension(); ++j) {
    const auto& xj = x[j].values;
    if (!close(xj.front(), p.def.bc_left[j]))
      throw BoundaryError("x" + std::to_string(j + 1) + "(a) does not match the left boundary value");
    if (const auto& r = p.def.bc_right[j]; r && !close(xj.back(), *r))
      throw BoundaryError("x" + std::to_string(j + 1) + "(b) does not match the right boundary value");
  }
}

std::vector<double> integrate_z(const HerglotzProblem& p, const std::vector<SampledFunction>& x,
                                const std::vector<SampledFunction>& dx) {
  const Grid& g = p.grid;
  const std::size_t n = g.size();
  const int m = p.dimension();
  const double h = g.step();
  const Expr& L = p.lagrangian();

  std::vector<double> z(n);
  z[0] = p.def.z_init;
  std::vector<double> xa(m), da(m), xm(m), dm(m), xb(m), db(m);
  auto f = [&](double t, const std::vector<double>& xs, const std::vector<double>& ds, double zv) {
    return evaluate(L, Args<double>{t, xs, ds, zv, 0.0});
  };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (int j = 0; j < m; ++j) {
      xa[j] = x[j][k];
      xb[j] = x[j][k + 1];
      da[j] = dx[j][k];
      db[j] = dx[j][k + 1];
      xm[j] = 0.5 * (xa[j] + xb[j]);
      dm[j] = 0.5 * (da[j] + db[j]);
    }
    const double t0 = g[k], t1 = g[k + 1], tm = 0.5 * (t0 + t1);
    const double k1 = f(t0, xa, da, z[k]);
    const double k2 = f(tm, xm, dm, z[k] + 0.5 * h * k1);
    const double k3 = f(tm, xm, dm, z[k] + 0.5 * h * k2);
    const double k4 = f(t1, xb, db, z[k] + h * k3);
    z[k + 1] = z[k] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return z;
}

EvalPoint point_at(const Trajectory& tr, std::size_t k) {
  EvalPoint pt;
  pt.t = tr.grid()[k];
  for (const auto& xi : tr.x) pt.x.push_back(xi[k]);
  for (const auto& di : tr.dx) pt.d.push_back(di[k]);
  pt.z = tr.z[k];
  return pt;
}

void check_higher_order(const HerglotzProblem& p) {
  for (int j = 0; j < p.dimension(); ++j)
    if (p.order_index(j) > 2)
      throw OrderError("higher-order conditions support orders below 2 only");
}

}  // namespace

Trajectory evaluate_trajectory(const HerglotzProblem& p, const std::vector<SampledFunction>& x) {
  check_components(p, x, "solve_z");
  std::vector<SampledFunction> dx;
  dx.reserve(x.size());
  for (int j = 0; j < p.dimension(); ++j)
    dx.push_back(left_caputo_deriv(x[j], FractionalOrder(p.order(j))));
  auto z = integrate_z(p, x, dx);
  Trajectory tr{x, std::move(dx), SampledFunction(p.grid, std::move(z)), SampledFunction::zeros(p.grid)};
  tr.lambda = compute_lambda(p, tr);
  return tr;
}

Trajectory solve_z(const HerglotzProblem& p, const std::vector<SampledFunction>& x) {
  check_components(p, x, "solve_z");
  check_boundary(p, x);
  return evaluate_trajectory(p, x);
}

Trajectory solve_z(const HerglotzProblem& p, const SampledFunction& x) {
  return solve_z(p, std::vector<SampledFunction>{x});
}

SampledFunction compute_lambda(const HerglotzProblem& p, const Trajectory& tr) {
  const std::size_t n = p.grid.size();
  if (!p.lagrangian().uses(VarKind::Z)) return SampledFunction::constant(p.grid, 1.0);
  std::vector<double> lz(n);
  parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t k) {
    lz[k] = partials(p.lagrangian(), point_at(tr, k)).dz();
  });
  auto cum = cumulative_trapezoid(lz, p.grid.step());
  for (auto& v : cum) v = std::exp(-v);
  cum[0] = 1.0;
  return SampledFunction(p.grid, std::move(cum));
}

std::vector<Partials> node_partials(const HerglotzProblem& p, const Trajectory& tr) {
  std::vector<Partials> out(p.grid.size());
  parallel_for(static_cast<std::ptrdiff_t>(out.size()), [&](std::ptrdiff_t k) {
    out[k] = partials(p.lagrangian(), point_at(tr, k));
  });
  return out;
}

SampledFunction momentum(const HerglotzProblem& p, const Trajectory& tr,
                         const std::vector<Partials>& parts, int j) {
  const int m = p.dimension();
  std::vector<double> q(parts.size());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = tr.lambda[k] * parts[k].dd(j, m);
  return SampledFunction(p.grid, std::move(q));
}

double ResidualReport::linf() const {
  double m = 0.0;
  for (const auto& c : components) m = std::max(m, c.linf);
  return m;
}

double ResidualReport::l2() const {
  double s = 0.0;
  for (const auto& c : components) s += c.l2 * c.l2;
  return std::sqrt(s);
}

std::pair<double, double> interior_norms(const std::vector<double>& v, std::size_t trim, double h) {
  double linf = 0.0, sq = 0.0;
  for (std::size_t k = trim; k + trim < v.size(); ++k) {
    linf = std::max(linf, std::abs(v[k]));
    sq += v[k] * v[k];
  }
  return {linf, std::sqrt(h * sq)};
}

ResidualReport el_residual(const HerglotzProblem& p, const Trajectory& tr) {
  const int m = p.dimension();
  const auto parts = node_partials(p, tr);
  ResidualReport rep;
  rep.h = p.grid.step();
  rep.trim = kTrim;
  for (int j = 0; j < m; ++j) {
    const SampledFunction q = momentum(p, tr, parts, j);
    const SampledFunction rq = right_rl_differintegral(q, {p.order(j)});
    ComponentResidual c;
    c.samples.resize(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) c.samples[k] = tr.lambda[k] * parts[k].dx(j) + rq[k];
    std::tie(c.linf, c.l2) = interior_norms(c.samples, kTrim, rep.h);
    if (p.free_right(j) && p.order(j) < 1.0)
      c.transversality = right_rl_differintegral(q, {p.order(j) - 1.0}).values.back();
    rep.components.push_back(std::move(c));
  }
  return rep;
}

std::vector<double> transversality_residual(const HerglotzProblem& p, const Trajectory& tr) {
  if (!p.any_free_right()) throw NoFreeEndpoint("transversality needs at least one free right endpoint");
  const auto parts = node_partials(p, tr);
  std::vector<double> out;
  for (int j = 0; j < p.dimension(); ++j) {
    if (!p.free_right(j)) continue;
    const SampledFunction q = momentum(p, tr, parts, j);
    out.push_back(right_rl_differintegral(q, {-(1.0 - p.order(j))}).values.back());
  }
  return out;
}

ResidualReport higher_order_el_residual(const HerglotzProblem& p, const Trajectory& tr) {
  check_higher_order(p);
  return el_residual(p, tr);
}

HigherOrderTransversality higher_order_transversality(const HerglotzProblem& p, const Trajectory& tr) {
  check_higher_order(p);
  if (!p.any_free_right()) throw NoFreeEndpoint("transversality needs at least one free right endpoint");
  const auto parts = node_partials(p, tr);
  HigherOrderTransversality out;
  for (int c = 0; c < p.dimension(); ++c) {
    if (!p.free_right(c)) continue;
    const SampledFunction q = momentum(p, tr, parts, c);
    const int i = p.order_index(c);
    std::vector<double> row;
    for (int j = 0; j < i; ++j)
      row.push_back(right_rl_differintegral(q, {p.order(c) + j - i}).values.back());
    out.values.push_back(std::move(row));
    out.components.push_back(c);
  }
  return out;
}

double functional_value(const HerglotzProblem& p, const std::vector<SampledFunction>& x) {
  return solve_z(p, x).z.values.back();
}

double functional_value(const HerglotzProblem& p, const SampledFunction& x) {
  return functional_value(p, std::vector<SampledFunction>{x});
}

double VariationReport::relative_gap() const {
  const double scale = std::max(std::abs(theta_b), std::abs(theta_b_fd));
  return scale == 0.0 ? 0.0 : std::abs(theta_b - theta_b_fd) / scale;
}

VariationReport directional_derivative(const HerglotzProblem& p, const std::vector<SampledFunction>& x,
                                       const std::vector<SampledFunction>& eta) {
  check_components(p, eta, "directional_derivative");
  for (int j = 0; j < p.dimension(); ++j) {
    if (eta[j].values.front() != 0.0) throw BoundaryError("variation must vanish at t = a");
    if (!p.free_right(j) && eta[j].values.back() != 0.0)
      throw BoundaryError("variation must vanish at t = b for a fixed endpoint");
  }
  // values only, so the perturbed runs below use the same Caputo scheme
  std::vector<SampledFunction> xv;
  for (const auto& xi : x) xv.emplace_back(xi.grid, xi.values);
  const Trajectory tr = solve_z(p, xv);
  const int m = p.dimension();
  const std::size_t n = p.grid.size();
  const double h = p.grid.step();

  std::vector<SampledFunction> deta;
  for (int j = 0; j < m; ++j)
    deta.push_back(left_caputo_deriv(SampledFunction(p.grid, eta[j].values), FractionalOrder(p.order(j))));
  const auto parts = node_partials(p, tr);
  std::vector<double> integrand(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += parts[k].dx(j) * eta[j][k] + parts[k].dd(j, m) * deta[j][k];
    integrand[k] = tr.lambda[k] * s;
  }
  auto theta = cumulative_trapezoid(integrand, h);
  for (std::size_t k = 0; k < n; ++k) theta[k] /= tr.lambda[k];
  theta[0] = 0.0;

  VariationReport rep{SampledFunction(p.grid, theta), theta.back(), 0.0, 0.0};

  double scale = 1.0;
  for (const auto& xi : x) scale = std::max(scale, xi.linf());
  rep.epsilon = 1e-5 * scale;
  auto shifted = [&](double e) {
    std::vector<SampledFunction> xs;
    for (int j = 0; j < m; ++j) {
      std::vector<double> v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = x[j][k] + e * eta[j][k];
      xs.emplace_back(p.grid, std::move(v));
    }
    return evaluate_trajectory(p, xs).z.values.back();
  };
  rep.theta_b_fd = (shifted(rep.epsilon) - shifted(-rep.epsilon)) / (2.0 * rep.epsilon);
  return rep;
}

VariationReport directional_derivative(const HerglotzProblem& p, const SampledFunction& x,
                                       const SampledFunction& eta) {
  return directional_derivative(p, std::vector<SampledFunction>{x}, std::vector<SampledFunction>{eta});
}

}  // namespace herglotz
