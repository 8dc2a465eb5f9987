#include "herglotz/approx.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "herglotz/error.hpp"
#include "herglotz/frac_ops.hpp"
#include "herglotz/io.hpp"
#include "herglotz/parallel.hpp"

namespace herglotz {

namespace odeint = boost::numeric::odeint;

SampledFunction caputo_expansion(const SampledFunction& x, const ExpansionSpec& spec) {
  if (spec.N < 0) throw InvalidArgument("caputo_expansion: N must be non-negative");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw OrderError("caputo_expansion: alpha must lie in (0,1)");
  if (x.grid.a() != spec.a) throw InvalidArgument("caputo_expansion: grid must start at the expansion point");
  for (int k = 1; k <= spec.N; ++k)
    if (!x.has_deriv(k)) throw InvalidArgument("caputo_expansion: missing derivative row " + std::to_string(k));
  const double al = spec.alpha;
  const double xa = x.values.front();
  std::vector<double> coef(spec.N + 1);
  for (int k = 1; k <= spec.N; ++k) coef[k] = binom_frac(al, k) / gamma(k + 1 - al);
  const double c0 = gamma(1.0 - al);

  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double s = x.grid[i] - spec.a;
    double v = (x[i] - xa) * std::pow(s, -al) / c0;
    for (int k = 1; k <= spec.N; ++k) v += coef[k] * std::pow(s, k - al) * x.derivs[k - 1][i];
    out[i] = v;
  }
  return SampledFunction(x.grid, std::move(out));
}

ReducedLagrangian::ReducedLagrangian(LagrangianDef lag, ExpansionSpec spec, double x_a)
    : lag_(std::move(lag)), spec_(spec), x_a_(x_a) {
  if (lag_.dimension != 1) throw DimensionError("reduction supports a single dependent variable");
  if (spec_.N < 1) throw InvalidArgument("reduction needs N >= 1");
  if (!(spec_.alpha > 0.0 && spec_.alpha < 1.0)) throw OrderError("reduction: alpha must lie in (0,1)");
  c0_ = gamma(1.0 - spec_.alpha);
  coef_.assign(spec_.N + 1, 0.0);
  for (int k = 1; k <= spec_.N; ++k) coef_[k] = binom_frac(spec_.alpha, k) / gamma(k + 1 - spec_.alpha);
}

ReducedLagrangian ReducedLagrangian::classical(LagrangianDef lag) {
  if (lag.dimension != 1) throw DimensionError("reduction supports a single dependent variable");
  ReducedLagrangian r;
  r.lag_ = std::move(lag);
  r.spec_ = ExpansionSpec{1, 0.0, 1.0};
  r.classical_ = true;
  return r;
}

ReducedLagrangian build_reduced_lagrangian(const LagrangianDef& lag, const ExpansionSpec& spec, double x_a) {
  return ReducedLagrangian(lag, spec, x_a);
}

double ReducedLagrangian::operator()(double t, double x, double v, double z) const {
  const double xk[2] = {x, v};
  return value<double>(t, xk, z);
}

ReducedLagrangian::Derivs ReducedLagrangian::derivs(double t, double x, double v, double z) const {
  using D = Dual<double>;
  using DD = Dual<D>;
  // outer tangent: direction k, inner tangent: ẋ
  auto run = [&](int k) {
    auto var = [&](double val, int id) {
      return DD(D(val, id == 2 ? 1.0 : 0.0), D(id == k ? 1.0 : 0.0, 0.0));
    };
    const DD xk[2] = {var(x, 1), var(v, 2)};
    return value<DD>(var(t, 0), xk, var(z, 3));
  };
  Derivs d{};
  const DD rt = run(0), rx = run(1), rv = run(2), rz = run(3);
  d.L = rv.v.v;
  d.Lv = rv.v.d;
  d.Lt = rt.d.v;
  d.Lvt = rt.d.d;
  d.Lx = rx.d.v;
  d.Lvx = rx.d.d;
  d.Lvv = rv.d.d;
  d.Lz = rz.d.v;
  d.Lvz = rz.d.d;
  return d;
}

SolverSettings solver_settings_from_config(const ConfigFile& cfg, SolverSettings s) {
  if (cfg.has("solver.tol")) s.tol = parse_number_list(cfg.at("solver.tol")).at(0);
  if (cfg.has("solver.max_iter")) s.max_iter = static_cast<int>(parse_number_list(cfg.at("solver.max_iter")).at(0));
  if (cfg.has("solver.slope_range")) {
    std::string r = cfg.at("solver.slope_range");
    for (auto& ch : r)
      if (ch == ':') ch = ',';
    const auto v = parse_number_list(r);
    if (v.size() != 2 || !(v[0] < v[1])) throw InvalidArgument("solver.slope_range must be lo:hi with lo < hi");
    s.slope_lo = v[0];
    s.slope_hi = v[1];
  }
  if (!(s.tol > 0.0) || s.max_iter < 1) throw InvalidArgument("solver settings out of range");
  return s;
}

namespace {

using State = std::array<double, 3>;  // x, ẋ, z

struct Samples {
  std::vector<double> x, v, z;
};

double check_fixed_right(const HerglotzProblem& p) {
  if (p.dimension() != 1) throw DimensionError("solve supports a single dependent variable");
  if (p.free_right(0)) throw InvalidArgument("solve needs a fixed right boundary value");
  return *p.def.bc_right[0];
}

/// Integrates from a + h to b. With `keep` the node values are recorded.
double shoot(const ReducedLagrangian& red, const HerglotzProblem& p, const SolverSettings& s,
             double slope, Samples* keep) {
  const Grid& g = p.grid;
  const double h = g.step();
  const double xa = p.def.bc_left[0];
  auto rhs = [&](const State& y, State& dy, double t) {
    const auto d = red.derivs(t, y[0], y[1], y[2]);
    if (!(std::abs(d.Lvv) > 0.0)) throw InvalidArgument("reduced Lagrangian is degenerate (L_vv = 0)");
    dy[0] = y[1];
    dy[1] = (d.Lx + d.Lz * d.Lv - d.Lvt - d.Lvx * y[1] - d.Lvz * d.L) / d.Lvv;
    dy[2] = d.L;
  };

  const double t1 = g[1];
  State y{xa + slope * h, slope, 0.0};
  // z over the first cell: one trapezoid step from (a, x_a, slope, z_a)
  const double za = p.def.z_init;
  const double l0 = red(g.a(), xa, slope, za);
  const double l1 = red(t1, y[0], y[1], za + h * l0);
  y[2] = za + 0.5 * h * (l0 + l1);

  if (keep) {
    keep->x.assign(g.size(), 0.0);
    keep->v.assign(g.size(), 0.0);
    keep->z.assign(g.size(), 0.0);
    keep->x[0] = xa;
    keep->v[0] = slope;
    keep->z[0] = za;
  }
  std::vector<double> times(g.nodes().begin() + 1, g.nodes().end());
  auto stepper = odeint::make_controlled(s.atol, s.rtol, odeint::runge_kutta_dopri5<State>());
  std::size_t idx = 1;
  auto observe = [&](const State& st, double) {
    if (keep) {
      keep->x[idx] = st[0];
      keep->v[idx] = st[1];
      keep->z[idx] = st[2];
    }
    ++idx;
  };
  try {
    odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), 0.25 * h, observe);
  } catch (const odeint::odeint_error& e) {
    throw StiffnessError(std::string("step size control failed: ") + e.what());
  }
  if (!std::isfinite(y[0])) throw StiffnessError("integration diverged");
  return y[0];
}

}  // namespace

double terminal_mismatch(const ReducedLagrangian& red, const HerglotzProblem& p, const SolverSettings& s,
                         double slope) {
  const double xb = check_fixed_right(p);
  return shoot(red, p, s, slope, nullptr) - xb;
}

ShootingResult solve_reduced_herglotz(const ReducedLagrangian& red, const HerglotzProblem& p,
                                      const SolverSettings& s) {
  const double xb = check_fixed_right(p);
  if (!red.is_classical() && red.spec().N != 1) throw InvalidArgument("the shooting solver needs N = 1");
  if (s.scan_points < 2) throw InvalidArgument("bracket scan needs at least 2 points");

  // bracket scan; trials that fail count as missing
  const int m = s.scan_points;
  std::vector<double> slopes(m), F(m, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < m; ++i) slopes[i] = s.slope_lo + (s.slope_hi - s.slope_lo) * i / (m - 1);
  parallel_for(m, [&](std::ptrdiff_t i) {
    try {
      F[i] = shoot(red, p, s, slopes[i], nullptr) - xb;
    } catch (const Error&) {
    }
  });

  ShootingResult res{SampledFunction::zeros(p.grid), SampledFunction::zeros(p.grid),
                     SampledFunction::zeros(p.grid), SampledFunction::zeros(p.grid),
                     0.0, 0, {}, 0.0, 0.0, 0.0};
  double lo = 0, hi = 0, flo = 0, fhi = 0;
  bool found = false;
  for (int i = 0; i < m && !found; ++i) {
    if (!std::isfinite(F[i])) continue;
    res.history.emplace_back(slopes[i], F[i]);
    if (F[i] == 0.0) {
      lo = hi = slopes[i];
      flo = fhi = 0.0;
      found = true;
    } else if (i + 1 < m && std::isfinite(F[i + 1]) && (F[i] < 0) != (F[i + 1] < 0)) {
      lo = slopes[i];
      hi = slopes[i + 1];
      flo = F[i];
      fhi = F[i + 1];
      res.history.emplace_back(hi, fhi);
      found = true;
    }
  }
  if (!found) throw NoBracket("no sign change of x(b) - x_b over the slope scan", s.slope_lo, s.slope_hi);
  res.bracket_lo = lo;
  res.bracket_hi = hi;

  // Illinois variant of regula falsi: secant steps kept inside the bracket
  double root = std::abs(flo) <= std::abs(fhi) ? lo : hi;
  double froot = std::abs(flo) <= std::abs(fhi) ? flo : fhi;
  int side = 0;
  int it = 0;
  while (std::abs(froot) > s.tol && it < s.max_iter) {
    ++it;
    const double c = (lo * fhi - hi * flo) / (fhi - flo);
    const double fc = shoot(red, p, s, c, nullptr) - xb;
    res.history.emplace_back(c, fc);
    root = c;
    froot = fc;
    if (fc == 0.0) break;
    if ((fc < 0) == (flo < 0)) {
      lo = c;
      flo = fc;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = c;
      fhi = fc;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }

  Samples smp;
  const double xend = shoot(red, p, s, root, &smp);
  res.slope = root;
  res.iterations = it;
  res.mismatch = std::abs(xend - xb);
  res.x = SampledFunction(p.grid, std::move(smp.x));
  res.xdot = SampledFunction(p.grid, std::move(smp.v));
  res.z = SampledFunction(p.grid, std::move(smp.z));

  // λ_N from ∂L̄/∂z by the trapezoidal rule
  std::vector<double> lz(p.grid.size());
  for (std::size_t k = 0; k < lz.size(); ++k)
    lz[k] = red.derivs(p.grid[k], res.x[k], res.xdot[k], res.z[k]).Lz;
  auto cum = cumulative_trapezoid(lz, p.grid.step());
  for (auto& v : cum) v = std::exp(-v);
  res.lambda = SampledFunction(p.grid, std::move(cum));
  return res;
}

ReducedResidual reduced_el_residual(const ReducedLagrangian& red, const ShootingResult& r) {
  const Grid& g = r.x.grid;
  const std::size_t n = g.size();
  const double h = g.step();
  std::vector<double> q(n), lx(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto d = red.derivs(g[k], r.x[k], r.xdot[k], r.z[k]);
    q[k] = r.lambda[k] * d.Lv;
    lx[k] = r.lambda[k] * d.Lx;
  }
  ReducedResidual out;
  out.samples.assign(n, 0.0);
  // the ODE lives on [a+h, b]; keep the 5-point stencil inside it
  out.first = 3;
  out.last = n >= 3 ? n - 3 : 0;
  for (std::size_t k = out.first; k <= out.last && k + 2 < n; ++k) {
    const double dq = (q[k - 2] - 8.0 * q[k - 1] + 8.0 * q[k + 1] - q[k + 2]) / (12.0 * h);
    out.samples[k] = lx[k] - dq;
    out.linf = std::max(out.linf, std::abs(out.samples[k]));
  }
  return out;
}

Comparison emit_comparison(const ShootingResult& r, const std::optional<SampledFunction>& exact) {
  Comparison c;
  c.t.assign(r.x.grid.nodes().begin(), r.x.grid.nodes().end());
  c.numeric = r.x.values;
  if (exact) {
    if (!(exact->grid == r.x.grid)) throw GridMismatch("comparison: exact solution uses a different grid");
    c.exact = exact->values;
    c.abs_error.resize(c.t.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < c.t.size(); ++i) {
      c.abs_error[i] = std::abs(c.numeric[i] - (*c.exact)[i]);
      c.linf = std::max(c.linf, c.abs_error[i]);
      sq += c.abs_error[i] * c.abs_error[i];
    }
    c.l2 = std::sqrt(r.x.grid.step() * sq);
  }
  return c;
}

void Comparison::write_csv(std::ostream& out) const {
  if (exact) herglotz::write_csv(out, {"t", "x_numeric", "x_exact", "abs_error"}, {t, numeric, *exact, abs_error});
  else herglotz::write_csv(out, {"t", "x_numeric"}, {t, numeric});
}

}  // namespace herglotz
