#pragma once

// Truncated expansion of the Caputo derivative and the classical Herglotz
// problem it induces.
//
//   C aD^α x(t) ≈ (x(t) - x(a)) (t-a)^{-α} / Γ(1-α)
//               + Σ_{k=1}^N (α choose k) (t-a)^{k-α} / Γ(k+1-α) x^{(k)}(t)
//
// With N = 1 the substituted Lagrangian L̄(t, x, ẋ, z) yields a second order
// ODE, solved here by shooting on the initial slope.

#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "herglotz/dual.hpp"
#include "herglotz/expr.hpp"
#include "herglotz/grid.hpp"
#include "herglotz/problems.hpp"
#include "herglotz/special.hpp"

namespace herglotz {

struct ExpansionSpec {
  int N = 1;
  double a = 0.0;
  double alpha = 0.5;
};

/// Needs derivative rows 1..N. The value at t = a is 0.
SampledFunction caputo_expansion(const SampledFunction& x, const ExpansionSpec& spec);

class ReducedLagrangian {
public:
  /// d1 replaced by the truncated expansion around x_a = x(a).
  ReducedLagrangian(LagrangianDef lag, ExpansionSpec spec, double x_a);
  /// d1 replaced by ẋ.
  static ReducedLagrangian classical(LagrangianDef lag);

  bool is_classical() const noexcept { return classical_; }
  const LagrangianDef& lagrangian() const noexcept { return lag_; }
  const ExpansionSpec& spec() const noexcept { return spec_; }
  double x_a() const noexcept { return x_a_; }

  /// Expansion of d1 from x, ẋ, ..., x^{(N)}; zero at t <= a.
  template <class T>
  T dbar(const T& t, std::span<const T> xk) const {
    using std::pow;
    if (classical_) return xk[1];
    const double s = primal(t) - spec_.a;
    if (!(s > 0.0)) return T(0.0);
    const T dt = t - spec_.a;
    const double al = spec_.alpha;
    T out = (xk[0] - x_a_) * pow(dt, -al) / c0_;
    for (int k = 1; k <= spec_.N; ++k) out = out + coef_[k] * pow(dt, k - al) * xk[k];
    return out;
  }

  template <class T>
  T value(const T& t, std::span<const T> xk, const T& z) const {
    const T x1[1] = {xk[0]};
    const T d1[1] = {dbar(t, xk)};
    return evaluate(lag_.expr, Args<T>{t, x1, d1, z, T(0.0)});
  }

  /// N = 1 convenience.
  double operator()(double t, double x, double v, double z) const;

  struct Derivs {
    double L, Lt, Lx, Lv, Lz, Lvt, Lvx, Lvv, Lvz;
  };
  /// First partials and the mixed partials with respect to ẋ (N = 1).
  Derivs derivs(double t, double x, double v, double z) const;

private:
  ReducedLagrangian() = default;

  LagrangianDef lag_;
  ExpansionSpec spec_;
  double x_a_ = 0.0;
  bool classical_ = false;
  double c0_ = 1.0;          // Γ(1-α)
  std::vector<double> coef_; // (α choose k) / Γ(k+1-α)
};

ReducedLagrangian build_reduced_lagrangian(const LagrangianDef& lag, const ExpansionSpec& spec, double x_a = 0.0);

struct SolverSettings {
  double tol = 1e-8;
  int max_iter = 100;
  double slope_lo = -10.0;
  double slope_hi = 10.0;
  int scan_points = 41;
  double atol = 1e-12;
  double rtol = 1e-10;
};

/// Reads solver.tol, solver.max_iter and solver.slope_range ("lo:hi").
SolverSettings solver_settings_from_config(const ConfigFile& cfg, SolverSettings base = {});

struct ShootingResult {
  SampledFunction x;
  SampledFunction xdot;
  SampledFunction z;
  SampledFunction lambda;
  double slope = 0.0;
  int iterations = 0;
  std::vector<std::pair<double, double>> history;  // (slope, x(b) - x_b)
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double mismatch = 0.0;  // |x(b) - x_b|
};

/// x(b) - x_b for a given initial slope.
double terminal_mismatch(const ReducedLagrangian& red, const HerglotzProblem& p,
                         const SolverSettings& s, double slope);

/// N = 1 reduced Euler–Lagrange equation by bracket scan + secant shooting.
/// Integration starts at a + h with x = x_a + slope·h.
ShootingResult solve_reduced_herglotz(const ReducedLagrangian& red, const HerglotzProblem& p,
                                      const SolverSettings& s = {});

/// λ L̄_x - d/dt(λ L̄_ẋ) along the solution (fourth order differences).
/// Nodes closer than 2 to either end of [a+h, b] are excluded from linf.
struct ReducedResidual {
  std::vector<double> samples;
  std::size_t first = 0;
  std::size_t last = 0;
  double linf = 0.0;
};
ReducedResidual reduced_el_residual(const ReducedLagrangian& red, const ShootingResult& r);

struct Comparison {
  std::vector<double> t;
  std::vector<double> numeric;
  std::optional<std::vector<double>> exact;
  std::vector<double> abs_error;
  double linf = 0.0;
  double l2 = 0.0;

  /// Columns t, x_numeric[, x_exact, abs_error].
  void write_csv(std::ostream& out) const;
};

Comparison emit_comparison(const ShootingResult& r, const std::optional<SampledFunction>& exact);

}  // namespace herglotz
