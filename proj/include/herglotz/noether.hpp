#pragma once

// Fractional Noether machinery along sampled trajectories.
//
//   𝒟^α[f, g] = f · C aD^α_t g - g · tD^α_b f
//
// For a family x + s ξ(t, x) leaving z invariant, Σ_j 𝒟^{α_j}[λ ∂L/∂d_j, ξ_j]
// vanishes along Euler–Lagrange solutions. When L has no explicit x_j and
// ξ_j is constant this yields the constant of motion tI^{1-α_j}_b(λ ∂L/∂d_j).

#include <optional>
#include <string>
#include <vector>

#include "herglotz/expr.hpp"
#include "herglotz/herglotz.hpp"

namespace herglotz {

struct TransformationFamily {
  std::vector<Expr> generators;  // ξ_j(t, x), one per component
  std::vector<Expr> maps;        // optional h_j(t, x, s); empty when absent

  static TransformationFamily constant(int n, double c);
  /// `const:c`, or generator expressions separated by ';'.
  static TransformationFamily parse(const std::string& text, int n);
};

SampledFunction d_alpha_bracket(const SampledFunction& f, const SampledFunction& g, double alpha);

/// ξ_j evaluated along the trajectory.
std::vector<SampledFunction> generator_samples(const TransformationFamily& fam, const Trajectory& tr);

struct InvarianceRow {
  double s = 0.0;
  double ratio_linear = 0.0;               // max_t |z[x + sξ] - z[x]| / |s|
  std::optional<double> ratio_exact;       // same with x -> h(t, x, s)
};

struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  double scale = 1.0;      // max(1, ‖z‖∞)
  double threshold = 0.0;  // 1e-3 · scale
  bool invariant = false;  // judged on the smallest |s| (linear ratio)
  std::optional<bool> invariant_exact;
};

InvarianceReport invariance_check(const HerglotzProblem& p, const Trajectory& tr,
                                  const TransformationFamily& fam, const std::vector<double>& s_values);

struct NoetherReport {
  double h = 0.0;
  std::size_t trim = 2;
  ComponentResidual residual;  // Σ_j 𝒟^{α_j}[λ ∂L/∂d_j, ξ_j]
  ResidualReport el;           // the trajectory's own EL residual, for context
};

NoetherReport noether_residual(const HerglotzProblem& p, const Trajectory& tr, const TransformationFamily& fam);

struct ConservedQuantity {
  SampledFunction c;
  double flatness = 0.0;  // max |C - mean(C)| over nodes 0..n-1-trim
  double mean = 0.0;
  double c_linf = 0.0;
  std::size_t trim = 2;
  int component = 0;
};

/// Throws SymmetryViolation unless ∂L/∂x_j vanishes at probe points.
ConservedQuantity constant_of_motion(const HerglotzProblem& p, const Trajectory& tr, int j);

/// Euler–Lagrange solutions for L(t, d, z) with ∂L/∂x ≡ 0, constant ∂L/∂z
/// and ∂L/∂d free of z. Then λ ∂L/∂d = K (b-t)^{α-1} / Γ(α); d follows
/// pointwise, x = x_a + aI^α d, and K is fixed by x(b) = x_b. Needs α > 1/2.
struct FirstIntegralSolution {
  SampledFunction x;
  double K = 0.0;
  int iterations = 0;
  double mismatch = 0.0;
};

FirstIntegralSolution solve_first_integral(const HerglotzProblem& p, double tol = 1e-12, int max_iter = 50);

/// Whether solve_first_integral applies to p.
bool first_integral_applies(const HerglotzProblem& p);

}  // namespace herglotz
