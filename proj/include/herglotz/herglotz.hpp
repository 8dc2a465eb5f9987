#pragma once

// Herglotz functional z[x; t]: ż = L(t, x, C aD^α x, z), z(a) = z_a.
//
// Given a sampled trajectory x, solve_z integrates z on the grid and computes
// the integrating factor λ(t) = exp(-∫_a^t ∂L/∂z). The residual and variation
// routines evaluate stationarity conditions along that trajectory.

#include <optional>
#include <vector>

#include "herglotz/expr.hpp"
#include "herglotz/grid.hpp"
#include "herglotz/problems.hpp"

namespace herglotz {

struct Trajectory {
  std::vector<SampledFunction> x;
  std::vector<SampledFunction> dx;  // left Caputo derivative of each component
  SampledFunction z;
  SampledFunction lambda;

  const Grid& grid() const noexcept { return z.grid; }
};

/// Checks boundary data, then integrates z (classical RK4, arguments
/// linearly interpolated at half steps) and computes λ.
Trajectory solve_z(const HerglotzProblem& p, const std::vector<SampledFunction>& x);
Trajectory solve_z(const HerglotzProblem& p, const SampledFunction& x);

/// solve_z without the boundary check (perturbed trajectories, free ends).
Trajectory evaluate_trajectory(const HerglotzProblem& p, const std::vector<SampledFunction>& x);

SampledFunction compute_lambda(const HerglotzProblem& p, const Trajectory& tr);

/// Value and gradient of L at every grid node along the trajectory.
std::vector<Partials> node_partials(const HerglotzProblem& p, const Trajectory& tr);

/// λ·∂L/∂d_j sampled on the grid.
SampledFunction momentum(const HerglotzProblem& p, const Trajectory& tr,
                         const std::vector<Partials>& parts, int j);

struct ComponentResidual {
  std::vector<double> samples;  // every node; norms use the interior only
  double linf = 0.0;
  double l2 = 0.0;
  std::optional<double> transversality;  // set for free right endpoints
};

struct ResidualReport {
  double h = 0.0;
  std::size_t trim = 2;
  std::vector<ComponentResidual> components;
  bool stated_without_proof = false;

  double linf() const;
  double l2() const;
};

/// Max and discrete L2 norm over nodes [trim, n-1-trim].
std::pair<double, double> interior_norms(const std::vector<double>& v, std::size_t trim, double h);

/// R_j = λ ∂L/∂x_j + tD^{α_j}_b(λ ∂L/∂d_j).
ResidualReport el_residual(const HerglotzProblem& p, const Trajectory& tr);

/// tI^{1-α_j}_b(λ ∂L/∂d_j) at t = b for each free component, in component order.
std::vector<double> transversality_residual(const HerglotzProblem& p, const Trajectory& tr);

/// el_residual for orders α_i ∈ (i-1, i), i <= 2.
ResidualReport higher_order_el_residual(const HerglotzProblem& p, const Trajectory& tr);

struct HigherOrderTransversality {
  /// values[c][j] = tD^{α_c + j - i_c}_b(λ ∂L/∂d_c) at t = b, j = 0..i_c-1.
  std::vector<std::vector<double>> values;
  std::vector<int> components;  // indices of the free components, one per row
  bool stated_without_proof = true;
};

HigherOrderTransversality higher_order_transversality(const HerglotzProblem& p, const Trajectory& tr);

/// z(b) along x.
double functional_value(const HerglotzProblem& p, const std::vector<SampledFunction>& x);
double functional_value(const HerglotzProblem& p, const SampledFunction& x);

struct VariationReport {
  SampledFunction theta;    // integral formula at every node
  double theta_b = 0.0;     // integral formula at t = b
  double theta_b_fd = 0.0;  // central difference of z[x + εη; b]
  double epsilon = 0.0;

  double relative_gap() const;
};

/// Rate of change of z(b) in direction η. η(a) must vanish, and η(b) too for
/// fixed right endpoints.
VariationReport directional_derivative(const HerglotzProblem& p,
                                       const std::vector<SampledFunction>& x,
                                       const std::vector<SampledFunction>& eta);
VariationReport directional_derivative(const HerglotzProblem& p, const SampledFunction& x,
                                       const SampledFunction& eta);

}  // namespace herglotz
