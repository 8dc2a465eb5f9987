#pragma once

// Fractional operators on uniformly sampled functions.
//
//   left_rl_integral     aI^α_t f    product-trapezoidal rule (exact for the
//                                    piecewise-linear interpolant of f)
//   right_rl_integral    tI^α_b f    mirror image
//   left_caputo_deriv    C aD^α_t f  L1 scheme, order 2-α; α ∈ (1,2) goes
//                                    through the second derivative
//   right_caputo_deriv   C tD^α_b f  mirror image, sign (-1)^n
//   right_rl_differintegral          tD^β_b for |β| < 2
//
// Endpoint conventions: the left operators vanish at t = a and the right ones
// at t = b (the defining integrals are empty there).

#include "herglotz/grid.hpp"

namespace herglotz {

SampledFunction left_rl_integral(const SampledFunction& f, FractionalOrder alpha);
SampledFunction right_rl_integral(const SampledFunction& f, FractionalOrder alpha);

/// α ∈ (0,1): L1 scheme on the values, or aI^{1-α} of derivs[0] when present.
/// α ∈ (1,2): aI^{2-α} applied to the second derivative (derivs[1] when
/// present, otherwise second differences of the values).
SampledFunction left_caputo_deriv(const SampledFunction& f, FractionalOrder alpha);
SampledFunction right_caputo_deriv(const SampledFunction& f, FractionalOrder alpha);

/// Right Riemann–Liouville derivative (β > 0), integral (β < 0) or identity.
/// Derivatives are (-1)^n d^n/dt^n of tI^{n-β}_b f with central differences
/// inside and second-order one-sided stencils at the ends.
SampledFunction right_rl_differintegral(const SampledFunction& f, DifferintegralOrder order);

/// |∫ y·C aD^α x − ∫ x·tD^α_b y − [tI^{1-α}_b y · x]_a^b| with trapezoidal
/// outer quadrature; a discretization self-check of fractional integration
/// by parts.
double ibp_defect(const SampledFunction& x, const SampledFunction& y, FractionalOrder alpha);

/// Classical derivative of sampled data: central differences inside,
/// second-order one-sided at both ends.
std::vector<double> finite_difference(std::span<const double> v, double h);

/// Composite trapezoidal rule over the whole grid.
double trapezoid(std::span<const double> v, double h);

/// Running trapezoidal integral, out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> v, double h);

}  // namespace herglotz
