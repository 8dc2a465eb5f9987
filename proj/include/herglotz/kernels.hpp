#pragma once

// Weighted history sums behind the fractional operators. Each output node is
// an independent dot product, so the parallel variants split the outer loop
// across threads while keeping the inner summation order of the serial
// reference. Both variants therefore produce bitwise identical results.

#include <span>
#include <vector>

namespace herglotz::kernels {

/// Product-trapezoidal weights for the left Riemann–Liouville integral of
/// order alpha on a uniform mesh with unit step. `interior[m]` is the weight of
/// f_{k-m} for 1 <= m <= k-1; the first node uses `first(k)` and the last has
/// weight 1. Everything is scaled by h^alpha / Γ(alpha+2).
struct IntegralWeights {
  IntegralWeights(double alpha, std::size_t n);
  double first(std::size_t k) const noexcept;

  double alpha;
  std::vector<double> pow_a1;   // m^(alpha+1), m = 0..n
  std::vector<double> pow_a;    // m^alpha
  std::vector<double> interior;
};

/// L1 weights b_m = (m+1)^(1-alpha) - m^(1-alpha), m = 0..n-2.
std::vector<double> l1_weights(double alpha, std::size_t n);

namespace serial {
void left_integral(std::span<const double> f, double h, double alpha, std::span<double> out);
void left_l1(std::span<const double> f, double h, double alpha, std::span<double> out);
}  // namespace serial

namespace parallel {
void left_integral(std::span<const double> f, double h, double alpha, std::span<double> out);
void left_l1(std::span<const double> f, double h, double alpha, std::span<double> out);
}  // namespace parallel

}  // namespace herglotz::kernels
