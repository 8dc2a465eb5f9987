#include "herglotz/frac_ops.hpp"

#include <algorithm>
#include <cmath>

#include "herglotz/error.hpp"
#include "herglotz/kernels.hpp"

namespace herglotz {

namespace {

std::vector<double> reversed(std::span<const double> v) { return {v.rbegin(), v.rend()}; }

std::vector<double> left_integral_values(std::span<const double> f, double h, double alpha) {
  std::vector<double> out(f.size());
  kernels::parallel::left_integral(f, h, alpha, out);
  return out;
}

std::vector<double> right_integral_values(std::span<const double> f, double h, double alpha) {
  auto rev = reversed(f);
  auto out = left_integral_values(rev, h, alpha);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<double> second_difference(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  std::vector<double> d(n);
  const double h2 = h * h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
  if (n >= 4) {
    d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
    d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
  } else {
    d[0] = d[1];
    d[n - 1] = d[n - 2];
  }
  return d;
}

}  // namespace

std::vector<double> finite_difference(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return d;
}

double trapezoid(std::span<const double> v, double h) {
  if (v.size() < 2) return 0.0;
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
  return s * h;
}

std::vector<double> cumulative_trapezoid(std::span<const double> v, double h) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 1; i < v.size(); ++i) out[i] = out[i - 1] + 0.5 * h * (v[i - 1] + v[i]);
  return out;
}

SampledFunction left_rl_integral(const SampledFunction& f, FractionalOrder alpha) {
  return {f.grid, left_integral_values(f.values, f.grid.step(), alpha.alpha)};
}

SampledFunction right_rl_integral(const SampledFunction& f, FractionalOrder alpha) {
  return {f.grid, right_integral_values(f.values, f.grid.step(), alpha.alpha)};
}

SampledFunction left_caputo_deriv(const SampledFunction& f, FractionalOrder alpha) {
  const double a = alpha.alpha;
  const double h = f.grid.step();
  if (a > 0.0 && a < 1.0) {
    if (f.has_deriv(1)) return {f.grid, left_integral_values(f.derivs[0], h, 1.0 - a)};
    std::vector<double> out(f.size());
    kernels::parallel::left_l1(f.values, h, a, out);
    return {f.grid, std::move(out)};
  }
  if (a > 1.0 && a < 2.0) {
    const auto d2 = f.has_deriv(2) ? f.derivs[1] : second_difference(f.values, h);
    return {f.grid, left_integral_values(d2, h, 2.0 - a)};
  }
  throw OrderError("left_caputo_deriv: order must lie in (0,1) or (1,2), got " +
                   std::to_string(a));
}

SampledFunction right_caputo_deriv(const SampledFunction& f, FractionalOrder alpha) {
  const double a = alpha.alpha;
  if (!(a > 0.0 && a < 1.0))
    throw OrderError("right_caputo_deriv: order must lie in (0,1), got " + std::to_string(a));
  const double h = f.grid.step();
  if (f.has_deriv(1)) {
    auto out = right_integral_values(f.derivs[0], h, 1.0 - a);
    for (double& v : out) v = -v;
    return {f.grid, std::move(out)};
  }
  // reversal maps the forward differences onto negated backward ones, which
  // supplies the (-1)^1 sign of the right derivative
  auto rev = reversed(f.values);
  std::vector<double> out(rev.size());
  kernels::parallel::left_l1(rev, h, a, out);
  std::reverse(out.begin(), out.end());
  return {f.grid, std::move(out)};
}

SampledFunction right_rl_differintegral(const SampledFunction& f, DifferintegralOrder order) {
  const double beta = order.beta;
  if (!std::isfinite(beta) || std::abs(beta) >= 2.0)
    throw OrderError("right_rl_differintegral: |order| must be < 2, got " + std::to_string(beta));
  if (beta == 0.0) return {f.grid, f.values};
  const double h = f.grid.step();
  if (beta < 0.0) return {f.grid, right_integral_values(f.values, h, -beta)};

  const int n = static_cast<int>(std::floor(beta)) + 1;
  const auto inner = right_integral_values(f.values, h, n - beta);
  if (n == 1) {
    auto d = finite_difference(inner, h);
    for (double& v : d) v = -v;
    return {f.grid, std::move(d)};
  }
  return {f.grid, second_difference(inner, h)};
}

double ibp_defect(const SampledFunction& x, const SampledFunction& y, FractionalOrder alpha) {
  require_same_grid(x, y, "ibp_defect");
  if (!alpha.in_unit_interval()) throw OrderError("ibp_defect: order must lie in (0,1)");
  const double h = x.grid.step();
  const std::size_t n = x.size();

  const auto cx = left_caputo_deriv(x, alpha);
  const auto ry = right_rl_differintegral(y, {alpha.alpha});
  const auto iy = right_rl_integral(y, FractionalOrder(1.0 - alpha.alpha));

  std::vector<double> lhs(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    lhs[i] = y[i] * cx[i];
    rhs[i] = x[i] * ry[i];
  }
  const double boundary = iy[n - 1] * x[n - 1] - iy[0] * x[0];
  return std::abs(trapezoid(lhs, h) - trapezoid(rhs, h) - boundary);
}

}  // namespace herglotz
