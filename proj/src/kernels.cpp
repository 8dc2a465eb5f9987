#include "herglotz/kernels.hpp"

#include <cmath>

#include "herglotz/error.hpp"
#include "herglotz/special.hpp"

namespace herglotz::kernels {

IntegralWeights::IntegralWeights(double a, std::size_t n)
    : alpha(a), pow_a1(n + 1), pow_a(n + 1), interior(n, 0.0) {
  for (std::size_t m = 0; m <= n; ++m) {
    const double md = static_cast<double>(m);
    pow_a1[m] = std::pow(md, alpha + 1.0);
    pow_a[m] = std::pow(md, alpha);
  }
  for (std::size_t m = 1; m < n; ++m)
    interior[m] = pow_a1[m + 1] - 2.0 * pow_a1[m] + pow_a1[m - 1];
}

double IntegralWeights::first(std::size_t k) const noexcept {
  const double kd = static_cast<double>(k);
  return pow_a1[k - 1] - (kd - alpha - 1.0) * pow_a[k];
}

std::vector<double> l1_weights(double alpha, std::size_t n) {
  std::vector<double> b(n > 1 ? n - 1 : 0);
  const double e = 1.0 - alpha;
  for (std::size_t m = 0; m < b.size(); ++m) {
    const double md = static_cast<double>(m);
    b[m] = std::pow(md + 1.0, e) - std::pow(md, e);
  }
  return b;
}

namespace {

void check(std::span<const double> f, std::span<double> out) {
  if (f.size() != out.size()) throw InvalidArgument("kernel: input/output length mismatch");
}

inline double integral_node(std::span<const double> f, const IntegralWeights& w, std::size_t k) {
  double s = w.first(k) * f[0];
  for (std::size_t j = 1; j < k; ++j) s += w.interior[k - j] * f[j];
  return s + f[k];
}

inline double l1_node(std::span<const double> f, const std::vector<double>& b, std::size_t k) {
  double s = 0.0;
  for (std::size_t j = 0; j < k; ++j) s += b[k - 1 - j] * (f[j + 1] - f[j]);
  return s;
}

}  // namespace

namespace serial {

void left_integral(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check(f, out);
  const std::size_t n = f.size();
  if (n == 0) return;
  const IntegralWeights w(alpha, n);
  const double scale = std::pow(h, alpha) / gamma(alpha + 2.0);
  out[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) out[k] = scale * integral_node(f, w, k);
}

void left_l1(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check(f, out);
  const std::size_t n = f.size();
  if (n == 0) return;
  const auto b = l1_weights(alpha, n);
  const double scale = std::pow(h, -alpha) / gamma(2.0 - alpha);
  out[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) out[k] = scale * l1_node(f, b, k);
}

}  // namespace serial

namespace parallel {

void left_integral(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check(f, out);
  const std::size_t n = f.size();
  if (n == 0) return;
  const IntegralWeights w(alpha, n);
  const double scale = std::pow(h, alpha) / gamma(alpha + 2.0);
  out[0] = 0.0;
  const auto nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (long k = 1; k < nn; ++k)
    out[k] = scale * integral_node(f, w, static_cast<std::size_t>(k));
}

void left_l1(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check(f, out);
  const std::size_t n = f.size();
  if (n == 0) return;
  const auto b = l1_weights(alpha, n);
  const double scale = std::pow(h, -alpha) / gamma(2.0 - alpha);
  out[0] = 0.0;
  const auto nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (long k = 1; k < nn; ++k) out[k] = scale * l1_node(f, b, static_cast<std::size_t>(k));
}

}  // namespace parallel

}  // namespace herglotz::kernels
