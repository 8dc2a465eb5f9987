#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "herglotz/error.hpp"
#include "herglotz/frac_ops.hpp"
#include "herglotz/kernels.hpp"

using namespace herglotz;

namespace {

double interior_linf(const std::vector<double>& a, const std::vector<double>& b, std::size_t trim = 2) {
  double m = 0.0;
  for (std::size_t i = trim; i + trim < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// aI^α f(t) by tanh-sinh quadrature
double quad_left_integral(double (*f)(double), double a, double t, double al) {
  if (t <= a) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [&](double tau, double tauc) {
    const double tm = tauc > 0 ? tauc : t - tau;
    return std::pow(tm, al - 1.0) * f(tau);
  };
  return ts.integrate(g, a, t) / std::tgamma(al);
}

double quad_right_integral(double (*f)(double), double t, double b, double al) {
  if (t >= b) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [&](double tau, double tauc) {
    const double tm = tauc < 0 ? -tauc : tau - t;
    return std::pow(tm, al - 1.0) * f(tau);
  };
  return ts.integrate(g, t, b) / std::tgamma(al);
}

double fsin(double t) { return std::sin(3.0 * t) + t; }

SampledFunction power(const Grid& g, double p) {
  return SampledFunction::from(g, [p](double t) { return std::pow(t, p); });
}

}  // namespace

TEST_CASE("left integral power rule") {
  Grid g(0.0, 1.0, 1001);
  for (double al : {0.3, 0.5, 0.8, 1.4}) {
    for (double p : {1.0, 2.0, 2.5}) {
      const auto r = left_rl_integral(power(g, p), FractionalOrder(al));
      const auto ref = power(g, p + al);
      const double c = std::tgamma(p + 1) / std::tgamma(p + 1 + al);
      double err = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(r[i] - c * ref[i]));
      CHECK(err < 1e-5);
    }
  }
}

TEST_CASE("left integral is exact for linear data") {
  Grid g(0.0, 2.0, 41);
  const auto f = SampledFunction::from(g, [](double t) { return 3.0 - 2.0 * t; });
  const auto r = left_rl_integral(f, FractionalOrder(0.6));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g[i];
    const double ref = 3.0 * std::pow(t, 0.6) / std::tgamma(1.6) - 2.0 * std::pow(t, 1.6) / std::tgamma(2.6);
    CHECK(r[i] == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("left and right integrals against quadrature") {
  Grid g(0.0, 1.0, 801);
  const auto f = SampledFunction::from(g, fsin);
  const auto li = left_rl_integral(f, FractionalOrder(0.4));
  const auto ri = right_rl_integral(f, FractionalOrder(0.4));
  for (std::size_t i = 0; i < g.size(); i += 50) {
    CHECK(std::abs(li[i] - quad_left_integral(fsin, 0.0, g[i], 0.4)) < 1e-5);
    CHECK(std::abs(ri[i] - quad_right_integral(fsin, g[i], 1.0, 0.4)) < 1e-5);
  }
  CHECK(li[0] == 0.0);
  CHECK(ri[g.size() - 1] == 0.0);
}

TEST_CASE("L1 Caputo derivative of t^2 converges with order near 2-alpha") {
  std::vector<double> errs;
  for (std::size_t n : {251, 501, 1001, 2001}) {
    Grid g(0.0, 1.0, n);
    const auto d = left_caputo_deriv(power(g, 2.0), FractionalOrder(0.5));
    auto ref = power(g, 1.5);
    for (auto& v : ref.values) v *= 2.0 / std::tgamma(2.5);
    errs.push_back(interior_linf(d.values, ref.values));
  }
  CHECK(errs[2] <= 5e-3);
  for (std::size_t k = 1; k < errs.size(); ++k) CHECK(std::log2(errs[k - 1] / errs[k]) >= 1.4);
}

TEST_CASE("Caputo derivative of a constant vanishes") {
  Grid g(-1.0, 2.0, 101);
  const auto c = SampledFunction::constant(g, 3.0);
  for (double v : left_caputo_deriv(c, FractionalOrder(0.3)).values) CHECK(v == 0.0);
  for (double v : right_caputo_deriv(c, FractionalOrder(0.3)).values) CHECK(v == 0.0);
}

TEST_CASE("Caputo derivative from a derivative row") {
  Grid g(0.0, 1.0, 1001);
  auto x = power(g, 2.0);
  x.derivs.push_back(SampledFunction::from(g, [](double t) { return 2.0 * t; }).values);
  const auto d = left_caputo_deriv(x, FractionalOrder(0.5));
  for (std::size_t i = 0; i < g.size(); i += 100)
    CHECK(d[i] == doctest::Approx(2.0 / std::tgamma(2.5) * std::pow(g[i], 1.5)).epsilon(1e-10).scale(1.0));
}

TEST_CASE("higher order Caputo derivative of t^3") {
  Grid g(0.0, 1.0, 1001);
  const auto d = left_caputo_deriv(power(g, 3.0), FractionalOrder(1.5));
  for (std::size_t i = 2; i + 2 < g.size(); i += 97)
    CHECK(std::abs(d[i] - 6.0 / std::tgamma(2.5) * std::pow(g[i], 1.5)) < 1e-4);
  CHECK_THROWS_AS(left_caputo_deriv(power(g, 3.0), FractionalOrder(1.0)), OrderError);
  CHECK_THROWS_AS(left_caputo_deriv(power(g, 3.0), FractionalOrder(2.5)), OrderError);
}

TEST_CASE("right Caputo derivative of (1-t)^2") {
  Grid g(0.0, 1.0, 2001);
  const auto f = SampledFunction::from(g, [](double t) { return (1 - t) * (1 - t); });
  const auto d = right_caputo_deriv(f, FractionalOrder(0.5));
  const auto ref = SampledFunction::from(g, [](double t) { return 2.0 / std::tgamma(2.5) * std::pow(1 - t, 1.5); });
  CHECK(interior_linf(d.values, ref.values) < 5e-3);
  CHECK_THROWS_AS(right_caputo_deriv(f, FractionalOrder(1.5)), OrderError);
}

TEST_CASE("right Riemann-Liouville derivative power rule") {
  Grid g(0.0, 1.0, 2001);
  const auto f = SampledFunction::from(g, [](double t) { return std::pow(1 - t, 2.0); });
  for (double beta : {0.5, 0.8, 1.3}) {
    const auto d = right_rl_differintegral(f, {beta});
    const double c = 2.0 / std::tgamma(3.0 - beta);
    std::vector<double> ref(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) ref[i] = c * std::pow(1 - g[i], 2.0 - beta);
    CHECK(interior_linf(d.values, ref) < 1e-2);
  }
  const auto id = right_rl_differintegral(f, {0.0});
  CHECK(id.values == f.values);
  const auto in = right_rl_differintegral(f, {-0.5});
  CHECK(in.values == right_rl_integral(f, FractionalOrder(0.5)).values);
  CHECK_THROWS_AS(right_rl_differintegral(f, {2.0}), OrderError);
  CHECK_THROWS_AS(right_rl_differintegral(f, {-2.5}), OrderError);
}

TEST_CASE("integration by parts defect shrinks under refinement") {
  std::vector<double> defects;
  for (std::size_t n : {501, 1001, 2001}) {
    Grid g(0.0, 1.0, n);
    const auto x = power(g, 2.0);
    const auto y = SampledFunction::from(g, [](double t) { return 1.0 - t; });
    defects.push_back(ibp_defect(x, y, FractionalOrder(0.5)));
  }
  CHECK(defects.back() <= 1e-3);
  for (std::size_t k = 1; k < defects.size(); ++k) CHECK(defects[k - 1] / defects[k] >= 1.5);
}

TEST_CASE("grid mismatch is rejected") {
  const auto a = SampledFunction::zeros(Grid(0.0, 1.0, 11));
  const auto b = SampledFunction::zeros(Grid(0.0, 1.0, 12));
  CHECK_THROWS_AS(ibp_defect(a, b, FractionalOrder(0.5)), GridMismatch);
}

TEST_CASE("parallel kernels are bitwise identical to the serial reference") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {3, 17, 1000, 4097}) {
    std::vector<double> f(n);
    for (auto& v : f) v = u(rng);
    for (double al : {0.25, 0.5, 0.9}) {
      std::vector<double> s(n), p(n);
      kernels::serial::left_integral(f, 0.01, al, s);
      kernels::parallel::left_integral(f, 0.01, al, p);
      CHECK(s == p);
      kernels::serial::left_l1(f, 0.01, al, s);
      kernels::parallel::left_l1(f, 0.01, al, p);
      CHECK(s == p);
    }
  }
}

TEST_CASE("finite difference helpers") {
  Grid g(0.0, 1.0, 11);
  const auto f = SampledFunction::from(g, [](double t) { return t * t; });
  const auto d = finite_difference(f.values, g.step());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(d[i] == doctest::Approx(2.0 * g[i]));
  CHECK(trapezoid(SampledFunction::constant(g, 2.0).values, g.step()) == doctest::Approx(2.0));
  const auto c = cumulative_trapezoid(SampledFunction::constant(g, 1.0).values, g.step());
  CHECK(c.back() == doctest::Approx(1.0));
}
