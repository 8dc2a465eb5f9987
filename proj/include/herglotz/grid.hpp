#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace herglotz {

/// Uniform mesh a = t_0 < t_1 < ... < t_{n-1} = b.
class Grid {
public:
  Grid(double a, double b, std::size_t n_points);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double step() const noexcept { return h_; }
  double operator[](std::size_t i) const noexcept { return nodes_[i]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  bool operator==(const Grid& o) const noexcept {
    return a_ == o.a_ && b_ == o.b_ && nodes_.size() == o.nodes_.size();
  }

private:
  double a_, b_, h_;
  std::vector<double> nodes_;
};

/// Order α > 0 together with n = ⌊α⌋ + 1.
struct FractionalOrder {
  double alpha;
  int n;

  explicit FractionalOrder(double a);
  bool in_unit_interval() const noexcept { return alpha > 0.0 && alpha < 1.0; }
};

/// β > 0 derivative of order β, β < 0 integral of order −β, β = 0 identity.
struct DifferintegralOrder {
  double beta;
};

/// Values of a scalar function on a grid, optionally with classical derivative
/// samples: derivs[k-1] holds the k-th derivative.
struct SampledFunction {
  Grid grid;
  std::vector<double> values;
  std::vector<std::vector<double>> derivs;

  SampledFunction(Grid g, std::vector<double> v, std::vector<std::vector<double>> d = {});

  static SampledFunction zeros(const Grid& g);
  static SampledFunction constant(const Grid& g, double c);
  static SampledFunction from(const Grid& g, const std::function<double(double)>& f);

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
  bool has_deriv(std::size_t k) const noexcept {
    return k >= 1 && derivs.size() >= k && derivs[k - 1].size() == values.size();
  }
  double linf() const noexcept;
};

void require_same_grid(const SampledFunction& f, const SampledFunction& g, const char* what);

}  // namespace herglotz
