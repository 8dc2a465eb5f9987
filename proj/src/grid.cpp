#include "herglotz/grid.hpp"

#include <cmath>
#include <string>

#include "herglotz/error.hpp"

namespace herglotz {

Grid::Grid(double a, double b, std::size_t n_points) : a_(a), b_(b) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b))
    throw InvalidArgument("grid: need finite a < b");
  if (n_points < 3) throw InvalidArgument("grid: need at least 3 points");
  h_ = (b - a) / static_cast<double>(n_points - 1);
  nodes_.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) nodes_[i] = a + static_cast<double>(i) * h_;
  nodes_.back() = b;
}

FractionalOrder::FractionalOrder(double a) : alpha(a), n(static_cast<int>(std::floor(a)) + 1) {
  if (!(a > 0.0) || !std::isfinite(a)) throw OrderError("fractional order must be positive");
}

SampledFunction::SampledFunction(Grid g, std::vector<double> v, std::vector<std::vector<double>> d)
    : grid(std::move(g)), values(std::move(v)), derivs(std::move(d)) {
  if (values.size() != grid.size())
    throw InvalidArgument("sampled function: " + std::to_string(values.size()) +
                          " values for a grid of " + std::to_string(grid.size()) + " nodes");
  for (const auto& row : derivs)
    if (row.size() != values.size())
      throw InvalidArgument("sampled function: derivative row length mismatch");
}

SampledFunction SampledFunction::zeros(const Grid& g) {
  return {g, std::vector<double>(g.size(), 0.0)};
}

SampledFunction SampledFunction::constant(const Grid& g, double c) {
  return {g, std::vector<double>(g.size(), c)};
}

SampledFunction SampledFunction::from(const Grid& g, const std::function<double(double)>& f) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
  return {g, std::move(v)};
}

double SampledFunction::linf() const noexcept {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const SampledFunction& f, const SampledFunction& g, const char* what) {
  if (!(f.grid == g.grid)) throw GridMismatch(std::string(what) + ": arguments live on different grids");
}

}  // namespace herglotz
