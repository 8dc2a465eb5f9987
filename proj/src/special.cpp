#include "herglotz/special.hpp"

#include <cmath>
#include <string>

#include "herglotz/error.hpp"

namespace herglotz {

double gamma(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("gamma: non-finite argument");
  if (x <= 0.0 && std::abs(x - std::round(x)) <= 1e-12)
    throw PoleError("gamma: pole at non-positive integer " + std::to_string(std::round(x)));
  if (x == std::floor(x) && x <= 21.0) {
    // exact factorials
    double r = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) r *= k;
    return r;
  }
  return gamma_generic(x);
}

double binom_frac(double alpha, int k) {
  if (k < 0) throw InvalidArgument("binom_frac: k must be non-negative");
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c *= (alpha - i + 1) / i;
  return c;
}

}  // namespace herglotz
