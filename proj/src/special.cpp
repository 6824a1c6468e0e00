#include "rtreg/special.hpp"

#include <cmath>
#include <numbers>

namespace rtreg {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double erfcx(double x) {
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x <= 12.0) return std::exp(x * x) * std::erfc(x);
  // Laplace continued fraction 1/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))));
  // 60 levels is far beyond convergence for x > 12.
  double f = 0.0;
  for (int k = 60; k >= 1; --k) f = 0.5 * k / (x + f);
  return (1.0 / std::sqrt(std::numbers::pi)) / (x + f);
}

}  // namespace rtreg
