#pragma once

#include "rtreg/types.hpp"

#include <functional>

namespace rtreg {

enum class QuadratureMethod { gauss_hermite, adaptive_simpson };

// Expectation operator settings for E[h(Z)], Z ~ N(0, 1). gh_order applies
// to gauss_hermite; tolerance and truncation (half-width in standard
// deviations) to adaptive_simpson. The Student-tail integrands here have
// poles close to the real axis at small gamma, which polynomial rules
// resolve slowly; the adaptive default is exact to roughly 1e-15 while
// Gauss-Hermite needs order around 500 for 1e-10 at gamma = 1.
struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::adaptive_simpson;
  int gh_order = 500;
  double tolerance = 1e-12;
  double truncation = 12.0;
};

void validate_spec(const QuadratureSpec& spec);

struct GaussHermiteRule {
  Vector nodes;    // ascending
  Vector weights;  // for the physicists' weight exp(-x^2)
};

// Golub-Welsch nodes/weights from the symmetric tridiagonal Jacobi matrix;
// cached per order, safe to call concurrently.
const GaussHermiteRule& gauss_hermite_rule(int order);

double normal_expectation(const std::function<double(double)>& integrand, const QuadratureSpec& spec);

}  // namespace rtreg
