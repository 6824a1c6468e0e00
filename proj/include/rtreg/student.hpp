#pragma once

#include "rtreg/types.hpp"

namespace rtreg {

// log f(z) for the standardized Student density with dof.gamma degrees of
// freedom, including the Gamma-function normalizing constant.
double student_logpdf(double z, Dof dof);

// (1/sigma) f((y - xtb)/sigma) / f(y), evaluated through the closed-form
// power expression in log space (never by dividing two density values).
// Converges to sigma^gamma as |y| grows with xtb, sigma fixed.
double pdf_ratio(double y, double xtb, double sigma, Dof dof);

// log of f(z/s) / (s^{gamma+1} f(z)). Nonpositive for every s >= 1; the
// algebraic cancellation ((gamma + z^2)/(gamma s^2 + z^2) <= 1) keeps the
// sign exact in floating point.
double log_scale_ratio(double z, double s, Dof dof);

}  // namespace rtreg
