#pragma once

#include "rtreg/quadrature.hpp"
#include "rtreg/special.hpp"
#include "rtreg/types.hpp"

namespace rtreg {

// Pseudo-true scale ratio r = sigma*/sigma0 for normal data fitted by the
// Student model with gamma degrees of freedom.
struct ScaleRatio {
  double value = 1.0;  // r, in (0, 1]
  double eta = 0.0;    // log r
  int gamma = 1;
  double residual = 0.0;  // scale-equation LHS at the returned root
};

// LHS of the pseudo-true scale equation in eta = log(sigma/sigma0):
//   (gamma + 1) E[Z^2 / (e^{2 eta} gamma + Z^2)] - 1,
// strictly decreasing, -> gamma as eta -> -inf and -> -1 as eta -> +inf.
// For e^{2 eta} gamma > 50 the equivalent closed form is used so a huge
// exponential never multiplies a tiny normal tail.
double scale_equation_lhs(double eta, Dof dof, const QuadratureSpec& spec = {});

// Same LHS through the Phi closed form, evaluated via the scaled
// complementary error function:
//   (gamma+1) [1 - sqrt(2 pi c) e^{c/2} Phi(-sqrt c)] - 1, c = e^{2 eta} gamma.
double scale_equation_lhs_closed_form(double eta, Dof dof);

// Root of the scale equation on eta in [-20, 20]: bisection refined by
// secant steps, to |LHS| < 1e-10.
ScaleRatio solve_sigma_star(Dof dof, const QuadratureSpec& spec = {});

// Efficiency factor phi(gamma) > 1 multiplying the OLS asymptotic covariance:
//   E[Z^2/(1+Z^2/(r^2 gamma))^2] * E[(1-Z^2/(r^2 gamma))/(1+Z^2/(r^2 gamma))^2]^{-2}.
double phi_factor(Dof dof, const QuadratureSpec& spec = {});

// OLS reference factor, identically 1; reports state both factors side by side.
double ols_asymptotic_variance_factor();

}  // namespace rtreg
