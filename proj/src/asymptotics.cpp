#include "rtreg/asymptotics.hpp"

#include "rtreg/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rtreg {

double scale_equation_lhs_closed_form(double eta, Dof dof) {
  const double g = dof.gamma;
  const double c = std::exp(2.0 * eta) * g;
  const double tail = std::sqrt(0.5 * std::numbers::pi * c) * erfcx(std::sqrt(0.5 * c));
  return (g + 1.0) * (1.0 - tail) - 1.0;
}

double scale_equation_lhs(double eta, Dof dof, const QuadratureSpec& spec) {
  if (!(eta >= -20.0 && eta <= 20.0)) throw std::invalid_argument("eta outside [-20, 20]");
  const double g = dof.gamma;
  const double c = std::exp(2.0 * eta) * g;
  if (c > 50.0) return scale_equation_lhs_closed_form(eta, dof);
  return (g + 1.0) * normal_expectation([c](double u) { return u * u / (c + u * u); }, spec) - 1.0;
}

ScaleRatio solve_sigma_star(Dof dof, const QuadratureSpec& spec) {
  constexpr double kTol = 1e-10;
  double lo = -20.0, hi = 20.0;
  double flo = scale_equation_lhs(lo, dof, spec);
  double fhi = scale_equation_lhs(hi, dof, spec);
  if (!(flo > 0.0 && fhi < 0.0))
    throw NumericalError("scale equation not bracketed on [-20, 20]; LHS(" + std::to_string(lo) + ") = " +
                         std::to_string(flo) + ", LHS(" + std::to_string(hi) + ") = " + std::to_string(fhi));
  double x = 0.5 * (lo + hi);
  double fx = scale_equation_lhs(x, dof, spec);
  for (int it = 0; it < 200 && std::abs(fx) >= kTol; ++it) {
    if (fx > 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    // secant through the bracket, falling back to bisection when it leaves it
    double next = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    fx = scale_equation_lhs(x, dof, spec);
  }
  if (std::abs(fx) >= kTol)
    throw NumericalError("scale equation solver did not reach |LHS| < 1e-10 for gamma = " +
                         std::to_string(dof.gamma));
  ScaleRatio out{std::exp(x), x, dof.gamma, fx};
  if (!(out.value > 0.0 && out.value <= 1.0))
    throw NumericalError("scale ratio outside (0, 1] for gamma = " + std::to_string(dof.gamma));
  return out;
}

double phi_factor(Dof dof, const QuadratureSpec& spec) {
  const double r = solve_sigma_star(dof, spec).value;
  const double c = r * r * dof.gamma;
  const double num = normal_expectation(
      [c](double u) {
        const double d = 1.0 + u * u / c;
        return u * u / (d * d);
      },
      spec);
  const double den = normal_expectation(
      [c](double u) {
        const double d = 1.0 + u * u / c;
        return (1.0 - u * u / c) / (d * d);
      },
      spec);
  return num / (den * den);
}

double ols_asymptotic_variance_factor() { return 1.0; }

}  // namespace rtreg
