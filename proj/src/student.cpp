#include "rtreg/student.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rtreg {

double student_logpdf(double z, Dof dof) {
  const double g = dof.gamma;
  const double c =
      std::lgamma(0.5 * (g + 1.0)) - std::lgamma(0.5 * g) - 0.5 * std::log(g * std::numbers::pi);
  return c - 0.5 * (g + 1.0) * std::log1p(z * z / g);
}

double pdf_ratio(double y, double xtb, double sigma, Dof dof) {
  if (!(sigma > 0.0)) throw std::invalid_argument("pdf_ratio: sigma must be positive");
  const double g = dof.gamma;
  const double r = (y - xtb) / sigma;
  const double log_ratio =
      -std::log(sigma) + 0.5 * (g + 1.0) * (std::log(g + y * y) - std::log(g + r * r));
  return std::exp(log_ratio);
}

double log_scale_ratio(double z, double s, Dof dof) {
  const double g = dof.gamma;
  return 0.5 * (g + 1.0) * (std::log(g + z * z) - std::log(g * s * s + z * z));
}

}  // namespace rtreg
