#include "rtreg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace rtreg {

void validate_spec(const QuadratureSpec& spec) {
  if (spec.method == QuadratureMethod::gauss_hermite && spec.gh_order < 20)
    throw std::invalid_argument("Gauss-Hermite order must be >= 20");
  if (spec.method == QuadratureMethod::adaptive_simpson) {
    if (!(spec.tolerance > 0.0 && spec.tolerance <= 1e-10))
      throw std::invalid_argument("adaptive tolerance must be in (0, 1e-10]");
    if (!(spec.truncation >= 10.0)) throw std::invalid_argument("truncation must be >= 10");
  }
}

const GaussHermiteRule& gauss_hermite_rule(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Hermite order must be positive");
  static std::map<int, GaussHermiteRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    Matrix jacobi = Matrix::Zero(order, order);
    for (int k = 1; k < order; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Matrix> es(jacobi);
    GaussHermiteRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights =
        std::sqrt(std::numbers::pi) * es.eigenvectors().row(0).transpose().array().square();
    it = cache.emplace(order, std::move(rule)).first;
  }
  return it->second;
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double eps, double whole,
             double fa, double fm, double fb, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adapt(f, a, m, 0.5 * eps, left, fa, flm, fm, depth - 1) +
         adapt(f, m, b, 0.5 * eps, right, fm, frm, fb, depth - 1);
}

}  // namespace

double normal_expectation(const std::function<double(double)>& integrand, const QuadratureSpec& spec) {
  validate_spec(spec);
  if (spec.method == QuadratureMethod::gauss_hermite) {
    // E[h(Z)] = pi^{-1/2} sum_i w_i h(sqrt(2) x_i)
    const GaussHermiteRule& rule = gauss_hermite_rule(spec.gh_order);
    double sum = 0.0;
    for (Index i = 0; i < rule.nodes.size(); ++i)
      sum += rule.weights(i) * integrand(std::numbers::sqrt2 * rule.nodes(i));
    return sum / std::sqrt(std::numbers::pi);
  }
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const auto f = [&](double u) { return integrand(u) * std::exp(-0.5 * u * u) * norm; };
  const int panels = 16;
  const double width = 2.0 * spec.truncation / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = -spec.truncation + k * width, b = a + width;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    total += adapt(f, a, b, spec.tolerance / panels, simpson(a, b, fa, fm, fb), fa, fm, fb, 48);
  }
  return total;
}

}  // namespace rtreg
