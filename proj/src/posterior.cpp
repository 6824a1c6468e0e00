#include "rtreg/posterior.hpp"

#include "rtreg/student.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rtreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix select_rows(const Matrix& X, const std::vector<Index>& drop, Index n) {
  std::vector<bool> dropped(static_cast<std::size_t>(n), false);
  for (Index i : drop) dropped[static_cast<std::size_t>(i)] = true;
  Matrix out(n - static_cast<Index>(drop.size()), X.cols());
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    if (!dropped[static_cast<std::size_t>(i)]) out.row(k++) = X.row(i);
  return out;
}

Vector select_rows(const Vector& y, const std::vector<Index>& drop, Index n) {
  std::vector<bool> dropped(static_cast<std::size_t>(n), false);
  for (Index i : drop) dropped[static_cast<std::size_t>(i)] = true;
  Vector out(n - static_cast<Index>(drop.size()));
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    if (!dropped[static_cast<std::size_t>(i)]) out(k++) = y(i);
  return out;
}

Params unpack(const Vector& theta, Index p) { return {theta.head(p), theta(p)}; }

}  // namespace

PosteriorTarget::PosteriorTarget(const Dataset& data, Dof dof, PriorSpec prior)
    : X_(data.design), y_(data.response), dof_(dof), prior_(std::move(prior)),
      nu_coeff_(static_cast<double>(data.n())) {
  validate_dataset(data);
  if (prior_.kind == PriorKind::custom && !prior_.custom_log_prior)
    throw std::invalid_argument("custom prior requires a log-prior function");
}

PosteriorTarget::PosteriorTarget(const Dataset& data, const OutlierSpec& outliers, Dof dof, PriorSpec prior)
    : X_(), y_(), dof_(dof), prior_(std::move(prior)), nu_coeff_(0.0) {
  validate_dataset(data);
  validate_outliers(outliers, data.n());
  if (prior_.kind == PriorKind::custom && !prior_.custom_log_prior)
    throw std::invalid_argument("custom prior requires a log-prior function");
  const Index n_out = static_cast<Index>(outliers.outliers.size());
  if (n_out == data.n())
    throw std::invalid_argument("limiting posterior requires at least one non-outlying observation");
  X_ = select_rows(data.design, outliers.outliers, data.n());
  y_ = select_rows(data.response, outliers.outliers, data.n());
  nu_coeff_ = static_cast<double>(data.n() - n_out) - static_cast<double>(n_out) * dof_.gamma;
}

double PosteriorTarget::custom_prior_logdensity(const Params& params) const {
  const double lp = prior_.custom_log_prior(params);
  const double log_bound = std::log(prior_.bound_constant) + std::max(0.0, -params.nu);
  if (lp > log_bound + 1e-12)
    throw std::domain_error("custom prior violates its bound exp(log_prior) <= max(C, C/sigma): log prior " +
                            std::to_string(lp) + " > " + std::to_string(log_bound) + " at nu = " +
                            std::to_string(params.nu));
  return lp;
}

Vector PosteriorTarget::custom_prior_grad(const Params& params) const {
  const Index p = X_.cols();
  if (prior_.custom_grad_log_prior) return prior_.custom_grad_log_prior(params);
  // central finite differences on the user's log prior only
  Vector g(p + 1);
  Params lo = params, hi = params;
  for (Index j = 0; j < p; ++j) {
    const double h = 1e-6 * (1.0 + std::abs(params.beta(j)));
    hi.beta(j) = params.beta(j) + h;
    lo.beta(j) = params.beta(j) - h;
    g(j) = (prior_.custom_log_prior(hi) - prior_.custom_log_prior(lo)) / (2.0 * h);
    hi.beta(j) = lo.beta(j) = params.beta(j);
  }
  const double h = 1e-6 * (1.0 + std::abs(params.nu));
  hi.nu = params.nu + h;
  lo.nu = params.nu - h;
  g(p) = (prior_.custom_log_prior(hi) - prior_.custom_log_prior(lo)) / (2.0 * h);
  return g;
}

double PosteriorTarget::logpdf(const Vector& theta) const {
  const Index p = X_.cols();
  if (theta.size() != p + 1 || !theta.allFinite()) return -kInf;
  const double nu = theta(p);
  const double inv_s = std::exp(-nu);
  const Vector r = y_ - X_ * theta.head(p);
  double sum = 0.0;
  for (Index i = 0; i < r.size(); ++i) sum += student_logpdf(r(i) * inv_s, dof_);
  double value = -nu_coeff_ * nu + sum;
  if (prior_.kind == PriorKind::flat) value += nu;
  else if (prior_.kind == PriorKind::custom) value += custom_prior_logdensity(unpack(theta, p)) + nu;
  return value;
}

Vector PosteriorTarget::grad(const Vector& theta) const {
  const Index p = X_.cols();
  if (theta.size() != p + 1 || !theta.allFinite())
    return Vector::Constant(p + 1, std::numeric_limits<double>::quiet_NaN());
  const double g = dof_.gamma;
  const double nu = theta(p);
  const double inv_s2 = std::exp(-2.0 * nu);
  const Vector r = y_ - X_ * theta.head(p);
  // w_i = (1 + r_i^2 / (sigma^2 gamma))^{-1}
  const Eigen::ArrayXd w = 1.0 / (1.0 + r.array().square() * (inv_s2 / g));
  const Vector wr = (w * r.array()).matrix();
  const double scale = (g + 1.0) / g * inv_s2;
  Vector out(p + 1);
  out.head(p) = scale * (X_.transpose() * wr);
  out(p) = -nu_coeff_ + scale * wr.dot(r);
  if (prior_.kind == PriorKind::flat) out(p) += 1.0;
  else if (prior_.kind == PriorKind::custom) {
    out(p) += 1.0;
    out += custom_prior_grad(unpack(theta, p));
  }
  return out;
}

namespace {

Vector pack(const Params& params) {
  Vector theta(params.beta.size() + 1);
  theta << params.beta, params.nu;
  return theta;
}

void validate_params(const Params& params, Index p) {
  if (params.beta.size() != p)
    throw std::invalid_argument("params.beta has length " + std::to_string(params.beta.size()) +
                                ", expected " + std::to_string(p));
  if (!params.beta.allFinite() || !std::isfinite(params.nu))
    throw std::invalid_argument("params must be finite");
}

}  // namespace

double log_posterior(const Dataset& data, const Params& params, Dof dof, const PriorSpec& prior) {
  validate_params(params, data.p());
  return PosteriorTarget(data, dof, prior).logpdf(pack(params));
}

Vector grad_log_posterior(const Dataset& data, const Params& params, Dof dof, const PriorSpec& prior) {
  validate_params(params, data.p());
  return PosteriorTarget(data, dof, prior).grad(pack(params));
}

double log_limiting_posterior(const Dataset& data, const OutlierSpec& outliers, const Params& params,
                              Dof dof, const PriorSpec& prior) {
  validate_params(params, data.p());
  return PosteriorTarget(data, outliers, dof, prior).logpdf(pack(params));
}

Vector grad_log_limiting_posterior(const Dataset& data, const OutlierSpec& outliers, const Params& params,
                                   Dof dof, const PriorSpec& prior) {
  validate_params(params, data.p());
  return PosteriorTarget(data, outliers, dof, prior).grad(pack(params));
}

}  // namespace rtreg
