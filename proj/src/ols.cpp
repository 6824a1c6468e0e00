#include "rtreg/ols.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rtreg {

namespace {

Eigen::ColPivHouseholderQR<Matrix> full_rank_qr(const Dataset& data) {
  Eigen::ColPivHouseholderQR<Matrix> qr(data.design);
  qr.setThreshold(1e-9);
  if (qr.rank() < data.p()) {
    const auto perm = qr.colsPermutation().indices();
    throw std::invalid_argument("design column " + std::to_string(perm(qr.rank()) + 1) +
                                " is linearly dependent on the others");
  }
  return qr;
}

}  // namespace

OlsFit ols_fit(const Dataset& data) {
  validate_dataset(data);
  const Index n = data.n(), p = data.p();
  const auto qr = full_rank_qr(data);
  OlsFit fit;
  fit.beta_hat = qr.solve(data.response);
  fit.fitted = data.design * fit.beta_hat;
  fit.residual_sumsq = (data.response - fit.fitted).squaredNorm();
  fit.has_posterior_cov = n > p + 2;
  if (fit.has_posterior_cov) {
    const Matrix xtx = data.design.transpose() * data.design;
    Matrix inv = xtx.llt().solve(Matrix::Identity(p, p));
    inv = 0.5 * (inv + inv.transpose()).eval();
    fit.posterior_cov = fit.residual_sumsq / static_cast<double>(n - p - 2) * inv;
  }
  return fit;
}

CoefSummary normal_posterior_coef(const Dataset& data, Index j) {
  if (j < 0 || j >= data.p()) throw std::invalid_argument("coefficient index out of range");
  const OlsFit fit = ols_fit(data);
  if (!fit.has_posterior_cov)
    throw std::invalid_argument("normal posterior SD requires n > p + 2, got n = " +
                                std::to_string(data.n()) + ", p = " + std::to_string(data.p()));
  return {fit.beta_hat(j), std::sqrt(fit.posterior_cov(j, j))};
}

CoefSummary normal_posterior_beta2_summary(const Dataset& data) {
  if (data.p() < 2) throw std::invalid_argument("beta2 summary requires p >= 2");
  return normal_posterior_coef(data, 1);
}

Vector ols_response_gradient(const Dataset& data, Index row) {
  validate_dataset(data);
  if (row < 0 || row >= data.n()) throw std::invalid_argument("row index out of range");
  full_rank_qr(data);  // rank gate with the shared tolerance
  const Matrix xtx = data.design.transpose() * data.design;
  return xtx.llt().solve(data.design.row(row).transpose());
}

}  // namespace rtreg
