#pragma once

#include "rtreg/types.hpp"

namespace rtreg {

// Normal-model baseline. beta_hat solves the normal equations through a
// column-pivoted QR factorization; posterior_cov is the improper-prior
// normal-linear-model posterior covariance |y - yhat|^2 / (n - p - 2)
// (X'X)^{-1}, available only when n > p + 2.
struct OlsFit {
  Vector beta_hat;
  Vector fitted;
  double residual_sumsq = 0.0;
  Matrix posterior_cov;
  bool has_posterior_cov = false;
};

OlsFit ols_fit(const Dataset& data);

struct CoefSummary {
  double mean = 0.0;
  double sd = 0.0;
};

// Normal-model posterior mean and SD of coefficient j (0-based).
CoefSummary normal_posterior_coef(const Dataset& data, Index j);

// The slope-coefficient special case used by the comparison tables.
CoefSummary normal_posterior_beta2_summary(const Dataset& data);

// d beta_hat / d y_row = (X'X)^{-1} x_row: the exact rank-one response of the
// OLS fit to a change in one observation.
Vector ols_response_gradient(const Dataset& data, Index row);

}  // namespace rtreg
