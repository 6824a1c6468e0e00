#pragma once

#include "rtreg/types.hpp"

namespace rtreg {

// Unnormalized log target over theta = [beta; nu], shared by the full
// posterior (empty outlier set) and the limiting posterior in which every
// outlier's likelihood factor is replaced by sigma^gamma. In the Jeffreys
// case the log density is
//   -nu (|O^c| - |O| gamma) + sum_{i in O^c} log f((y_i - x_i' beta) e^{-nu})
// after the change of variable nu = log sigma; a flat prior adds +nu, a
// custom prior adds its own log density plus the same +nu Jacobian term.
//
// logpdf/grad are total: non-finite inputs yield -inf / non-finite outputs
// rather than throwing, so a sampler can reject and continue.
class PosteriorTarget {
 public:
  PosteriorTarget(const Dataset& data, Dof dof, PriorSpec prior);
  PosteriorTarget(const Dataset& data, const OutlierSpec& outliers, Dof dof, PriorSpec prior);

  double logpdf(const Vector& theta) const;
  Vector grad(const Vector& theta) const;

  Index dim() const { return X_.cols() + 1; }
  Index n_kept() const { return X_.rows(); }
  const Matrix& design() const { return X_; }
  const Vector& response() const { return y_; }
  Dof dof() const { return dof_; }
  const PriorSpec& prior() const { return prior_; }
  // |O^c| - |O| gamma, the coefficient of -nu in the Jeffreys log target.
  double nu_coefficient() const { return nu_coeff_; }

 private:
  Matrix X_;
  Vector y_;
  Dof dof_;
  PriorSpec prior_;
  double nu_coeff_;

  double custom_prior_logdensity(const Params& params) const;  // bound-checked
  Vector custom_prior_grad(const Params& params) const;
};

// Direct evaluation operations; these validate inputs and throw, unlike the
// target class above.
double log_posterior(const Dataset& data, const Params& params, Dof dof,
                     const PriorSpec& prior = PriorSpec::jeffreys());
Vector grad_log_posterior(const Dataset& data, const Params& params, Dof dof,
                          const PriorSpec& prior = PriorSpec::jeffreys());
double log_limiting_posterior(const Dataset& data, const OutlierSpec& outliers, const Params& params,
                              Dof dof, const PriorSpec& prior = PriorSpec::jeffreys());
Vector grad_log_limiting_posterior(const Dataset& data, const OutlierSpec& outliers, const Params& params,
                                   Dof dof, const PriorSpec& prior = PriorSpec::jeffreys());

}  // namespace rtreg
