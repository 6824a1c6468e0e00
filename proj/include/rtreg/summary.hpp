#pragma once

#include "rtreg/hmc.hpp"

#include <map>
#include <vector>

namespace rtreg {

struct Summary {
  Vector mean;
  Vector sd;
  Vector ess;
  Vector mcse_mean;  // sd / sqrt(ess)
  Vector mcse_sd;    // sd / sqrt(2 ess), normal-approximation error of the SD itself
  std::map<double, Vector> quantiles;
};

// Effective sample size by the initial-positive-sequence truncation: sum
// paired autocorrelations Gamma_k = rho_{2k} + rho_{2k+1} until the first
// non-positive pair. Clamped to (0, n]; a constant series reports n.
double ess_initial_positive(const Eigen::Ref<const Vector>& x);

// Type-7 sample quantile (linear interpolation on the sorted values).
double quantile_type7(const Eigen::Ref<const Vector>& x, double prob);

Summary summarize_draws(const Matrix& draws, const std::vector<double>& probs);
Summary summarize(const Chain& chain, const std::vector<double>& probs);

}  // namespace rtreg
