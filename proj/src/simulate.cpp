#include "rtreg/simulate.hpp"

#include "rtreg/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rtreg {

void validate_sim_config(const SimConfig& config) {
  if (config.n < 1 || config.p < 1) throw std::invalid_argument("simulation requires n >= 1 and p >= 1");
  if (config.n <= config.p + 1)
    throw std::invalid_argument("simulation requires n > p + 1; got n = " + std::to_string(config.n) +
                                ", p = " + std::to_string(config.p));
  if (config.beta_true.size() != config.p)
    throw std::invalid_argument("beta_true must have length p = " + std::to_string(config.p));
  if (!config.beta_true.allFinite()) throw std::invalid_argument("beta_true must be finite");
  if (!(config.sigma_true >= 0.0) || !std::isfinite(config.sigma_true))
    throw std::invalid_argument("sigma_true must be non-negative and finite");
  if (config.scheme == CovariateScheme::sequential && config.p != 2)
    throw std::invalid_argument("sequential covariates require p = 2");
}

Dataset simulate_dataset(const SimConfig& config) {
  validate_sim_config(config);
  GaussianRng rng(config.seed);

  Matrix design(config.n, config.p);
  design.col(0).setOnes();
  switch (config.scheme) {
    case CovariateScheme::sequential:
      for (Index i = 0; i < config.n; ++i) design(i, 1) = static_cast<double>(i + 1);
      break;
    case CovariateScheme::iid_standard_normal:
      for (Index j = 1; j < config.p; ++j)
        for (Index i = 0; i < config.n; ++i) design(i, j) = rng.normal();
      break;
  }

  Vector errors(config.n);
  for (Index i = 0; i < config.n; ++i) errors(i) = rng.normal();

  Vector response = design * config.beta_true + config.sigma_true * errors;
  return make_dataset(std::move(design), std::move(response));
}

}  // namespace rtreg
