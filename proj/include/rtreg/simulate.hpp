#pragma once

#include "rtreg/types.hpp"

#include <cstdint>

namespace rtreg {

enum class CovariateScheme { sequential, iid_standard_normal };

// Synthetic normal-error regression data. The first design column is always
// the intercept; `sequential` fills the second column with 1..n and requires
// p == 2, `iid_standard_normal` draws columns 2..p from N(0, 1).
struct SimConfig {
  Index n = 0;
  Index p = 0;
  Vector beta_true;
  double sigma_true = 1.0;
  CovariateScheme scheme = CovariateScheme::sequential;
  std::uint64_t seed = 1;
};

void validate_sim_config(const SimConfig& config);

// Covariates are drawn before the error vector, so datasets sharing a seed
// and scheme share a design regardless of beta_true and sigma_true.
Dataset simulate_dataset(const SimConfig& config);

}  // namespace rtreg
