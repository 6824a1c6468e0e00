#pragma once

#include "rtreg/hmc.hpp"
#include "rtreg/posterior.hpp"
#include "rtreg/summary.hpp"

#include <vector>

namespace rtreg {

// Pilot-phase controls for the fit operations. When enabled, the fit walks
// from the OLS initialization to the dominant mode with the scale-mixture
// fixed point (reweighted least squares alternated with the closed-form
// scale update), takes the initial mass from the finite-difference curvature
// there, runs a short pilot chain, and rescales the mass diagonal by the
// pilot SDs. Disable to run the raw config exactly as given.
struct FitTuning {
  bool enabled = true;
  std::int64_t pilot_samples = 2000;
  std::int64_t pilot_burnin = 500;
  int mode_iterations = 200;
};

struct PosteriorFit {
  Summary summary;  // over (beta, sigma), sigma = exp(nu) applied per draw
  Chain chain;      // raw (beta, nu) draws
};

inline const std::vector<double> kDefaultProbs{0.025, 0.5, 0.975};

// Full-posterior fit. Refuses (PropernessError) unless n > p + 1.
PosteriorFit fit_posterior(const Dataset& data, Dof dof, const PriorSpec& prior, const HmcConfig& config,
                           const FitTuning& tuning = {}, const std::vector<double>& probs = kDefaultProbs);

// Limiting-posterior fit with outlier set O. Refuses (PropernessError)
// unless n - |O|(gamma + 1) > p + 1. With |O| = 0 and the same seed this
// reproduces fit_posterior bit for bit.
PosteriorFit fit_limiting_posterior(const Dataset& data, const OutlierSpec& outliers, Dof dof,
                                    const PriorSpec& prior, const HmcConfig& config,
                                    const FitTuning& tuning = {},
                                    const std::vector<double>& probs = kDefaultProbs);

}  // namespace rtreg
