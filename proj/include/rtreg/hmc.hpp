#pragma once

#include "rtreg/errors.hpp"
#include "rtreg/rng.hpp"
#include "rtreg/types.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace rtreg {

struct HmcConfig {
  double step_size = 0.05;
  int n_leapfrog = 20;
  std::int64_t n_samples = 200000;
  std::int64_t n_burnin = 20000;
  std::uint64_t seed = 1;
  Vector mass_diagonal;  // empty selects the identity
  Params init;           // init.beta fixes the dimension: theta = [beta; nu]
};

struct Chain {
  Matrix draws;  // n_samples x dim, post burn-in
  double accept_rate = 0.0;
  std::uint64_t seed = 0;
};

inline void validate_config(const HmcConfig& config) {
  if (!(config.step_size > 0.0)) throw std::invalid_argument("step_size must be positive");
  if (config.n_leapfrog < 1) throw std::invalid_argument("n_leapfrog must be >= 1");
  if (config.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (config.n_burnin < 0) throw std::invalid_argument("n_burnin must be >= 0");
  if (!config.init.beta.allFinite() || !std::isfinite(config.init.nu))
    throw std::invalid_argument("initial point must be finite");
  const Index dim = config.init.beta.size() + 1;
  if (config.mass_diagonal.size() != 0) {
    if (config.mass_diagonal.size() != dim)
      throw std::invalid_argument("mass_diagonal has length " + std::to_string(config.mass_diagonal.size()) +
                                  ", expected " + std::to_string(dim));
    if (!(config.mass_diagonal.minCoeff() > 0.0))
      throw std::invalid_argument("mass_diagonal entries must be positive");
  }
}

// One leapfrog trajectory in place. Returns false as soon as a non-finite
// gradient or position appears, so the caller can reject without crashing.
template <class Target>
bool leapfrog_trajectory(const Target& target, Vector& theta, Vector& momentum, double step_size,
                         int n_steps, const Vector& inv_mass) {
  Vector g = target.grad(theta);
  if (!g.allFinite()) return false;
  momentum += 0.5 * step_size * g;
  for (int l = 0; l < n_steps; ++l) {
    theta += step_size * inv_mass.cwiseProduct(momentum);
    if (!theta.allFinite()) return false;
    g = target.grad(theta);
    if (!g.allFinite()) return false;
    momentum += (l + 1 < n_steps ? step_size : 0.5 * step_size) * g;
  }
  return true;
}

// Metropolis-adjusted leapfrog HMC. Per iteration: draw momentum ~
// Normal(0, mass), integrate n_leapfrog steps of size step_size, accept with
// probability min(1, exp(delta H)). Deterministic given the seed; burn-in
// iterations are discarded. Non-finite log density at the initial point is
// an error; non-finite values mid-trajectory only reject that proposal.
template <class Target>
Chain hmc_sample(const Target& target, const HmcConfig& config) {
  validate_config(config);
  const Index dim = config.init.beta.size() + 1;
  Vector theta(dim);
  theta << config.init.beta, config.init.nu;
  const Vector mass = config.mass_diagonal.size() ? config.mass_diagonal : Vector::Ones(dim);
  const Vector sqrt_mass = mass.cwiseSqrt();
  const Vector inv_mass = mass.cwiseInverse();

  double lp = target.logpdf(theta);
  if (!std::isfinite(lp)) throw NumericalError("non-finite log density at the HMC initial point");

  GaussianRng rng(config.seed);
  Matrix draws(config.n_samples, dim);
  const std::int64_t total = config.n_samples + config.n_burnin;
  std::int64_t accepted = 0;
  Vector momentum(dim), prop(dim), prop_momentum(dim);
  for (std::int64_t it = 0; it < total; ++it) {
    for (Index j = 0; j < dim; ++j) momentum(j) = sqrt_mass(j) * rng.normal();
    const double k0 = 0.5 * momentum.cwiseProduct(inv_mass).dot(momentum);
    prop = theta;
    prop_momentum = momentum;
    if (leapfrog_trajectory(target, prop, prop_momentum, config.step_size, config.n_leapfrog, inv_mass)) {
      const double lp_prop = target.logpdf(prop);
      if (std::isfinite(lp_prop)) {
        const double k1 = 0.5 * prop_momentum.cwiseProduct(inv_mass).dot(prop_momentum);
        if (std::log(rng.uniform()) < (lp_prop - k1) - (lp - k0)) {
          theta.swap(prop);
          lp = lp_prop;
          ++accepted;
        }
      }
    }
    if (it >= config.n_burnin) draws.row(it - config.n_burnin) = theta;
  }
  return {std::move(draws), static_cast<double>(accepted) / static_cast<double>(total), config.seed};
}

}  // namespace rtreg
