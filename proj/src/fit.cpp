#include "rtreg/fit.hpp"

#include "rtreg/conditions.hpp"
#include "rtreg/ols.hpp"

#include <cmath>
#include <string>

namespace rtreg {

namespace {

// EM fixed point for the Student likelihood: weights w_i = (g+1)/(g + r_i^2/s^2),
// then weighted least squares for beta and s^2 = sum w_i r_i^2 / scale_count.
Params mode_search(const PosteriorTarget& target, const Params& start, int iterations) {
  const Matrix& X = target.design();
  const Vector& y = target.response();
  const double g = target.dof().gamma;
  // Stationarity of the nu-gradient gives s^2 = sum w r^2 / coeff for the
  // Jeffreys target; the flat/custom +nu term shifts the denominator by one.
  double scale_count = target.nu_coefficient();
  if (target.prior().kind != PriorKind::jeffreys && scale_count > 1.0) scale_count -= 1.0;

  Vector beta = start.beta;
  Vector r = y - X * beta;
  double s2 = std::max(std::exp(2.0 * start.nu), 1e-300);
  for (int it = 0; it < iterations; ++it) {
    const Eigen::ArrayXd w = (g + 1.0) / (g + r.array().square() / s2);
    const Matrix xtw = X.transpose() * w.matrix().asDiagonal();
    const Vector beta_next = (xtw * X).ldlt().solve(xtw * y);
    r = y - X * beta_next;
    const double s2_next = std::max((w * r.array().square()).sum() / scale_count, 1e-300);
    const double move = (beta_next - beta).norm() / (1.0 + beta.norm()) +
                        std::abs(std::log(s2_next / s2));
    beta = beta_next;
    s2 = s2_next;
    if (move < 1e-13) break;
  }
  return {beta, 0.5 * std::log(s2)};
}

Vector curvature_mass(const PosteriorTarget& target, const Params& mode) {
  const Index dim = target.dim();
  Vector theta(dim);
  theta << mode.beta, mode.nu;
  Vector mass(dim);
  Vector probe = theta;
  for (Index j = 0; j < dim; ++j) {
    const double h = 1e-4 * (1.0 + std::abs(theta(j)));
    probe(j) = theta(j) + h;
    const double up = target.grad(probe)(j);
    probe(j) = theta(j) - h;
    const double down = target.grad(probe)(j);
    probe(j) = theta(j);
    const double curv = -(up - down) / (2.0 * h);
    mass(j) = (std::isfinite(curv) && curv > 0.0) ? curv : 1.0;
  }
  return mass;
}

PosteriorFit run_fit(const PosteriorTarget& target, const Params& ols_init, const HmcConfig& config,
                     const FitTuning& tuning, const std::vector<double>& probs) {
  const Index p = target.design().cols();
  HmcConfig main_config = config;
  if (main_config.init.beta.size() == 0) main_config.init = ols_init;
  if (main_config.init.beta.size() != p)
    throw std::invalid_argument("init.beta has length " + std::to_string(main_config.init.beta.size()) +
                                ", expected " + std::to_string(p));

  if (tuning.enabled) {
    const Params mode = mode_search(target, main_config.init, tuning.mode_iterations);
    const Vector mass0 =
        config.mass_diagonal.size() ? config.mass_diagonal : curvature_mass(target, mode);

    HmcConfig pilot = main_config;
    pilot.n_samples = tuning.pilot_samples;
    pilot.n_burnin = tuning.pilot_burnin;
    pilot.seed = derive_seed(config.seed, 0x70696C6Ful);  // pilot stream
    pilot.mass_diagonal = mass0;
    pilot.init = mode;
    const Chain warm = hmc_sample(target, pilot);

    Vector mass(p + 1);
    const Vector pilot_mean = warm.draws.colwise().mean();
    for (Index j = 0; j <= p; ++j) {
      const double sd = std::sqrt((warm.draws.col(j).array() - pilot_mean(j)).square().sum() /
                                  static_cast<double>(warm.draws.rows() - 1));
      mass(j) = sd > 1e-12 ? 1.0 / (sd * sd) : mass0(j);
    }
    main_config.mass_diagonal = mass;
    const Vector last = warm.draws.row(warm.draws.rows() - 1).transpose();
    main_config.init = {last.head(p), last(p)};
  }

  PosteriorFit fit;
  fit.chain = hmc_sample(target, main_config);
  Matrix transformed = fit.chain.draws;
  transformed.col(p) = transformed.col(p).array().exp();
  fit.summary = summarize_draws(transformed, probs);
  return fit;
}

Params ols_params(const Dataset& data) {
  const OlsFit ols = ols_fit(data);
  const double scale = std::sqrt(ols.residual_sumsq / static_cast<double>(data.n()));
  return {ols.beta_hat, std::log(std::max(scale, 1e-8))};
}

Dataset drop_rows(const Dataset& data, const std::vector<Index>& rows) {
  std::vector<bool> dropped(static_cast<std::size_t>(data.n()), false);
  for (Index i : rows) dropped[static_cast<std::size_t>(i)] = true;
  Dataset out;
  out.design.resize(data.n() - static_cast<Index>(rows.size()), data.p());
  out.response.resize(out.design.rows());
  Index k = 0;
  for (Index i = 0; i < data.n(); ++i) {
    if (dropped[static_cast<std::size_t>(i)]) continue;
    out.design.row(k) = data.design.row(i);
    out.response(k) = data.response(i);
    ++k;
  }
  return out;
}

}  // namespace

PosteriorFit fit_posterior(const Dataset& data, Dof dof, const PriorSpec& prior, const HmcConfig& config,
                           const FitTuning& tuning, const std::vector<double>& probs) {
  validate_dataset(data);
  if (!check_properness(data.n(), data.p()))
    throw PropernessError("improper posterior: requires n > p + 1, got n = " + std::to_string(data.n()) +
                          ", p = " + std::to_string(data.p()));
  const PosteriorTarget target(data, dof, prior);
  return run_fit(target, ols_params(data), config, tuning, probs);
}

PosteriorFit fit_limiting_posterior(const Dataset& data, const OutlierSpec& outliers, Dof dof,
                                    const PriorSpec& prior, const HmcConfig& config,
                                    const FitTuning& tuning, const std::vector<double>& probs) {
  validate_dataset(data);
  validate_outliers(outliers, data.n());
  const auto n_out = static_cast<std::int64_t>(outliers.outliers.size());
  if (!check_limiting_properness(data.n(), data.p(), n_out, dof))
    throw PropernessError("improper limiting posterior: requires n - |O|(gamma + 1) > p + 1, got n = " +
                          std::to_string(data.n()) + ", p = " + std::to_string(data.p()) + ", |O| = " +
                          std::to_string(n_out) + ", gamma = " + std::to_string(dof.gamma));
  const PosteriorTarget target(data, outliers, dof, prior);
  return run_fit(target, ols_params(drop_rows(data, outliers.outliers)), config, tuning, probs);
}

}  // namespace rtreg
