#include "rtreg/experiments.hpp"

#include "rtreg/conditions.hpp"
#include "rtreg/rng.hpp"
#include "rtreg/thread_pool.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace rtreg {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Dataset drop_row(const Dataset& data, Index row) {
  const Index n = data.n();
  Matrix design(n - 1, data.p());
  Vector response(n - 1);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    if (i == row) continue;
    design.row(k) = data.design.row(i);
    response(k) = data.response(i);
    ++k;
  }
  return make_dataset(std::move(design), std::move(response));
}

void validate_experiment_inputs(const Dataset& data, Index outlier_index) {
  validate_dataset(data);
  if (data.p() < 2) throw std::invalid_argument("beta_2 experiments require p >= 2");
  if (outlier_index < 0 || outlier_index >= data.n())
    throw std::invalid_argument("outlier index " + std::to_string(outlier_index + 1) + " outside 1.." +
                                std::to_string(data.n()));
}

}  // namespace

double GammaChoice::numeric() const {
  return infinite ? std::numeric_limits<double>::infinity() : static_cast<double>(value);
}

std::vector<double> default_y_grid(double clean_value) {
  std::vector<double> grid{25.0, 50.0, 100.0, 250.0, 1e3, 1e4};
  grid.push_back(clean_value);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

SweepResult sweep_outlier(const Dataset& data, Index outlier_index, const std::vector<double>& y_values,
                          const std::vector<GammaChoice>& gammas, const HmcConfig& hmc, int n_jobs) {
  validate_experiment_inputs(data, outlier_index);
  if (y_values.empty()) throw std::invalid_argument("y_values must be non-empty");
  if (gammas.empty()) throw std::invalid_argument("gammas must be non-empty");
  for (double y : y_values)
    if (!std::isfinite(y)) throw std::invalid_argument("y_values must be finite");
  for (const GammaChoice& g : gammas)
    if (!g.infinite) Dof(g.value);

  std::vector<GammaChoice> gs = gammas;
  std::sort(gs.begin(), gs.end(), [](const GammaChoice& a, const GammaChoice& b) { return a.numeric() < b.numeric(); });
  std::vector<double> ys = y_values;
  std::sort(ys.begin(), ys.end());

  SweepResult result;
  result.rows.resize(gs.size() * ys.size());

  std::vector<std::function<void()>> jobs;
  jobs.reserve(result.rows.size());
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    for (std::size_t yi = 0; yi < ys.size(); ++yi) {
      const std::size_t cell = gi * ys.size() + yi;
      jobs.push_back([&, gi, yi, cell] {
        SweepRow& row = result.rows[cell];
        row.gamma = gs[gi].numeric();
        row.y_n = ys[yi];
        try {
          Dataset probe = data;
          probe.response(outlier_index) = ys[yi];
          if (gs[gi].infinite) {
            const CoefSummary coef = normal_posterior_beta2_summary(probe);
            row.posterior_mean_beta2 = coef.mean;
            row.mcse = 0.0;
          } else {
            HmcConfig cfg = hmc;
            cfg.seed = derive_seed(hmc.seed, cell);
            const PosteriorFit fit = fit_posterior(probe, Dof(gs[gi].value), PriorSpec::jeffreys(), cfg);
            row.posterior_mean_beta2 = fit.summary.mean(1);
            row.mcse = fit.summary.mcse_mean(1);
          }
        } catch (const std::exception& e) {
          row.posterior_mean_beta2 = kNan;
          row.mcse = kNan;
          row.error = e.what();
        }
      });
    }
  }
  run_parallel(jobs, n_jobs);
  return result;
}

Table1Result table1_experiment(const Dataset& data, Index outlier_index, const std::vector<Dof>& gammas,
                               const HmcConfig& hmc, int n_jobs) {
  validate_experiment_inputs(data, outlier_index);
  if (gammas.empty()) throw std::invalid_argument("gammas must be non-empty");

  std::vector<Dof> gs = gammas;
  std::sort(gs.begin(), gs.end(), [](Dof a, Dof b) { return a.gamma < b.gamma; });
  const Dataset reduced = drop_row(data, outlier_index);

  Table1Result result;
  result.rows.resize(gs.size() + 1);

  std::vector<std::function<void()>> jobs;
  jobs.reserve(gs.size());
  for (std::size_t k = 0; k < gs.size(); ++k) {
    jobs.push_back([&, k] {
      Table1Row& row = result.rows[k];
      const Dof dof = gs[k];
      row.gamma = static_cast<double>(dof.gamma);
      try {
        if (!check_limiting_properness(data.n(), data.p(), 1, dof))
          throw PropernessError("limiting posterior is improper: requires n - |O|(gamma + 1) > p + 1 with n = " +
                                std::to_string(data.n()) + ", p = " + std::to_string(data.p()) +
                                ", |O| = 1, gamma = " + std::to_string(dof.gamma));
        if (!check_rejection_condition(data.n(), data.p(), 1, dof).holds)
          throw PropernessError("rejection condition fails for n = " + std::to_string(data.n()) +
                                ", p = " + std::to_string(data.p()) + ", |O| = 1, gamma = " +
                                std::to_string(dof.gamma));
        HmcConfig lim_cfg = hmc;
        lim_cfg.seed = derive_seed(hmc.seed, 2 * k);
        const PosteriorFit lim =
            fit_limiting_posterior(data, OutlierSpec::indices({outlier_index}), dof, PriorSpec::jeffreys(), lim_cfg);
        HmcConfig red_cfg = hmc;
        red_cfg.seed = derive_seed(hmc.seed, 2 * k + 1);
        const PosteriorFit red = fit_posterior(reduced, dof, PriorSpec::jeffreys(), red_cfg);
        row.limiting_mean = lim.summary.mean(1);
        row.limiting_sd = lim.summary.sd(1);
        row.limiting_mcse_mean = lim.summary.mcse_mean(1);
        row.limiting_mcse_sd = lim.summary.mcse_sd(1);
        row.reduced_mean = red.summary.mean(1);
        row.reduced_sd = red.summary.sd(1);
        row.reduced_mcse_mean = red.summary.mcse_mean(1);
        row.reduced_mcse_sd = red.summary.mcse_sd(1);
      } catch (const std::exception& e) {
        row.limiting_mean = row.limiting_sd = row.limiting_mcse_mean = row.limiting_mcse_sd = kNan;
        row.reduced_mean = row.reduced_sd = row.reduced_mcse_mean = row.reduced_mcse_sd = kNan;
        row.error = e.what();
      }
    });
  }
  run_parallel(jobs, n_jobs);

  Table1Row& normal = result.rows.back();
  normal.gamma = std::numeric_limits<double>::infinity();
  normal.limiting_mean = normal.limiting_sd = normal.limiting_mcse_mean = normal.limiting_mcse_sd = kNan;
  try {
    const CoefSummary coef = normal_posterior_beta2_summary(reduced);
    normal.reduced_mean = coef.mean;
    normal.reduced_sd = coef.sd;
    normal.reduced_mcse_mean = 0.0;
    normal.reduced_mcse_sd = 0.0;
  } catch (const std::exception& e) {
    normal.reduced_mean = normal.reduced_sd = normal.reduced_mcse_mean = normal.reduced_mcse_sd = kNan;
    normal.error = e.what();
  }
  return result;
}

std::vector<CurvePoint> emit_curves(CurveKind kind, int gamma_min, int gamma_max, const QuadratureSpec& spec) {
  if (gamma_min < 1) throw std::invalid_argument("gamma_min must be >= 1");
  if (gamma_max < gamma_min) throw std::invalid_argument("gamma_max must be >= gamma_min");
  std::vector<CurvePoint> points;
  points.reserve(static_cast<std::size_t>(gamma_max - gamma_min) + 1);
  for (int g = gamma_min; g <= gamma_max; ++g) {
    const Dof dof(g);
    const double value = kind == CurveKind::sigma_star ? solve_sigma_star(dof, spec).value : phi_factor(dof, spec);
    points.push_back({g, value});
  }
  return points;
}

}  // namespace rtreg
