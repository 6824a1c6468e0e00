// Release acceptance harness. Each criterion prints exactly one line,
//   [PASS] criterion  N: <measurements>
// and the process exit status is the number of failed criteria. Criterion 12
// evaluates its literal margin and is expected to fail it on clean data; the
// [INFO] lines after it show the same run against the envelope that accounts
// for the sampling gap between the robust and least-squares estimators.
#include "rtreg/asymptotics.hpp"
#include "rtreg/conditions.hpp"
#include "rtreg/experiments.hpp"
#include "rtreg/fit.hpp"
#include "rtreg/hmc.hpp"
#include "rtreg/ols.hpp"
#include "rtreg/posterior.hpp"
#include "rtreg/quadrature.hpp"
#include "rtreg/rng.hpp"
#include "rtreg/simulate.hpp"
#include "rtreg/student.hpp"
#include "rtreg/summary.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace rtreg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

int g_failures = 0;
std::string g_epilogue;

void run_criterion(int id, const std::function<Outcome()>& body) {
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  if (!outcome.ok) ++g_failures;
  std::printf("[%s] criterion %2d: %s\n", outcome.ok ? "PASS" : "FAIL", id, outcome.detail.c_str());
  if (!g_epilogue.empty()) {
    std::printf("%s\n", g_epilogue.c_str());
    g_epilogue.clear();
  }
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Reference simulated dataset used by the sampler criteria: n = 20, p = 2,
// sequential covariate, beta = (1, 1), sigma = 1, seed fixed once.
Dataset reference_dataset() {
  SimConfig config;
  config.n = 20;
  config.p = 2;
  config.beta_true = Vector::Ones(2);
  config.seed = 1;
  return simulate_dataset(config);
}

struct StandardNormalTarget {
  double logpdf(const Vector& theta) const { return -0.5 * theta.squaredNorm(); }
  Vector grad(const Vector& theta) const { return -theta; }
};

Outcome criterion_scale_ratio() {
  const auto start = Clock::now();
  const ScaleRatio ratio = solve_sigma_star(Dof(1));
  const double elapsed = seconds_since(start);
  const double err = std::abs(ratio.value - 0.6120);
  Outcome out;
  out.ok = err <= 5e-4 && elapsed < 1.0;
  out.detail = "sigma*/sigma0(1) = " + fmt(ratio.value) + ", |diff from 0.6120| = " + fmt(err) +
               " (tol 5e-4), time = " + fmt(elapsed) + "s (cap 1s)";
  return out;
}

Outcome criterion_efficiency_curve() {
  const auto start = Clock::now();
  const std::vector<CurvePoint> curve = emit_curves(CurveKind::phi, 1, 30);
  const double phi50 = phi_factor(Dof(50));
  const double elapsed = seconds_since(start);
  const double phi4 = curve.at(3).value;
  bool decreasing = true;
  for (std::size_t k = 1; k < curve.size(); ++k)
    if (!(curve[k].value < curve[k - 1].value)) decreasing = false;
  Outcome out;
  out.ok = phi4 >= 1.07 && phi4 <= 1.13 && phi50 < 1.02 && decreasing && elapsed < 10.0;
  out.detail = "phi(4) = " + fmt(phi4) + " (in [1.07, 1.13]), phi(50) = " + fmt(phi50) +
               " (< 1.02), strictly decreasing on 1..30 = " + (decreasing ? "yes" : "no") +
               ", time = " + fmt(elapsed) + "s (cap 10s)";
  return out;
}

Outcome criterion_scale_equation_forms() {
  GaussianRng rng(303);
  double worst_gap = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double eta = -3.0 + 6.0 * rng.uniform();
    const int gamma = 1 + static_cast<int>(rng.uniform() * 30.0) % 30;
    const double c = std::exp(2.0 * eta) * gamma;
    const double closed = scale_equation_lhs_closed_form(eta, Dof(gamma));
    const double integral =
        (gamma + 1.0) * normal_expectation([c](double u) { return u * u / (c + u * u); }, {}) - 1.0;
    worst_gap = std::max(worst_gap, std::abs(closed - integral));
  }
  double worst_residual = 0.0;
  for (int gamma = 1; gamma <= 30; ++gamma)
    worst_residual = std::max(worst_residual, std::abs(solve_sigma_star(Dof(gamma)).residual));
  Outcome out;
  out.ok = worst_gap < 1e-8 && worst_residual < 1e-10;
  out.detail = "max |closed - integral| over 50 random (eta, gamma) = " + fmt(worst_gap) +
               " (tol 1e-8), max root residual over gamma 1..30 = " + fmt(worst_residual) + " (tol 1e-10)";
  return out;
}

double gradient_rel_error(const std::function<double(const Params&)>& logpdf,
                          const std::function<Vector(const Params&)>& grad, const Params& at) {
  const Vector g = grad(at);
  const Index dim = at.beta.size() + 1;
  Vector fd(dim);
  for (Index j = 0; j < dim; ++j) {
    Params lo = at;
    Params hi = at;
    const double x = j < at.beta.size() ? at.beta(j) : at.nu;
    const double h = 1e-6 * (1.0 + std::abs(x));
    if (j < at.beta.size()) {
      lo.beta(j) -= h;
      hi.beta(j) += h;
    } else {
      lo.nu -= h;
      hi.nu += h;
    }
    fd(j) = (logpdf(hi) - logpdf(lo)) / (2.0 * h);
  }
  return (g - fd).lpNorm<Eigen::Infinity>() / std::max(1.0, fd.lpNorm<Eigen::Infinity>());
}

Outcome criterion_gradients() {
  const auto start = Clock::now();
  GaussianRng rng(404);
  double worst_full = 0.0;
  double worst_limiting = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    SimConfig sim;
    sim.n = 8 + static_cast<Index>(rng.uniform() * 25.0);
    sim.p = 2 + static_cast<Index>(rng.uniform() * 2.0);
    sim.scheme = CovariateScheme::iid_standard_normal;
    sim.beta_true = Vector::Ones(sim.p);
    sim.seed = 1000 + static_cast<std::uint64_t>(trial);
    const Dataset data = simulate_dataset(sim);
    const Dof dof(1 + static_cast<int>(rng.uniform() * 10.0) % 10);

    Params at;
    at.beta = Vector::Zero(sim.p);
    for (Index j = 0; j < sim.p; ++j) at.beta(j) = 2.0 * rng.normal();
    at.nu = rng.normal();

    worst_full = std::max(
        worst_full,
        gradient_rel_error([&](const Params& q) { return log_posterior(data, q, dof); },
                           [&](const Params& q) { return grad_log_posterior(data, q, dof); }, at));

    const Index out_idx = static_cast<Index>(rng.uniform() * static_cast<double>(sim.n)) % sim.n;
    const OutlierSpec outliers = OutlierSpec::indices({out_idx});
    worst_limiting = std::max(
        worst_limiting,
        gradient_rel_error(
            [&](const Params& q) { return log_limiting_posterior(data, outliers, q, dof); },
            [&](const Params& q) { return grad_log_limiting_posterior(data, outliers, q, dof); }, at));
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.ok = worst_full < 1e-5 && worst_limiting < 1e-5 && elapsed < 5.0;
  out.detail = "max rel error vs central differences over 100 random configurations: full = " +
               fmt(worst_full) + ", limiting = " + fmt(worst_limiting) + " (tol 1e-5), time = " +
               fmt(elapsed) + "s (cap 5s)";
  return out;
}

Outcome criterion_scale_ratio_sign() {
  GaussianRng rng(505);
  int violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 10000; ++trial) {
    const double z = -100.0 + 200.0 * rng.uniform();
    const double s = 1.0 + 99.0 * rng.uniform();
    const Dof dof(1 + static_cast<int>(rng.uniform() * 10.0) % 10);
    const double value = log_scale_ratio(z, s, dof);
    worst = std::max(worst, value);
    if (value > 0.0) ++violations;
  }
  Outcome out;
  out.ok = violations == 0;
  out.detail = "log scale ratio > 0 in " + std::to_string(violations) +
               " of 10000 random (z, s >= 1, gamma in 1..10); max value = " + fmt(worst);
  return out;
}

Outcome criterion_density_ratio_limit() {
  double worst_rel = 0.0;
  for (double sigma : {0.1, 1.0, 10.0}) {
    for (int gamma : {1, 4, 10}) {
      for (double y : {1e6, -1e6}) {
        const double ratio = pdf_ratio(y, 0.0, sigma, Dof(gamma));
        const double limit = std::pow(sigma, gamma);
        worst_rel = std::max(worst_rel, std::abs(ratio / limit - 1.0));
      }
    }
  }
  Outcome out;
  out.ok = worst_rel < 0.01;
  out.detail = "max relative gap between pdf_ratio at |y| = 1e6 and sigma^gamma over the 3x3 grid = " +
               fmt(worst_rel) + " (tol 0.01)";
  return out;
}

Outcome criterion_outlier_limit_agreement() {
  Dataset probe = reference_dataset();
  probe.response(19) = 1e4;
  Outcome out;
  out.ok = true;
  std::ostringstream detail;
  for (int gamma : {1, 4}) {
    const auto start = Clock::now();
    HmcConfig full_cfg;
    full_cfg.seed = 71;
    const PosteriorFit full = fit_posterior(probe, Dof(gamma), PriorSpec::jeffreys(), full_cfg);
    HmcConfig lim_cfg;
    lim_cfg.seed = 72;
    const PosteriorFit lim = fit_limiting_posterior(probe, OutlierSpec::indices({19}), Dof(gamma),
                                                    PriorSpec::jeffreys(), lim_cfg);
    const double elapsed = seconds_since(start);
    const double gap = std::abs(full.summary.mean(1) - lim.summary.mean(1));
    const double margin = 4.0 * std::hypot(full.summary.mcse_mean(1), lim.summary.mcse_mean(1));
    const bool pass = gap <= margin && elapsed < 120.0;
    out.ok = out.ok && pass;
    detail << "gamma=" << gamma << ": |full - limiting| beta_2 mean = " << fmt(gap) << " vs 4*mcse = "
           << fmt(margin) << ", time = " << fmt(elapsed) << "s (cap 120s); ";
  }
  out.detail = detail.str() + "2e5 draws each, outlying response 1e4";
  return out;
}

Outcome criterion_variability_ordering() {
  const auto start = Clock::now();
  const Dataset data = reference_dataset();
  HmcConfig cfg;
  cfg.seed = 8;
  const Table1Result table = table1_experiment(data, 19, {Dof(1), Dof(4), Dof(10)}, cfg, 3);
  const double elapsed = seconds_since(start);

  Outcome out;
  out.ok = elapsed < 300.0;
  std::ostringstream detail;
  double prev_sd = 0.0;
  double prev_mcse = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const Table1Row& row = table.rows.at(k);
    if (!row.error.empty()) {
      out.ok = false;
      detail << "gamma=" << fmt(row.gamma) << ": error '" << row.error << "'; ";
      continue;
    }
    const double pair_margin = 4.0 * std::hypot(row.limiting_mcse_sd, row.reduced_mcse_sd);
    const bool wider = row.limiting_sd >= row.reduced_sd - pair_margin;
    const double step_margin = 4.0 * std::hypot(row.limiting_mcse_sd, prev_mcse);
    const bool growing = k == 0 || row.limiting_sd > prev_sd - step_margin;
    out.ok = out.ok && wider && growing;
    detail << "gamma=" << fmt(row.gamma) << ": limiting sd = " << fmt(row.limiting_sd)
           << (wider ? " >= " : " < ") << "reduced sd = " << fmt(row.reduced_sd) << " (margin "
           << fmt(pair_margin) << ")" << (k > 0 ? (growing ? ", grew" : ", shrank") : "") << "; ";
    prev_sd = row.limiting_sd;
    prev_mcse = row.limiting_mcse_sd;
  }
  out.detail = detail.str() + "time = " + fmt(elapsed) + "s (cap 300s)";
  return out;
}

Outcome criterion_sweep_contract() {
  const Dataset data = reference_dataset();
  const double clean = data.response(19);
  HmcConfig cfg;
  cfg.seed = 9;

  const SweepResult normal_rows =
      sweep_outlier(data, 19, default_y_grid(clean), {GammaChoice::normal()}, cfg, 1);
  const double slope = ols_response_gradient(data, 19)(1);
  const SweepRow& anchor = normal_rows.rows.front();
  double worst_affine = 0.0;
  for (const SweepRow& row : normal_rows.rows) {
    const double predicted = anchor.posterior_mean_beta2 + (row.y_n - anchor.y_n) * slope;
    worst_affine = std::max(worst_affine, std::abs(row.posterior_mean_beta2 - predicted) /
                                              std::max(1.0, std::abs(predicted)));
  }

  const SweepResult robust = sweep_outlier(
      data, 19, {1e4}, {GammaChoice::finite(1), GammaChoice::finite(10)}, cfg, 2);
  const SweepRow& g1_out = robust.rows.at(0);
  const SweepRow& g10_out = robust.rows.at(1);

  const Dataset reduced = make_dataset(data.design.topRows(19), data.response.head(19));
  HmcConfig red_cfg = cfg;
  red_cfg.seed = 91;
  const PosteriorFit red1 = fit_posterior(reduced, Dof(1), PriorSpec::jeffreys(), red_cfg);
  red_cfg.seed = 92;
  const PosteriorFit red10 = fit_posterior(reduced, Dof(10), PriorSpec::jeffreys(), red_cfg);

  const double dev1 = std::abs(g1_out.posterior_mean_beta2 - red1.summary.mean(1));
  const double dev10 = std::abs(g10_out.posterior_mean_beta2 - red10.summary.mean(1));
  const double m_red1 = red1.summary.mcse_mean(1);
  const double m_red10 = red10.summary.mcse_mean(1);
  const double comb_mcse = 4.0 * std::sqrt(g1_out.mcse * g1_out.mcse + m_red1 * m_red1 +
                                           g10_out.mcse * g10_out.mcse + m_red10 * m_red10);
  const double normal_dev = std::abs(slope) * std::abs(1e4 - clean);

  Outcome out;
  out.ok = worst_affine < 1e-9 && (dev1 - dev10) < comb_mcse && dev1 <= 0.01 * normal_dev &&
           dev10 <= 0.01 * normal_dev;
  out.detail = "normal-model affinity residual = " + fmt(worst_affine) +
               " (tol 1e-9); beta_2 mean at y = 1e4 vs reduced-data fit: " +
               "gamma=1 -> " + fmt(dev1) + ", gamma=10 -> " + fmt(dev10) + " (ordering margin " +
               fmt(comb_mcse) + "), normal model -> " + fmt(normal_dev) + " (bound 1% of it)";
  return out;
}

Outcome criterion_condition_checkers() {
  const bool proper = check_properness(20, 2);
  const bool limiting = check_limiting_properness(20, 2, 1, Dof(1));
  const RejectionCheck rejection = check_rejection_condition(20, 2, 1, Dof(1));
  const double breakdown = check_rejection_condition(1000, 2, 1, Dof(1)).breakdown_fraction;
  Outcome out;
  out.ok = proper && limiting && rejection.holds && std::abs(breakdown - 0.498) <= 1e-3;
  out.detail = std::string("n=20, p=2, |O|=1, gamma=1: proper = ") + (proper ? "yes" : "no") +
               ", limiting proper = " + (limiting ? "yes" : "no") + ", rejection holds = " +
               (rejection.holds ? "yes" : "no") + "; breakdown(1000, 2, gamma=1) = " + fmt(breakdown) +
               " (target 0.498 +/- 1e-3)";
  return out;
}

Outcome criterion_sampler_reference_target() {
  const StandardNormalTarget target;
  HmcConfig cfg;
  cfg.init.beta = Vector::Zero(2);
  cfg.init.nu = 0.0;
  cfg.step_size = 0.3;
  cfg.n_leapfrog = 12;
  cfg.n_samples = 100000;
  cfg.n_burnin = 1000;
  cfg.seed = 7;
  const Chain chain = hmc_sample(target, cfg);
  const Chain repeat = hmc_sample(target, cfg);
  const bool reproducible =
      (chain.draws - repeat.draws).norm() == 0.0 && chain.accept_rate == repeat.accept_rate;

  const Summary summary = summarize(chain, kDefaultProbs);
  double worst_mean_ratio = 0.0;
  double worst_sd_err = 0.0;
  for (Index j = 0; j < 3; ++j) {
    worst_mean_ratio = std::max(worst_mean_ratio, std::abs(summary.mean(j)) / (4.0 * summary.mcse_mean(j)));
    worst_sd_err = std::max(worst_sd_err, std::abs(summary.sd(j) - 1.0));
  }
  Outcome out;
  out.ok = worst_mean_ratio < 1.0 && worst_sd_err < 0.05 && reproducible;
  out.detail = "3-dim standard normal, 1e5 draws: max |mean|/(4 mcse) = " + fmt(worst_mean_ratio) +
               " (< 1), max |sd - 1| = " + fmt(worst_sd_err) + " (< 0.05), same-seed bitwise equal = " +
               (reproducible ? "yes" : "no");
  return out;
}

Outcome criterion_large_n_consistency() {
  const auto start = Clock::now();
  SimConfig sim;
  sim.n = 2000;
  sim.p = 2;
  sim.scheme = CovariateScheme::iid_standard_normal;
  sim.beta_true = Vector::Ones(2);
  sim.seed = 12;
  const Dataset data = simulate_dataset(sim);
  const OlsFit ols = ols_fit(data);
  const ScaleRatio ratio = solve_sigma_star(Dof(4));

  HmcConfig cfg;
  cfg.seed = 5;
  const PosteriorFit fit = fit_posterior(data, Dof(4), PriorSpec::jeffreys(), cfg);
  const double elapsed = seconds_since(start);

  Vector gap(3);
  Vector literal_margin(3);
  for (Index j = 0; j < 2; ++j) {
    gap(j) = std::abs(fit.summary.mean(j) - ols.beta_hat(j));
    literal_margin(j) = 4.0 * fit.summary.mcse_mean(j);
  }
  gap(2) = std::abs(fit.summary.mean(2) - ratio.value);
  literal_margin(2) = 4.0 * fit.summary.mcse_mean(2);

  Outcome out;
  out.ok = elapsed < 300.0;
  for (Index j = 0; j < 3; ++j) out.ok = out.ok && gap(j) <= literal_margin(j);
  out.detail = "n=2000 clean data, gamma=4: |beta gap| = (" + fmt(gap(0)) + ", " + fmt(gap(1)) +
               ") vs 4*mcse (" + fmt(literal_margin(0)) + ", " + fmt(literal_margin(1)) +
               "); |sigma - sigma*(4)| = " + fmt(gap(2)) + " vs " + fmt(literal_margin(2)) +
               "; time = " + fmt(elapsed) + "s (cap 300s)";

  // The literal margin ignores that the robust posterior mean and the OLS
  // point estimate are distinct estimators of the same limit: their gap per
  // coefficient has sd sqrt((phi - 1) [ (X'X)^{-1} ]_jj), and the scale
  // estimate fluctuates around sigma* with the usual sandwich sd. Report the
  // same measurements against the envelope that includes those terms.
  const double gamma = 4.0;
  const double phi = phi_factor(Dof(4));
  const Matrix xtx_inv = (data.design.transpose() * data.design).inverse();
  const double c = ratio.value * ratio.value * gamma;
  const double a_term = normal_expectation(
      [c, gamma](double z) {
        const double t = (gamma + 1.0) * z * z / (c + z * z) - 1.0;
        return t * t;
      },
      {});
  const double b_term = normal_expectation(
      [c, gamma](double z) {
        const double d = c + z * z;
        return 2.0 * c * (gamma + 1.0) * z * z / (d * d);
      },
      {});
  const double sigma_gap_sd = ratio.value * std::sqrt(a_term / (b_term * b_term * sim.n));
  bool corrected_ok = true;
  std::ostringstream info;
  info << "[INFO] criterion 12 sampling-gap envelope:";
  for (Index j = 0; j < 3; ++j) {
    const double gap_sd =
        j < 2 ? std::sqrt((phi - 1.0) * xtx_inv(j, j)) : sigma_gap_sd;
    const double envelope = 4.0 * std::hypot(fit.summary.mcse_mean(j), gap_sd);
    corrected_ok = corrected_ok && gap(j) <= envelope;
    info << (j < 2 ? " beta" : " sigma") << (j < 2 ? std::to_string(j + 1) : "") << ": " << fmt(gap(j))
         << " vs " << fmt(envelope) << ";";
  }
  info << " all within envelope = " << (corrected_ok ? "yes" : "no");
  g_epilogue = info.str();
  return out;
}

}  // namespace

int main() {
  run_criterion(1, criterion_scale_ratio);
  run_criterion(2, criterion_efficiency_curve);
  run_criterion(3, criterion_scale_equation_forms);
  run_criterion(4, criterion_gradients);
  run_criterion(5, criterion_scale_ratio_sign);
  run_criterion(6, criterion_density_ratio_limit);
  run_criterion(7, criterion_outlier_limit_agreement);
  run_criterion(8, criterion_variability_ordering);
  run_criterion(9, criterion_sweep_contract);
  run_criterion(10, criterion_condition_checkers);
  run_criterion(11, criterion_sampler_reference_target);
  run_criterion(12, criterion_large_n_consistency);
  std::printf("%d of 12 criteria failed\n", g_failures);
  return g_failures;
}
