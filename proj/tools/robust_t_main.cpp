#include "rtreg/errors.hpp"
#include "rtreg/fit.hpp"
#include "rtreg/io.hpp"
#include "rtreg/simulate.hpp"
#include "rtreg/version.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace rtreg;

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

TableFormat parse_format(const std::string& text) {
  if (text == "csv") return TableFormat::csv;
  if (text == "json") return TableFormat::json;
  throw std::invalid_argument("--format must be csv or json");
}

int parse_finite_gamma(const std::string& text, const std::string& context) {
  int v{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last)
    throw std::invalid_argument(context + " must be a positive integer, got '" + text + "'");
  return v;
}

GammaChoice parse_gamma_choice(const std::string& text) {
  if (text == "inf") return GammaChoice::normal();
  const int g = parse_finite_gamma(text, "--gammas entry");
  Dof dof(g);
  return GammaChoice::finite(dof.gamma);
}

Index to_zero_based(std::int64_t index, Index n, const std::string& flag) {
  if (index < 1 || index > n)
    throw std::invalid_argument(flag + " is 1-based and must lie in 1.." + std::to_string(n) + ", got " +
                                std::to_string(index));
  return static_cast<Index>(index - 1);
}

struct SamplerFlags {
  std::string gamma = "4";
  std::string prior = "jeffreys";
  std::uint64_t seed = 1;
  std::int64_t samples = 200000;
  std::int64_t burnin = -1;  // -1 selects samples / 10
  double step_size = 0.05;
  int leapfrog = 20;
  bool raw = false;
};

void add_sampler_flags(CLI::App* cmd, SamplerFlags& flags, bool with_gamma = true) {
  if (with_gamma) cmd->add_option("--gamma", flags.gamma, "Degrees of freedom (positive integer)");
  cmd->add_option("--prior", flags.prior, "Prior on (beta, sigma)")
      ->check(CLI::IsMember({"jeffreys", "flat"}));
  cmd->add_option("--seed", flags.seed, "RNG seed");
  cmd->add_option("--samples", flags.samples, "Post burn-in HMC draws");
  cmd->add_option("--burnin", flags.burnin, "Burn-in iterations (default samples/10)");
  cmd->add_option("--step-size", flags.step_size, "Leapfrog step size");
  cmd->add_option("--leapfrog", flags.leapfrog, "Leapfrog steps per proposal");
  cmd->add_flag("--raw", flags.raw, "Skip mode search, curvature mass and pilot tuning");
}

HmcConfig to_config(const SamplerFlags& flags) {
  HmcConfig config;
  config.step_size = flags.step_size;
  config.n_leapfrog = flags.leapfrog;
  config.n_samples = flags.samples;
  config.n_burnin = flags.burnin >= 0 ? flags.burnin : flags.samples / 10;
  config.seed = flags.seed;
  return config;
}

PriorSpec to_prior(const SamplerFlags& flags) {
  return flags.prior == "flat" ? PriorSpec::flat() : PriorSpec::jeffreys();
}

int run(int argc, char** argv) {
  CLI::App app{"Bayesian linear regression with Student-t errors"};
  app.set_version_flag("--version", std::string("robust-t v") + kVersion);
  app.require_subcommand(1);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic normal-error dataset");
  std::int64_t sim_n = 20;
  std::int64_t sim_p = 2;
  std::vector<double> sim_beta;
  double sim_sigma = 1.0;
  std::string sim_scheme = "sequential";
  std::uint64_t sim_seed = 1;
  std::string sim_out = "-";
  sim_cmd->add_option("--n", sim_n, "Number of observations");
  sim_cmd->add_option("--p", sim_p, "Number of coefficients (including intercept)");
  sim_cmd->add_option("--beta", sim_beta, "True coefficients (default all 1)")->delimiter(',');
  sim_cmd->add_option("--sigma", sim_sigma, "True error scale");
  sim_cmd->add_option("--scheme", sim_scheme, "Covariate scheme")
      ->check(CLI::IsMember({"sequential", "iid-normal"}));
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--out", sim_out, "Output path ('-' for stdout)");

  // fit / limit-fit
  auto* fit_cmd = app.add_subcommand("fit", "Sample the full posterior");
  SamplerFlags fit_flags;
  std::string fit_data;
  std::string fit_out = "-";
  std::string fit_format = "csv";
  fit_cmd->add_option("--data", fit_data, "Dataset CSV")->required();
  add_sampler_flags(fit_cmd, fit_flags);
  fit_cmd->add_option("--out", fit_out, "Output path ('-' for stdout)");
  fit_cmd->add_option("--format", fit_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* lim_cmd = app.add_subcommand("limit-fit", "Sample the limiting posterior given an outlier set");
  SamplerFlags lim_flags;
  std::string lim_data;
  std::string lim_out = "-";
  std::string lim_format = "csv";
  std::vector<std::int64_t> lim_outliers;
  lim_cmd->add_option("--data", lim_data, "Dataset CSV")->required();
  lim_cmd->add_option("--outlier-index", lim_outliers, "1-based outlier row indices")
      ->required()
      ->delimiter(',');
  add_sampler_flags(lim_cmd, lim_flags);
  lim_cmd->add_option("--out", lim_out, "Output path ('-' for stdout)");
  lim_cmd->add_option("--format", lim_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // ols
  auto* ols_cmd = app.add_subcommand("ols", "Normal-model baseline fit");
  std::string ols_data;
  std::string ols_out = "-";
  std::string ols_format = "csv";
  std::uint64_t ols_seed = 1;
  ols_cmd->add_option("--data", ols_data, "Dataset CSV")->required();
  ols_cmd->add_option("--seed", ols_seed, "Seed recorded in the output header");
  ols_cmd->add_option("--out", ols_out, "Output path ('-' for stdout)");
  ols_cmd->add_option("--format", ols_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // sweep-outlier
  auto* sweep_cmd = app.add_subcommand("sweep-outlier", "Posterior mean of beta2 over outlying y values");
  SamplerFlags sweep_flags;
  std::string sweep_data;
  std::string sweep_out = "-";
  std::string sweep_format = "csv";
  std::int64_t sweep_index = 0;
  std::vector<double> sweep_y;
  std::vector<std::string> sweep_gammas{"1", "10", "inf"};
  int sweep_jobs = 1;
  sweep_cmd->add_option("--data", sweep_data, "Dataset CSV")->required();
  sweep_cmd->add_option("--outlier-index", sweep_index, "1-based row whose response is swept")->required();
  sweep_cmd->add_option("--y-values", sweep_y, "Response grid (default: clean value plus fixed probes)")
      ->delimiter(',');
  sweep_cmd->add_option("--gammas", sweep_gammas, "Degrees-of-freedom list; 'inf' selects the normal model")
      ->delimiter(',');
  add_sampler_flags(sweep_cmd, sweep_flags, false);
  sweep_cmd->add_option("--jobs", sweep_jobs, "Parallel sweep cells");
  sweep_cmd->add_option("--out", sweep_out, "Output path ('-' for stdout)");
  sweep_cmd->add_option("--format", sweep_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // table1
  auto* table_cmd = app.add_subcommand("table1", "Limiting posterior vs reduced-data posterior per gamma");
  SamplerFlags table_flags;
  std::string table_data;
  std::string table_out = "-";
  std::string table_format = "csv";
  std::int64_t table_index = 0;
  std::vector<std::string> table_gammas{"1", "4", "10"};
  int table_jobs = 1;
  table_cmd->add_option("--data", table_data, "Dataset CSV")->required();
  table_cmd->add_option("--outlier-index", table_index, "1-based outlying row")->required();
  table_cmd->add_option("--gammas", table_gammas, "Degrees-of-freedom list (finite)")->delimiter(',');
  add_sampler_flags(table_cmd, table_flags, false);
  table_cmd->add_option("--jobs", table_jobs, "Parallel rows");
  table_cmd->add_option("--out", table_out, "Output path ('-' for stdout)");
  table_cmd->add_option("--format", table_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // curves
  auto* star_cmd = app.add_subcommand("sigma-star", "Pseudo-true scale ratio as a function of gamma");
  auto* phi_cmd = app.add_subcommand("phi", "Asymptotic efficiency factor as a function of gamma");
  int star_min = 1, star_max = 30, phi_min = 1, phi_max = 30;
  std::string star_out = "-", phi_out = "-", star_format = "csv", phi_format = "csv";
  std::uint64_t star_seed = 1, phi_seed = 1;
  star_cmd->add_option("--gamma-min", star_min, "Smallest gamma");
  star_cmd->add_option("--gamma-max", star_max, "Largest gamma");
  star_cmd->add_option("--seed", star_seed, "Seed recorded in the output header");
  star_cmd->add_option("--out", star_out, "Output path ('-' for stdout)");
  star_cmd->add_option("--format", star_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  phi_cmd->add_option("--gamma-min", phi_min, "Smallest gamma");
  phi_cmd->add_option("--gamma-max", phi_max, "Largest gamma");
  phi_cmd->add_option("--seed", phi_seed, "Seed recorded in the output header");
  phi_cmd->add_option("--out", phi_out, "Output path ('-' for stdout)");
  phi_cmd->add_option("--format", phi_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // check
  auto* check_cmd = app.add_subcommand("check", "Properness and rejection condition checkers");
  std::int64_t check_n = 0, check_p = 0, check_outliers = 0;
  std::string check_gamma = "1";
  std::string check_out = "-";
  std::string check_format = "csv";
  std::uint64_t check_seed = 1;
  check_cmd->add_option("--n", check_n, "Number of observations")->required();
  check_cmd->add_option("--p", check_p, "Number of coefficients")->required();
  check_cmd->add_option("--n-outliers", check_outliers, "Outlier count |O|");
  check_cmd->add_option("--gamma", check_gamma, "Degrees of freedom (positive integer)");
  check_cmd->add_option("--seed", check_seed, "Seed recorded in the output header");
  check_cmd->add_option("--out", check_out, "Output path ('-' for stdout)");
  check_cmd->add_option("--format", check_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (sim_cmd->parsed()) {
    SimConfig config;
    config.n = static_cast<Index>(sim_n);
    config.p = static_cast<Index>(sim_p);
    config.beta_true = sim_beta.empty() ? Vector(Vector::Ones(config.p))
                                        : Vector(Eigen::Map<const Vector>(sim_beta.data(),
                                                                          static_cast<Index>(sim_beta.size())));
    config.sigma_true = sim_sigma;
    config.scheme =
        sim_scheme == "sequential" ? CovariateScheme::sequential : CovariateScheme::iid_standard_normal;
    config.seed = sim_seed;
    const Dataset data = simulate_dataset(config);
    with_output(sim_out, [&](std::ostream& out) { write_dataset(out, data); });
    return 0;
  }

  if (fit_cmd->parsed()) {
    if (fit_flags.gamma == "inf")
      throw std::invalid_argument("--gamma inf has a closed form; use the ols subcommand");
    const Dataset data = read_dataset_file(fit_data);
    const Dof dof(parse_finite_gamma(fit_flags.gamma, "--gamma"));
    FitTuning tuning;
    tuning.enabled = !fit_flags.raw;
    const PosteriorFit fit = fit_posterior(data, dof, to_prior(fit_flags), to_config(fit_flags), tuning);
    std::cerr << "accept rate " << fit.chain.accept_rate << "\n";
    const std::vector<FitReportRow> rows = fit_report_rows(fit.summary, data.p());
    with_output(fit_out, [&](std::ostream& out) {
      emit_fit_report(out, rows, parse_format(fit_format), fit_flags.seed);
    });
    return 0;
  }

  if (lim_cmd->parsed()) {
    if (lim_flags.gamma == "inf")
      throw std::invalid_argument("--gamma inf has a closed form; use the ols subcommand");
    const Dataset data = read_dataset_file(lim_data);
    const Dof dof(parse_finite_gamma(lim_flags.gamma, "--gamma"));
    std::vector<Index> rows0;
    rows0.reserve(lim_outliers.size());
    for (std::int64_t i : lim_outliers) rows0.push_back(to_zero_based(i, data.n(), "--outlier-index"));
    FitTuning tuning;
    tuning.enabled = !lim_flags.raw;
    const PosteriorFit fit = fit_limiting_posterior(data, OutlierSpec::indices(std::move(rows0)), dof,
                                                    to_prior(lim_flags), to_config(lim_flags), tuning);
    std::cerr << "accept rate " << fit.chain.accept_rate << "\n";
    const std::vector<FitReportRow> rows = fit_report_rows(fit.summary, data.p());
    with_output(lim_out, [&](std::ostream& out) {
      emit_fit_report(out, rows, parse_format(lim_format), lim_flags.seed);
    });
    return 0;
  }

  if (ols_cmd->parsed()) {
    const Dataset data = read_dataset_file(ols_data);
    const OlsFit fit = ols_fit(data);
    std::cerr << "residual sum of squares " << fit.residual_sumsq << "\n";
    const std::vector<OlsReportRow> rows = ols_report_rows(fit);
    with_output(ols_out, [&](std::ostream& out) {
      emit_ols_report(out, rows, parse_format(ols_format), ols_seed);
    });
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const Dataset data = read_dataset_file(sweep_data);
    const Index row = to_zero_based(sweep_index, data.n(), "--outlier-index");
    std::vector<GammaChoice> gammas;
    gammas.reserve(sweep_gammas.size());
    for (const std::string& g : sweep_gammas) gammas.push_back(parse_gamma_choice(g));
    const std::vector<double> ys = sweep_y.empty() ? default_y_grid(data.response(row)) : sweep_y;
    const SweepResult result = sweep_outlier(data, row, ys, gammas, to_config(sweep_flags), sweep_jobs);
    with_output(sweep_out, [&](std::ostream& out) {
      emit_sweep(out, result, parse_format(sweep_format), sweep_flags.seed);
    });
    return 0;
  }

  if (table_cmd->parsed()) {
    const Dataset data = read_dataset_file(table_data);
    const Index row = to_zero_based(table_index, data.n(), "--outlier-index");
    std::vector<Dof> gammas;
    gammas.reserve(table_gammas.size());
    for (const std::string& g : table_gammas) {
      if (g == "inf")
        throw std::invalid_argument("table1 gammas must be finite; the normal row is always appended");
      gammas.push_back(Dof(parse_finite_gamma(g, "--gammas entry")));
    }
    const Table1Result result = table1_experiment(data, row, gammas, to_config(table_flags), table_jobs);
    with_output(table_out, [&](std::ostream& out) {
      emit_table1(out, result, parse_format(table_format), table_flags.seed);
    });
    return 0;
  }

  if (star_cmd->parsed() || phi_cmd->parsed()) {
    const bool star = star_cmd->parsed();
    const CurveKind kind = star ? CurveKind::sigma_star : CurveKind::phi;
    const std::vector<CurvePoint> points =
        emit_curves(kind, star ? star_min : phi_min, star ? star_max : phi_max);
    with_output(star ? star_out : phi_out, [&](std::ostream& out) {
      emit_curve(out, points, parse_format(star ? star_format : phi_format), star ? star_seed : phi_seed);
    });
    return 0;
  }

  if (check_cmd->parsed()) {
    const Dof dof(parse_finite_gamma(check_gamma, "--gamma"));
    const CheckReport report = run_checks(check_n, check_p, check_outliers, dof);
    with_output(check_out, [&](std::ostream& out) {
      emit_check_report(out, report, parse_format(check_format), check_seed);
    });
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const PropernessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
