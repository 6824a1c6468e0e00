#pragma once

#include "rtreg/asymptotics.hpp"
#include "rtreg/fit.hpp"
#include "rtreg/ols.hpp"
#include "rtreg/types.hpp"

#include <string>
#include <vector>

namespace rtreg {

// Degrees-of-freedom choice for experiment grids; infinite selects the
// closed-form normal model.
struct GammaChoice {
  bool infinite = false;
  int value = 1;

  static GammaChoice finite(int gamma) { return {false, gamma}; }
  static GammaChoice normal() { return {true, 0}; }
  double numeric() const;
};

struct SweepRow {
  double gamma = 0.0;  // +inf for the normal model
  double y_n = 0.0;
  double posterior_mean_beta2 = 0.0;
  double mcse = 0.0;  // 0 exactly on normal rows
  std::string error;  // empty on success
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by (gamma, y_n)
};

struct Table1Row {
  double gamma = 0.0;  // +inf marks the normal-model reduced row
  double limiting_mean = 0.0;
  double limiting_sd = 0.0;
  double limiting_mcse_mean = 0.0;
  double limiting_mcse_sd = 0.0;
  double reduced_mean = 0.0;
  double reduced_sd = 0.0;
  double reduced_mcse_mean = 0.0;
  double reduced_mcse_sd = 0.0;
  std::string error;
};

struct Table1Result {
  std::vector<Table1Row> rows;  // finite gammas ascending, normal row last
};

// Default sweep grid for the outlying response: the current (clean) value
// plus fixed probe points out to 1e4, sorted and deduplicated.
std::vector<double> default_y_grid(double clean_value);

// Posterior mean of beta_2 as the response at outlier_index (0-based) moves
// over y_values, for each gamma. Finite gamma rows come from the sampler and
// carry its mcse; infinite rows use the closed-form normal posterior with
// mcse 0. Cells are independent jobs with per-cell derived seeds, so the
// result is byte-identical for any n_jobs. A cell whose configuration is
// refused (properness, too-small n) becomes an error row and the run
// continues.
SweepResult sweep_outlier(const Dataset& data, Index outlier_index, const std::vector<double>& y_values,
                          const std::vector<GammaChoice>& gammas, const HmcConfig& hmc, int n_jobs = 1);

// Limiting posterior on the full dataset with O = {outlier_index} against the
// full posterior on the dataset with that row deleted, per gamma, for beta_2.
// Gammas failing the limiting-properness or rejection condition become error
// rows. The final row is the normal model on the reduced data (gamma = inf,
// limiting columns NaN).
Table1Result table1_experiment(const Dataset& data, Index outlier_index, const std::vector<Dof>& gammas,
                               const HmcConfig& hmc, int n_jobs = 1);

enum class CurveKind { sigma_star, phi };

struct CurvePoint {
  int gamma = 0;
  double value = 0.0;
};

// Pseudo-true scale ratio or efficiency factor over an integer gamma range.
std::vector<CurvePoint> emit_curves(CurveKind kind, int gamma_min, int gamma_max,
                                    const QuadratureSpec& spec = {});

}  // namespace rtreg
