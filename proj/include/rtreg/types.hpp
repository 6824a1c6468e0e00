#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace rtreg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Positive integer degrees of freedom of the Student error density.
struct Dof {
  int gamma;
  explicit Dof(int g);
};

// Regression data with an explicit intercept: design(i, 0) == 1 for all i.
struct Dataset {
  Matrix design;    // n x p
  Vector response;  // n
  Index n() const { return design.rows(); }
  Index p() const { return design.cols(); }
};

void validate_dataset(const Dataset& data);
Dataset make_dataset(Matrix design, Vector response);

// Parameters in the log-scale parametrization sigma = exp(nu).
struct Params {
  Vector beta;
  double nu = 0.0;
  double sigma() const { return std::exp(nu); }
};

enum class PriorKind { jeffreys, flat, custom };

// Prior on (beta, sigma). A custom prior must satisfy
// exp(log_prior) <= max(C, C/sigma) wherever it is evaluated; the bound is
// checked with 1e-12 slack at every visited point. Jeffreys (1/sigma) and
// flat priors satisfy the bound with C = 1 identically.
struct PriorSpec {
  PriorKind kind = PriorKind::jeffreys;
  std::function<double(const Params&)> custom_log_prior;       // required for custom
  std::function<Vector(const Params&)> custom_grad_log_prior;  // optional; finite differences otherwise
  double bound_constant = 1.0;

  static PriorSpec jeffreys() { return {}; }
  static PriorSpec flat() { return {PriorKind::flat, nullptr, nullptr, 1.0}; }
  static PriorSpec custom(std::function<double(const Params&)> log_prior, double bound_constant,
                          std::function<Vector(const Params&)> grad_log_prior = nullptr);
};

// Outlier set O with the drift path y_i = a_i + b_i * omega. b_i != 0 exactly
// for i in O. The path fields may be left empty when only the index set
// matters (e.g. for the limiting posterior).
struct OutlierSpec {
  std::vector<Index> outliers;  // 0-based row indices, sorted, unique
  Vector a;
  Vector b;
  double omega = 0.0;

  static OutlierSpec indices(std::vector<Index> rows);
  static OutlierSpec path(std::vector<Index> rows, Vector a, Vector b, double omega);
  bool has_path() const { return a.size() > 0; }
};

// Checks index bounds and, when path fields are present, the b-support
// invariant; n is the dataset size the outlier set must apply to.
void validate_outliers(const OutlierSpec& spec, Index n);

// Response implied by the path fields, a + b * omega.
Vector materialize_response(const OutlierSpec& spec);

}  // namespace rtreg
