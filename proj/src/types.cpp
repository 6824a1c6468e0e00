#include "rtreg/types.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rtreg {

Dof::Dof(int g) : gamma(g) {
  if (g < 1) throw std::invalid_argument("degrees of freedom must be a positive integer, got " + std::to_string(g));
}

void validate_dataset(const Dataset& data) {
  const Index n = data.n();
  const Index p = data.p();
  if (n < 1 || p < 1) throw std::invalid_argument("dataset requires n >= 1 and p >= 1");
  if (data.response.size() != n)
    throw std::invalid_argument("response length " + std::to_string(data.response.size()) +
                                " does not match design rows " + std::to_string(n));
  if (!data.design.allFinite() || !data.response.allFinite())
    throw std::invalid_argument("dataset entries must all be finite");
  for (Index i = 0; i < n; ++i)
    if (data.design(i, 0) != 1.0)
      throw std::invalid_argument("design column 1 must be identically 1 (intercept), row " +
                                  std::to_string(i + 1) + " has " + std::to_string(data.design(i, 0)));
}

Dataset make_dataset(Matrix design, Vector response) {
  Dataset data{std::move(design), std::move(response)};
  validate_dataset(data);
  return data;
}

PriorSpec PriorSpec::custom(std::function<double(const Params&)> log_prior, double bound_constant,
                            std::function<Vector(const Params&)> grad_log_prior) {
  if (!log_prior) throw std::invalid_argument("custom prior requires a log-prior function");
  if (!(bound_constant > 0.0)) throw std::invalid_argument("custom prior bound constant must be positive");
  return {PriorKind::custom, std::move(log_prior), std::move(grad_log_prior), bound_constant};
}

OutlierSpec OutlierSpec::indices(std::vector<Index> rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  OutlierSpec spec;
  spec.outliers = std::move(rows);
  return spec;
}

OutlierSpec OutlierSpec::path(std::vector<Index> rows, Vector a, Vector b, double omega) {
  OutlierSpec spec = indices(std::move(rows));
  spec.a = std::move(a);
  spec.b = std::move(b);
  spec.omega = omega;
  return spec;
}

void validate_outliers(const OutlierSpec& spec, Index n) {
  for (Index i : spec.outliers)
    if (i < 0 || i >= n)
      throw std::invalid_argument("outlier index " + std::to_string(i + 1) + " outside 1.." + std::to_string(n));
  if (!std::is_sorted(spec.outliers.begin(), spec.outliers.end()) ||
      std::adjacent_find(spec.outliers.begin(), spec.outliers.end()) != spec.outliers.end())
    throw std::invalid_argument("outlier indices must be sorted and unique");
  if (!spec.has_path()) return;
  if (spec.a.size() != n || spec.b.size() != n)
    throw std::invalid_argument("outlier path vectors must have length n");
  if (!(spec.omega > 0.0)) throw std::invalid_argument("outlier path omega must be positive");
  std::vector<bool> is_outlier(static_cast<std::size_t>(n), false);
  for (Index i : spec.outliers) is_outlier[static_cast<std::size_t>(i)] = true;
  for (Index i = 0; i < n; ++i) {
    const bool nonzero = spec.b(i) != 0.0;
    if (nonzero != is_outlier[static_cast<std::size_t>(i)])
      throw std::invalid_argument("path coefficient b must be nonzero exactly on the outlier set, row " +
                                  std::to_string(i + 1) + " violates this");
  }
}

Vector materialize_response(const OutlierSpec& spec) {
  if (!spec.has_path()) throw std::invalid_argument("outlier spec has no path fields to materialize");
  return spec.a + spec.b * spec.omega;
}

}  // namespace rtreg
