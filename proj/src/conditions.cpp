#include "rtreg/conditions.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtreg {

namespace {

void validate_counts(std::int64_t n, std::int64_t p, std::int64_t n_outliers) {
  if (n < 1 || p < 1) throw std::invalid_argument("require n >= 1 and p >= 1");
  if (n_outliers < 0 || n_outliers > n) throw std::invalid_argument("require 0 <= n_outliers <= n");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {  // b > 0
  const std::int64_t q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}

}  // namespace

bool check_properness(std::int64_t n, std::int64_t p) {
  validate_counts(n, p, 0);
  return n > p + 1;
}

bool check_limiting_properness(std::int64_t n, std::int64_t p, std::int64_t n_outliers, Dof dof) {
  validate_counts(n, p, n_outliers);
  return n - n_outliers * (dof.gamma + 1) > p + 1;
}

RejectionCheck check_rejection_condition(std::int64_t n, std::int64_t p, std::int64_t n_outliers, Dof dof) {
  validate_counts(n, p, n_outliers);
  const std::int64_t g = dof.gamma;
  const std::int64_t kept = n - n_outliers;
  // |O^c| >= n/2 + p - 1/2  <=>  2|O^c| >= n + 2p - 1
  const bool first = 2 * kept >= n + 2 * p - 1;
  const bool second = kept >= n_outliers * g + p + 2;
  RejectionCheck out;
  out.holds = first && second;
  out.max_outliers = std::min(floor_div(n - 2 * p + 1, 2), floor_div(n - p - 2, g + 1));
  out.breakdown_fraction =
      std::min(0.5 - (static_cast<double>(p) - 0.5) / static_cast<double>(n),
               static_cast<double>(n - p - 2) / (static_cast<double>(n) * static_cast<double>(g + 1)));
  return out;
}

}  // namespace rtreg
