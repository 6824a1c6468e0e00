#pragma once

#include "rtreg/types.hpp"

#include <cstdint>

namespace rtreg {

// Posterior properness: n > p + 1.
bool check_properness(std::int64_t n, std::int64_t p);

// Limiting-posterior properness: n - |O|(gamma + 1) > p + 1.
bool check_limiting_properness(std::int64_t n, std::int64_t p, std::int64_t n_outliers, Dof dof);

struct RejectionCheck {
  bool holds;                 // |O^c| >= max{n/2 + p - 1/2, |O| gamma + p + 2}
  std::int64_t max_outliers;  // largest |O| satisfying both inequalities (may be negative)
  double breakdown_fraction;  // min(1/2 - (p - 1/2)/n, (n - p - 2)/(n (gamma + 1)))
};

// Condition under which conflicting observations are asymptotically rejected
// (up to the sigma^gamma trace), plus the implied outlier budget and
// breakdown fraction. The inequalities are evaluated in exact integer
// arithmetic; no floating-point comparison sits on an equality boundary.
RejectionCheck check_rejection_condition(std::int64_t n, std::int64_t p, std::int64_t n_outliers, Dof dof);

}  // namespace rtreg
