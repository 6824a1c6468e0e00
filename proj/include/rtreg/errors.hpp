#pragma once

#include <stdexcept>
#include <string>

namespace rtreg {

// Refusal to sample from a target whose properness condition fails.
class PropernessError : public std::runtime_error {
 public:
  explicit PropernessError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: non-finite target at an initial point, root bracket
// failure, and similar conditions that are not input-validation errors.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rtreg
