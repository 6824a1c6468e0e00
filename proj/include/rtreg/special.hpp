#pragma once

namespace rtreg {

// Standard normal CDF; absolute error below 1e-15.
double normal_cdf(double x);

// Scaled complementary error function exp(x^2) erfc(x). Stable for large
// positive x where erfc underflows; overflows for x << 0 exactly where the
// true value does.
double erfcx(double x);

}  // namespace rtreg
