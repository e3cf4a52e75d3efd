#pragma once
// Standard normal tail probability Q(x) = Pr[Z >= x], Z ~ N(0,1).

namespace advt {

// Complementary error function, Cody-style rational approximation.
// Relative error is a few ULP over the whole range; underflows to 0
// beyond x ~ 26.5.
double erfc_cody(double x) noexcept;

// Q(x) = erfc(x / sqrt(2)) / 2. Monotone decreasing, Q(0) = 1/2,
// Q(x) + Q(-x) = 1.
double q_function(double x) noexcept;

}  // namespace advt
