#pragma once

#include <string>

namespace intercept {

// Nearest double to `value` printed with `digits` significant digits
// (correctly rounded, ties to even). Negative zero collapses to zero.
double round_significant(double value, int digits = 9);

// Fixed notation with `decimals` places; "-0.000000" is printed as
// "0.000000" so mirrored coordinates stay byte-stable.
std::string fixed(double value, int decimals = 6);

// Rounds to `decimals` places with ties to even.
double round_half_even(double value, int decimals);

}  // namespace intercept
