#pragma once

#include <cmath>
#include <string>

namespace langsel {

/// Rounds to 1e-9 so decimal boundaries (e.g. 0.891 - 0.911 == -0.020) compare
/// the way they read in decimal instead of the way they land in binary.
inline double snap(double x) { return std::round(x * 1e9) / 1e9; }

/// Fixed-point rendering, e.g. fixed(0.8317, 4) == "0.8317". Never prints "-0.0000".
std::string fixed(double x, int decimals);

/// Signed fixed-point, e.g. signed_fixed(-0.004, 4) == "-0.0040", signed_fixed(0.1, 2) == "+0.10".
std::string signed_fixed(double x, int decimals);

/// Fraction as signed percentage points, e.g. percent_points(0.106, 2) == "+10.60%".
std::string percent_points(double fraction, int decimals);

}  // namespace langsel
