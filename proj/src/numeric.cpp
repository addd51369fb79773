#include "langsel/numeric.hpp"

#include <cstdio>

namespace langsel {

namespace {

std::string render(double x, int decimals, bool force_sign) {
  // Snap first so 8.750000000000007 renders as 8.8 and 0.0040000000000000036 as 0.0040.
  double v = snap(x);
  char buf[64];
  std::snprintf(buf, sizeof buf, force_sign ? "%+.*f" : "%.*f", decimals, v);
  std::string s = buf;
  // Drop the sign from a value that rounds to zero.
  bool all_zero = true;
  for (char c : s)
    if (c >= '1' && c <= '9') all_zero = false;
  if (all_zero) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.erase(0, 1);
    if (force_sign) s = "+" + s;
  }
  return s;
}

}  // namespace

std::string fixed(double x, int decimals) { return render(x, decimals, false); }

std::string signed_fixed(double x, int decimals) { return render(x, decimals, true); }

std::string percent_points(double fraction, int decimals) {
  return render(fraction * 100.0, decimals, true) + "%";
}

}  // namespace langsel
