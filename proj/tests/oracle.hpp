#pragma once

#include <cmath>

// High-precision reference implementations used only by tests.

namespace oracle {

// Long-double log gamma by the Stirling series after shifting x up to >= 20;
// Bernoulli terms through B16 give ~1e-20 truncation error there.
inline long double log_gamma(long double x) {
  long double shift = 0.0L;
  while (x < 20.0L) {
    shift -= std::log(x);
    x += 1.0L;
  }
  const long double b[] = {
      1.0L / 6,    -1.0L / 30,     1.0L / 42, -1.0L / 30,
      5.0L / 66,   -691.0L / 2730, 7.0L / 6,  -3617.0L / 510,
  };
  const long double half_log_2pi = 0.91893853320467274178L;
  long double s = (x - 0.5L) * std::log(x) - x + half_log_2pi;
  long double xp = x;
  for (int n = 0; n < 8; ++n) {
    const long double two_n = 2.0L * (n + 1);
    s += b[n] / (two_n * (two_n - 1.0L) * xp);
    xp *= x * x;
  }
  return s + shift;
}

// Unsigned Stirling numbers of the first kind, exact integer recurrence.
// Valid while the values fit in long double exactly (small x only).
inline long double stirling1_unsigned(int x, int m) {
  if (m < 0 || m > x) return 0.0L;
  if (x == 0) return 1.0L;  // s(0,0)
  long double row[32] = {0};
  row[0] = 1.0L;
  for (int n = 0; n < x; ++n) {
    long double next[32] = {0};
    for (int k = 1; k <= n + 1 && k < 32; ++k)
      next[k] = n * row[k] + row[k - 1];
    for (int k = 0; k < 32; ++k) row[k] = next[k];
  }
  return row[m];
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace oracle
