#pragma once

// Log-domain special functions used by the bound catalog.  Everything here
// works with natural logarithms so that products of gamma-function ratios
// with astronomically large or small factors never leave double range.

namespace lrb {

// A real number stored as sign * exp(log_magnitude).  sign is -1, 0 or +1;
// a zero value has sign == 0 and log_magnitude == -infinity.
struct LogValue {
  double log_magnitude;
  int sign;

  double value() const;
};

LogValue log_value_of(double x);
LogValue operator*(const LogValue& a, const LogValue& b);
LogValue operator/(const LogValue& a, const LogValue& b);

// Natural log of the gamma function for x > 0.
double log_gamma(double x);

// log B(a, b) = log_gamma(a) + log_gamma(b) - log_gamma(a + b), a, b > 0.
double log_beta(double a, double b);

// Multivariate gamma function of dimension p >= 1 in log form:
//   ln Gamma_p(a) = p(p-1)/4 * ln(pi) + sum_{j=1..p} ln Gamma(a + (1-j)/2)
// Requires a > (p-1)/2.
double log_multivariate_gamma(int p, double a);

// Generalized binomial coefficient C(t, k) for real t and integer k >= 0,
// evaluated from the product t(t-1)...(t-k+1)/k! with an explicit sign
// channel since the product can be negative or exactly zero.
LogValue log_gen_binom(double t, int k);

}  // namespace lrb
