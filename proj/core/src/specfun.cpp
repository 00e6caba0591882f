#include "lrb/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrb {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// std::lgamma writes the global signgam on some platforms, which is a data
// race under the multithreaded verifier.  All arguments in this library are
// positive, so the reentrant variant (or a local sign slot) is enough.
double lgamma_positive(double x) {
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}
}  // namespace

double LogValue::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_magnitude);
}

LogValue log_value_of(double x) {
  if (x == 0.0) return {kNegInf, 0};
  return {std::log(std::fabs(x)), x > 0 ? 1 : -1};
}

LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.sign == 0 || b.sign == 0) return {kNegInf, 0};
  return {a.log_magnitude + b.log_magnitude, a.sign * b.sign};
}

LogValue operator/(const LogValue& a, const LogValue& b) {
  if (b.sign == 0) throw std::domain_error("LogValue division by zero");
  if (a.sign == 0) return {kNegInf, 0};
  return {a.log_magnitude - b.log_magnitude, a.sign * b.sign};
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma requires x > 0");
  return lgamma_positive(x);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("log_beta requires a, b > 0");
  return lgamma_positive(a) + lgamma_positive(b) - lgamma_positive(a + b);
}

double log_multivariate_gamma(int p, double a) {
  if (p < 1) throw std::domain_error("log_multivariate_gamma requires p >= 1");
  if (!(a > 0.5 * (p - 1)))
    throw std::domain_error("log_multivariate_gamma requires a > (p-1)/2");
  double sum = 0.25 * p * (p - 1) * std::log(M_PI);
  for (int j = 1; j <= p; ++j) sum += lgamma_positive(a + 0.5 * (1 - j));
  return sum;
}

LogValue log_gen_binom(double t, int k) {
  if (k < 0) throw std::domain_error("log_gen_binom requires k >= 0");
  if (k == 0) return {0.0, 1};
  double log_mag = -lgamma_positive(static_cast<double>(k) + 1.0);
  int sign = 1;
  for (int l = 1; l <= k; ++l) {
    const double factor = t - (l - 1);
    if (factor == 0.0) return {kNegInf, 0};
    log_mag += std::log(std::fabs(factor));
    if (factor < 0.0) sign = -sign;
  }
  return {log_mag, sign};
}

}  // namespace lrb
