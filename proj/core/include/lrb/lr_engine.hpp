#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lrb/numerics.hpp"

// Generic likelihood-ratio bounding machinery: minimize a bounding function
// Lambda over its tilt domain, plus the CGF-based Chernoff bound and its
// Berry-Esseen refinement.

namespace lrb {

struct BoundResult {
  double log_bound = 0.0;
  double bound = 1.0;
  std::optional<double> theta_star;
  bool valid = true;
  std::string reason;
};

BoundResult invalid_bound(std::string reason);
BoundResult bound_from_log(double log_bound, std::optional<double> theta_star,
                           std::string reason = {});

// A one-parameter bounding family.  theta_domain is a finite search bracket
// chosen inside the (possibly open or unbounded) tilt domain; log_lambda is
// ln Lambda per observation.
struct LrFamily {
  Bracket theta_domain;
  std::function<double(double)> log_lambda;
  std::optional<double> closed_form_theta_star;
};

// Infimum of Lambda over the domain.  When a closed-form minimizer is given
// it is used directly; with cross_check the numerical minimum is compared
// and any improvement beyond 1e-9 relative is reported in `reason` (and the
// numerically better value is returned).
BoundResult infimum_bound(const LrFamily& family, const SearchConfig& cfg = {},
                          bool cross_check = false);

// Cumulant generating function model.  kappa = ln phi; m1..m4 are the
// moment functions phi^(k)(tau)/phi(tau).  tau_lo/tau_hi bound the usable
// part of the CGF domain.
struct CgfModel {
  double tau_lo;
  double tau_hi;
  std::function<double(double)> kappa;
  std::function<double(double)> m1;
  std::function<double(double)> m2;
  std::function<double(double)> m3;
  std::function<double(double)> m4;
};

CgfModel normal_cgf(double mu, double sigma);
CgfModel exponential_cgf(double rate);
CgfModel bernoulli_cgf(double p);
CgfModel poisson_cgf(double lambda);

// Central-difference adapter for a caller-supplied kappa.  Steps widen with
// the derivative order to balance truncation against roundoff; the fourth
// difference still loses several digits, so prefer analytic models.
CgfModel finite_difference_cgf(std::function<double(double)> kappa,
                               double tau_lo, double tau_hi);

// Classical Chernoff bound [phi(tau) e^{-z tau}]^n with kappa'(tau) = z.
BoundResult chernoff_bound(const CgfModel& cgf, double z, long n,
                           const SearchConfig& cfg = {});

// Berry-Esseen refinement (1/2 + Delta) [phi(tau) e^{-z tau}]^n with
// Delta = min{1/2, c_be/sqrt(n) * radicand^{3/4}}.  A negative radicand is
// reported in `reason` and the classical bound is returned unchanged.
BoundResult refined_chernoff_bound(const CgfModel& cgf, double z, long n,
                                   double c_be = 0.4748,
                                   const SearchConfig& cfg = {});

// The expression under the 3/4 power of Delta, at saddle point tau.
// Exposed so tests can check the normal-CGF identity (always 3).
double delta_moment_expression(const CgfModel& cgf, double tau, double z);

// Moment-of-weight-function bound: infimum of E[w(X, theta)] over theta.
BoundResult me_bound(const std::function<double(double)>& weight_expectation,
                     Bracket theta_domain, const SearchConfig& cfg = {});

}  // namespace lrb
