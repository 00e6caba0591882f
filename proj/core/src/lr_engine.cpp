#include "lrb/lr_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace lrb {

BoundResult invalid_bound(std::string reason) {
  BoundResult r;
  r.valid = false;
  r.reason = std::move(reason);
  r.log_bound = 0.0;
  r.bound = 1.0;
  return r;
}

BoundResult bound_from_log(double log_bound, std::optional<double> theta_star,
                           std::string reason) {
  BoundResult r;
  r.log_bound = log_bound;
  r.bound = std::exp(log_bound);
  r.theta_star = theta_star;
  r.valid = true;
  r.reason = std::move(reason);
  return r;
}

BoundResult infimum_bound(const LrFamily& family, const SearchConfig& cfg,
                          bool cross_check) {
  if (!(family.theta_domain.lo <= family.theta_domain.hi))
    return invalid_bound("empty tilt domain");

  if (family.closed_form_theta_star) {
    const double star = *family.closed_form_theta_star;
    const double at_star = family.log_lambda(star);
    if (!cross_check) return bound_from_log(at_star, star);
    auto m = minimize_1d(family.log_lambda, family.theta_domain, cfg);
    // Improvement beyond 1e-9 relative (in linear domain) means the closed
    // form is not actually the minimizer; report and keep the better value.
    if (m.fx < at_star - 1e-9)
      return bound_from_log(m.fx, m.x,
                            "numerical minimum improves on closed-form theta*");
    return bound_from_log(at_star, star);
  }

  auto m = minimize_1d(family.log_lambda, family.theta_domain, cfg);
  return bound_from_log(m.fx, m.x);
}

CgfModel normal_cgf(double mu, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("normal_cgf: sigma must be > 0");
  const double v = sigma * sigma;
  return CgfModel{
      -1e3 / sigma, 1e3 / sigma,
      [=](double t) { return mu * t + 0.5 * v * t * t; },
      [=](double t) { return mu + v * t; },
      [=](double t) {
        const double m = mu + v * t;
        return m * m + v;
      },
      [=](double t) {
        const double m = mu + v * t;
        return m * m * m + 3 * m * v;
      },
      [=](double t) {
        const double m = mu + v * t, m2 = m * m;
        return m2 * m2 + 6 * m2 * v + 3 * v * v;
      }};
}

CgfModel exponential_cgf(double rate) {
  if (!(rate > 0)) throw std::invalid_argument("exponential_cgf: rate must be > 0");
  return CgfModel{
      -1e6 * rate, rate * (1.0 - 1e-12),
      [=](double t) { return std::log(rate) - std::log(rate - t); },
      [=](double t) { return 1.0 / (rate - t); },
      [=](double t) { return 2.0 / ((rate - t) * (rate - t)); },
      [=](double t) { return 6.0 / std::pow(rate - t, 3); },
      [=](double t) { return 24.0 / std::pow(rate - t, 4); }};
}

CgfModel bernoulli_cgf(double p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("bernoulli_cgf: p in (0,1)");
  auto phi = [=](double t) { return 1.0 - p + p * std::exp(t); };
  auto m = [=](double t) { return p * std::exp(t) / phi(t); };
  return CgfModel{-700.0, 700.0,
                  [=](double t) { return std::log(phi(t)); },
                  m, m, m, m};
}

CgfModel poisson_cgf(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("poisson_cgf: lambda must be > 0");
  // Exponential tilting maps Poisson(lambda) to Poisson(lambda e^tau), so
  // phi^(k)/phi is the k-th raw moment of Poisson(theta = lambda e^tau).
  return CgfModel{
      -700.0, 700.0 - std::log(lambda),
      [=](double t) { return lambda * std::expm1(t); },
      [=](double t) { return lambda * std::exp(t); },
      [=](double t) {
        const double th = lambda * std::exp(t);
        return th + th * th;
      },
      [=](double t) {
        const double th = lambda * std::exp(t);
        return th * (1 + th * (3 + th));
      },
      [=](double t) {
        const double th = lambda * std::exp(t);
        return th * (1 + th * (7 + th * (6 + th)));
      }};
}

CgfModel finite_difference_cgf(std::function<double(double)> kappa,
                               double tau_lo, double tau_hi) {
  // phi^(k)/phi follows from derivatives of kappa: with k1..k4 the CGF
  // derivatives, m1=k1, m2=k2+k1^2, m3=k3+3k2k1+k1^3,
  // m4=k4+4k3k1+3k2^2+6k2k1^2+k1^4 (Faa di Bruno on phi = e^kappa).
  auto deriv = [kappa](double t, int order) {
    // Roundoff in an order-k central difference grows like eps/h^k, so the
    // step must widen with the order (h ~ eps^{1/(k+2)}).
    static const double base[] = {1e-4, 1e-4, 1e-3, 5e-3};
    const double h = base[order - 1] * std::max(1.0, std::fabs(t));
    switch (order) {
      case 1:
        return (kappa(t + h) - kappa(t - h)) / (2 * h);
      case 2:
        return (kappa(t + h) - 2 * kappa(t) + kappa(t - h)) / (h * h);
      case 3:
        return (kappa(t + 2 * h) - 2 * kappa(t + h) + 2 * kappa(t - h) -
                kappa(t - 2 * h)) /
               (2 * h * h * h);
      default:
        return (kappa(t + 2 * h) - 4 * kappa(t + h) + 6 * kappa(t) -
                4 * kappa(t - h) + kappa(t - 2 * h)) /
               (h * h * h * h);
    }
  };
  return CgfModel{
      tau_lo, tau_hi, kappa,
      [deriv](double t) { return deriv(t, 1); },
      [deriv](double t) {
        const double k1 = deriv(t, 1);
        return deriv(t, 2) + k1 * k1;
      },
      [deriv](double t) {
        const double k1 = deriv(t, 1), k2 = deriv(t, 2);
        return deriv(t, 3) + 3 * k2 * k1 + k1 * k1 * k1;
      },
      [deriv](double t) {
        const double k1 = deriv(t, 1), k2 = deriv(t, 2), k3 = deriv(t, 3);
        return deriv(t, 4) + 4 * k3 * k1 + 3 * k2 * k2 + 6 * k2 * k1 * k1 +
               k1 * k1 * k1 * k1;
      }};
}

namespace {
// Saddle point: kappa'(tau) = m1(tau) = z.  m1 is increasing (it is the
// mean of the tilted law), so bracket by scanning inward from the domain
// edges until the residual changes sign.
std::optional<double> solve_saddle(const CgfModel& cgf, double z,
                                   const SearchConfig& cfg) {
  auto f = [&](double t) { return cgf.m1(t) - z; };
  double lo = cgf.tau_lo, hi = cgf.tau_hi;
  double flo = f(lo), fhi = f(hi);
  // Pull non-finite edges inward (open domain endpoints can overflow).
  for (int i = 0; i < 200 && !std::isfinite(flo); ++i) {
    lo = lo / 2 + (lo >= 0 ? 1e-3 : 0.0);
    flo = f(lo);
  }
  for (int i = 0; i < 200 && !std::isfinite(fhi); ++i) {
    hi = hi / 2 - (hi <= 0 ? 1e-3 : 0.0);
    fhi = f(hi);
  }
  if (!std::isfinite(flo) || !std::isfinite(fhi)) return std::nullopt;
  if (flo > 0 || fhi < 0) return std::nullopt;  // z outside range of kappa'
  return find_root_bracketed(f, {lo, hi}, cfg);
}
}  // namespace

BoundResult chernoff_bound(const CgfModel& cgf, double z, long n,
                           const SearchConfig& cfg) {
  if (n < 1) return invalid_bound("sample count n must be >= 1");
  auto tau = solve_saddle(cgf, z, cfg);
  if (!tau) return invalid_bound("z outside the range of kappa' on the CGF domain");
  const double log1 = cgf.kappa(*tau) - z * *tau;
  return bound_from_log(static_cast<double>(n) * log1, *tau);
}

double delta_moment_expression(const CgfModel& cgf, double tau, double z) {
  const double m2 = cgf.m2(tau), m3 = cgf.m3(tau), m4 = cgf.m4(tau);
  const double denom = m2 - z * z;
  return (m4 - 4 * z * m3 + 3 * m2 * m2) / (denom * denom) - 3.0;
}

BoundResult refined_chernoff_bound(const CgfModel& cgf, double z, long n,
                                   double c_be, const SearchConfig& cfg) {
  if (n < 1) return invalid_bound("sample count n must be >= 1");
  if (!(c_be > 0)) return invalid_bound("c_be must be > 0");
  auto tau = solve_saddle(cgf, z, cfg);
  if (!tau) return invalid_bound("z outside the range of kappa' on the CGF domain");
  const double log_chernoff = static_cast<double>(n) * (cgf.kappa(*tau) - z * *tau);
  const double radicand = delta_moment_expression(cgf, *tau, z);
  if (radicand < 0.0) {
    auto r = bound_from_log(log_chernoff, *tau,
                            "Delta radicand negative; classical Chernoff bound returned");
    return r;
  }
  const double delta =
      std::min(0.5, c_be / std::sqrt(static_cast<double>(n)) *
                        std::pow(radicand, 0.75));
  return bound_from_log(std::log(0.5 + delta) + log_chernoff, *tau);
}

BoundResult me_bound(const std::function<double(double)>& weight_expectation,
                     Bracket theta_domain, const SearchConfig& cfg) {
  LrFamily fam{theta_domain,
               [&](double th) { return std::log(weight_expectation(th)); },
               std::nullopt};
  return infimum_bound(fam, cfg);
}

}  // namespace lrb
