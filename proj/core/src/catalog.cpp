#include "lrb/catalog.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lrb/specfun.hpp"

// Each catalog entry transcribes one tail inequality: a validity predicate,
// the per-observation bounding function Lambda(theta), and the optimal (or
// plug-in) tilt value.  Everything is evaluated in log domain.
//
// Entries whose theta value is a proven minimizer of Lambda advertise it as
// closed_form_theta_star on the LrFamily; entries where the stated theta is
// a mean-matching plug-in (beta lower/upper, beta negative binomial,
// beta-prime a/b, inverse-gamma a, Nakagami lower, power-law) do not, since
// a numerical search can genuinely improve on them.

namespace lrb {

namespace {

std::string missing(const DistributionSpec& s, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (!s.has_param(k)) return std::string("missing parameter ") + k;
  return {};
}

// -ln(1-x)/x, stable near 0; equals 1 at x=0.
double lp(double x) {
  if (std::fabs(x) < 1e-8) return 1.0 + x / 2 + x * x / 3;
  return -std::log1p(-x) / x;
}

// expm1(x)/x, stable near 0.
double t_expm1(double x) {
  if (std::fabs(x) < 1e-8) return 1.0 + x / 2 + x * x / 6;
  return std::expm1(x) / x;
}

// g(theta) = 1 + 1/(e^theta - 1) - 1/theta: the mean of the exponential
// distribution truncated to (0,1).  Increasing, range (0,1), g(0)=1/2.
double truncexp_mean(double th) {
  if (std::fabs(th) < 1e-4) {
    const double t2 = th * th;
    return 0.5 + th / 12 - th * t2 / 720 + t2 * t2 * th / 30240;
  }
  return 1.0 + 1.0 / std::expm1(th) - 1.0 / th;
}

SearchConfig tight_cfg() { return SearchConfig{1e-15, 4e-16, 300}; }

// Bisection polish so the residual (not just the interval) meets 1e-12.
double solve_monotone(const std::function<double(double)>& f, double lo, double hi) {
  double root = find_root_bracketed(f, {lo, hi}, tight_cfg());
  if (std::fabs(f(root)) <= 1e-12) return root;
  double a = lo, b = hi;
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (std::fabs(fm) <= 1e-13 || m == a || m == b) return m;
    if ((fa > 0) == (fm > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Positive root of truncexp_mean(theta) = z for z in (1/2, 1); the negative
// branch follows from the symmetry g(-t) = 1 - g(t).
double solve_truncexp_theta(double z) {
  if (z < 0.5) return -solve_truncexp_theta(1.0 - z);
  auto f = [&](double t) { return truncexp_mean(t) - z; };
  double hi = 1.0;
  for (int i = 0; i < 60 && f(hi) < 0; ++i) hi *= 2;
  return solve_monotone(f, 1e-14, hi);
}

struct EntryImpl {
  CatalogEntry meta;
  // Empty string when the query is valid; otherwise the violated condition.
  std::function<std::string(const DistributionSpec&, const TailQuery&)> check;
  std::function<BoundResult(const DistributionSpec&, const TailQuery&)> eval;
  std::function<LrFamily(const DistributionSpec&, const TailQuery&)> family;
  std::function<double(const DistributionSpec&, double)> implicit_theta;
};

BoundResult mean_result(double log1, std::optional<double> star, long n) {
  return bound_from_log(static_cast<double>(n) * log1, star);
}

std::string check_n1(const TailQuery& q) {
  return q.n == 1 ? std::string{} : "single-observation entry requires n = 1";
}

// ---------------------------------------------------------------- normal

double normal_log_lambda(double mu, double sigma, double z, double th) {
  return (th - mu) * (th + mu - 2 * z) / (2 * sigma * sigma);
}

// ----------------------------------------------------------------- borel

double borel_log_lambda(double theta, double z, double th) {
  return (1 - z) * (std::log(th) - std::log(theta)) + z * (th - theta);
}

// ---------------------------------------------------------------- consul

double consul_log_lambda(double theta, double m, double z, double th) {
  const double part =
      (z == 1.0 || th == 0.0)
          ? ((z == 1.0) ? 0.0
                        : std::numeric_limits<double>::infinity())
          : (1 - z) * (std::log(th / (1 - th)) - std::log(theta / (1 - theta)));
  return part + z * m * (std::log1p(-theta) - std::log1p(-th));
}

double geeta_log_lambda(double theta, double beta, double z, double th) {
  const double part = (z == 1.0) ? 0.0 : (1 - z) * (std::log(th) - std::log(theta));
  return part + z * (beta - 1) * (std::log1p(-theta) - std::log1p(-th));
}

double lagnegbin_log_lambda(double theta, double alpha, double beta, double z,
                            double th) {
  const double part = (z == 0.0) ? 0.0 : z * (std::log(theta) - std::log(th));
  return part + (beta + (alpha - 1) * z) * (std::log1p(-theta) - std::log1p(-th));
}

// ------------------------------------------------------------- power law

// Normalizer C(a) = integral of x^-a over [1, beta].
double powerlaw_logC(double a, double beta) {
  if (std::fabs(a - 1.0) < 1e-9) return std::log(std::log(beta));
  // (1 - beta^{1-a})/(a - 1), positive for all a != 1.
  const double e = (1 - a) * std::log(beta);
  if (e < 0) return std::log(-std::expm1(e)) - std::log(a - 1);
  return std::log(std::expm1(e)) - std::log(1 - a);
}

// Mean of the power law with exponent t on [1, beta] (= C(t-1)/C(t)).
double powerlaw_mean(double t, double beta) {
  if (std::fabs(t - 2.0) < 1e-7) return beta * std::log(beta) / (beta - 1);
  return std::exp(powerlaw_logC(t - 1, beta) - powerlaw_logC(t, beta));
}

}  // namespace

std::string direction_name(Direction d) {
  switch (d) {
    case Direction::lower_mean: return "lower_mean";
    case Direction::upper_mean: return "upper_mean";
    case Direction::two_sided_outer: return "two_sided_outer";
    case Direction::two_sided_inner: return "two_sided_inner";
    case Direction::cdf_point: return "cdf_point";
  }
  return "unknown";
}

double DistributionSpec::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end())
    throw std::invalid_argument("missing parameter " + name + " for family " + family);
  return it->second;
}

bool DistributionSpec::has_param(const std::string& name) const {
  return params.count(name) > 0;
}

namespace {

const std::vector<EntryImpl>& impls() {
  static const std::vector<EntryImpl> table = [] {
    std::vector<EntryImpl> v;
    auto add = [&v](EntryImpl e) { v.push_back(std::move(e)); };

    // ------------------------------------------------------------ normal
    for (bool lower : {true, false}) {
      EntryImpl e;
      e.meta = {lower ? "normal_lower" : "normal_upper", "normal",
                lower ? Direction::lower_mean : Direction::upper_mean,
                lower ? "sigma > 0, z <= mu" : "sigma > 0, z >= mu",
                "closed_form"};
      e.check = [lower](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"mu", "sigma"}); !m.empty()) return m;
        if (!(s.param("sigma") > 0)) return "sigma must be > 0";
        if (lower && !(q.z <= s.param("mu"))) return "requires z <= mu";
        if (!lower && !(q.z >= s.param("mu"))) return "requires z >= mu";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double mu = s.param("mu"), sg = s.param("sigma");
        const double e1 = -(q.z - mu) * (q.z - mu) / (2 * sg * sg);
        return bound_from_log(std::log(0.5) + q.n * e1, q.z);
      };
      e.family = [lower](const DistributionSpec& s, const TailQuery& q) {
        const double mu = s.param("mu"), sg = s.param("sigma"), z = q.z;
        const double span = 10 * sg + std::fabs(z - mu);
        Bracket b = lower ? Bracket{z - span, z} : Bracket{z, z + span};
        return LrFamily{b, [=](double th) { return normal_log_lambda(mu, sg, z, th); },
                        z};
      };
      add(std::move(e));
    }

    // -------------------------------------------------------------- beta
    {
      EntryImpl e;
      e.meta = {"beta_lower", "beta", Direction::lower_mean,
                "alpha, beta > 0, 0 < z <= alpha/(alpha+beta)", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"alpha", "beta"}); !m.empty()) return m;
        const double a = s.param("alpha"), b = s.param("beta");
        if (!(a > 0 && b > 0)) return "alpha and beta must be > 0";
        if (!(q.z > 0 && q.z <= a / (a + b))) return "requires 0 < z <= alpha/(alpha+beta)";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta");
        const double star = b * q.z / (1 - q.z);
        const double log1 =
            log_beta(star, b) - log_beta(a, b) + (a - star) * std::log(q.z);
        return mean_result(log1, star, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double star = b * z / (1 - z);
        return LrFamily{{std::min(star, a) * 1e-3, a},
                        [=](double th) {
                          return log_beta(th, b) - log_beta(a, b) +
                                 (a - th) * std::log(z);
                        },
                        std::nullopt};  // plug-in theta, not the argmin
      };
      add(std::move(e));
    }
    {
      EntryImpl e;
      e.meta = {"beta_upper", "beta", Direction::upper_mean,
                "alpha, beta > 0, alpha/(alpha+beta) <= z < 1", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"alpha", "beta"}); !m.empty()) return m;
        const double a = s.param("alpha"), b = s.param("beta");
        if (!(a > 0 && b > 0)) return "alpha and beta must be > 0";
        if (!(q.z >= a / (a + b) && q.z < 1)) return "requires alpha/(alpha+beta) <= z < 1";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta");
        const double star = a * (1 - q.z) / q.z;
        const double log1 =
            log_beta(a, star) - log_beta(a, b) + (b - star) * std::log1p(-q.z);
        return mean_result(log1, star, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double star = a * (1 - z) / z;
        return LrFamily{{std::min(star, b) * 1e-3, b},
                        [=](double th) {
                          return log_beta(a, th) - log_beta(a, b) +
                                 (b - th) * std::log1p(-z);
                        },
                        std::nullopt};
      };
      add(std::move(e));
    }
    {
      EntryImpl e;
      e.meta = {"beta_lower_beta1", "beta", Direction::lower_mean,
                "beta = 1, 0 < z < exp(-1/alpha)", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"alpha", "beta"}); !m.empty()) return m;
        const double a = s.param("alpha");
        if (!(a > 0)) return "alpha must be > 0";
        if (std::fabs(s.param("beta") - 1.0) > 1e-12) return "requires beta = 1";
        if (!(q.z > 0 && q.z < std::exp(-1.0 / a))) return "requires 0 < z < exp(-1/alpha)";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha");
        const double log1 =
            1 + std::log(a) + a * std::log(q.z) + std::log(-std::log(q.z));
        return mean_result(log1, -1.0 / std::log(q.z), q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), z = q.z;
        const double star = -1.0 / std::log(z);
        return LrFamily{{std::min(star, a) * 1e-3, a},
                        [=](double th) {
                          return std::log(a / th) + (a - th) * std::log(z);
                        },
                        star};
      };
      add(std::move(e));
    }

    // -------------------------------------------- beta negative binomial
    {
      EntryImpl e;
      e.meta = {"beta_negbinom_cdf", "beta_negbinom", Direction::cdf_point,
                "alpha > 1, beta > 0, trials n > 1, integer 0 <= z <= n*beta/(alpha-1)",
                "closed_form", false, false};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"alpha", "beta", "n"}); !m.empty()) return m;
        const double a = s.param("alpha"), b = s.param("beta"), tr = s.param("n");
        if (!(a > 1)) return "alpha must be > 1";
        if (!(b > 0)) return "beta must be > 0";
        if (!(tr > 1)) return "trial count n must be > 1";
        if (auto m = check_n1(q); !m.empty()) return m;
        if (std::fabs(q.z - std::round(q.z)) > 1e-9) return "z must be an integer";
        if (!(q.z >= 0 && q.z <= tr * b / (a - 1)))
          return "requires 0 <= z <= n*beta/(alpha-1)";
        return {};
      };
      // The printed theorem drops the factor Gamma(alpha+beta)/Gamma(alpha+theta)
      // from f/g; without it the claimed bound is smaller than P(X <= 0).  The
      // corrected Lambda from the proof's own construction is used here.
      auto log_lambda = [](double a, double b, double tr, double z, double th) {
        return log_gamma(th) - log_gamma(b) + log_gamma(b + z) - log_gamma(th + z) +
               log_gamma(a + b) - log_gamma(a + th) + log_gamma(a + th + tr + z) -
               log_gamma(a + b + tr + z);
      };
      e.eval = [log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), tr = s.param("n");
        const double z = std::round(q.z);
        const double star = (a - 1) * z / tr;
        if (z == 0.0) {
          const double lb = log_gamma(a + b) - log_gamma(a) + log_gamma(a + tr) -
                            log_gamma(a + b + tr);
          return bound_from_log(lb, star);
        }
        return bound_from_log(log_lambda(a, b, tr, z, star), star);
      };
      e.family = [log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), tr = s.param("n");
        const double z = std::round(q.z);
        const double star = std::max((a - 1) * z / tr, 1e-6);
        return LrFamily{{std::min(star, b) * 1e-3, b},
                        [=](double th) { return log_lambda(a, b, tr, z, th); },
                        std::nullopt};
      };
      add(std::move(e));
    }

    // -------------------------------------------------------- beta prime
    auto betaprime_check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
      if (auto m = missing(s, {"alpha", "beta"}); !m.empty()) return m;
      const double a = s.param("alpha"), b = s.param("beta");
      if (!(a > 0)) return "alpha must be > 0";
      if (!(b > 1)) return "beta must be > 1";
      if (!(q.z > 0 && q.z <= a / (b - 1))) return "requires 0 < z <= alpha/(beta-1)";
      return {};
    };
    auto betaprime_a_log1 = [](const DistributionSpec& s, double z) {
      const double a = s.param("alpha"), b = s.param("beta");
      const double star = (b - 1) * z;
      return log_beta(star, b) - log_beta(a, b) +
             (a - star) * (std::log(z) - std::log1p(z));
    };
    auto betaprime_b_log1 = [](const DistributionSpec& s, double z) {
      const double a = s.param("alpha"), b = s.param("beta");
      const double star = 1 + a / z;
      return log_beta(a, star) - log_beta(a, b) + (star - b) * std::log1p(z);
    };
    {
      EntryImpl e;
      e.meta = {"betaprime_lower_a", "betaprime", Direction::lower_mean,
                "beta > 1, 0 < z <= alpha/(beta-1)", "closed_form"};
      e.check = betaprime_check;
      e.eval = [betaprime_a_log1](const DistributionSpec& s, const TailQuery& q) {
        return mean_result(betaprime_a_log1(s, q.z), (s.param("beta") - 1) * q.z, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double star = (b - 1) * z;
        return LrFamily{{std::min(star, a) * 1e-3, a},
                        [=](double th) {
                          return log_beta(th, b) - log_beta(a, b) +
                                 (a - th) * (std::log(z) - std::log1p(z));
                        },
                        std::nullopt};
      };
      add(std::move(e));
    }
    {
      EntryImpl e;
      e.meta = {"betaprime_lower_b", "betaprime", Direction::lower_mean,
                "beta > 1, 0 < z <= alpha/(beta-1)", "closed_form"};
      e.check = betaprime_check;
      e.eval = [betaprime_b_log1](const DistributionSpec& s, const TailQuery& q) {
        return mean_result(betaprime_b_log1(s, q.z), 1 + s.param("alpha") / q.z, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double star = 1 + a / z;
        return LrFamily{{b, std::max(star, b) * 4 + 10},
                        [=](double th) {
                          return log_beta(a, th) - log_beta(a, b) +
                                 (th - b) * std::log1p(z);
                        },
                        std::nullopt};
      };
      add(std::move(e));
    }
    {
      EntryImpl e;
      e.meta = {"betaprime_lower", "betaprime", Direction::lower_mean,
                "beta > 1, 0 < z <= alpha/(beta-1); minimum of the a/b forms",
                "closed_form", true};
      e.check = betaprime_check;
      e.eval = [betaprime_a_log1, betaprime_b_log1](const DistributionSpec& s,
                                                    const TailQuery& q) {
        const double la = betaprime_a_log1(s, q.z), lb = betaprime_b_log1(s, q.z);
        const double star = la <= lb ? (s.param("beta") - 1) * q.z
                                     : 1 + s.param("alpha") / q.z;
        return mean_result(std::min(la, lb), star, q.n);
      };
      add(std::move(e));
    }

    // -------------------------------------------------------------- borel
    {
      EntryImpl e;
      e.meta = {"borel_lower", "borel", Direction::lower_mean,
                "0 < theta < 1, 1 < z < 1/(1-theta)", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"theta"}); !m.empty()) return m;
        const double th = s.param("theta");
        if (!(th > 0 && th < 1)) return "theta must be in (0,1)";
        if (!(q.z > 1 && q.z < 1 / (1 - th))) return "requires 1 < z < 1/(1-theta)";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta");
        const double star = (q.z - 1) / q.z;
        return mean_result(borel_log_lambda(theta, q.z, star), star, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), z = q.z;
        const double star = (z - 1) / z;
        return LrFamily{{std::min(star, theta) * 1e-3, theta},
                        [=](double th) { return borel_log_lambda(theta, z, th); },
                        star};
      };
      add(std::move(e));
    }

    // ------------------------------------------------------------- consul
    {
      EntryImpl e;
      e.meta = {"consul_lower", "consul", Direction::lower_mean,
                "0 < theta < 1, 1 <= m < 1/theta, 1 <= z < 1/(1-m*theta)", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"theta", "m"}); !m.empty()) return m;
        const double th = s.param("theta"), m = s.param("m");
        if (!(th > 0 && th < 1)) return "theta must be in (0,1)";
        if (!(m >= 1 && m * th < 1)) return "requires 1 <= m < 1/theta";
        if (!(q.z >= 1 && q.z < 1 / (1 - m * th)))
          return "requires 1 <= z < 1/(1-m*theta)";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), m = s.param("m");
        const double star = (q.z - 1) / (m * q.z);
        return mean_result(consul_log_lambda(theta, m, q.z, star), star, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), m = s.param("m"), z = q.z;
        const double star = (z - 1) / (m * z);
        const double lo = (star > 0 ? std::min(star, theta) : theta) * 1e-3;
        return LrFamily{{lo, theta},
                        [=](double th) { return consul_log_lambda(theta, m, z, th); },
                        star};
      };
      add(std::move(e));
    }

    // -------------------------------------------------------------- geeta
    {
      EntryImpl e;
      e.meta = {"geeta_lower", "geeta", Direction::lower_mean,
                "0 < theta < 1, 1 < beta < 1/theta, 1 <= z <= (1-theta)/(1-beta*theta)",
                "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"theta", "beta"}); !m.empty()) return m;
        const double th = s.param("theta"), b = s.param("beta");
        if (!(th > 0 && th < 1)) return "theta must be in (0,1)";
        if (!(b > 1 && b * th < 1)) return "requires 1 < beta < 1/theta";
        if (!(q.z >= 1 && q.z <= (1 - th) / (1 - b * th)))
          return "requires 1 <= z <= (1-theta)/(1-beta*theta)";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), b = s.param("beta");
        const double star = (q.z - 1) / (b * q.z - 1);
        return mean_result(geeta_log_lambda(theta, b, q.z, star), star, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), b = s.param("beta"), z = q.z;
        const double star = (z - 1) / (b * z - 1);
        const double lo = (star > 0 ? std::min(star, theta) : theta) * 1e-3;
        return LrFamily{{lo, theta},
                        [=](double th) { return geeta_log_lambda(theta, b, z, th); },
                        star};
      };
      add(std::move(e));
    }

    // ------------------------------------------------------------- gumbel
    {
      EntryImpl e;
      e.meta = {"gumbel_lower", "gumbel", Direction::lower_mean,
                "beta > 0, z <= mu", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"mu", "beta"}); !m.empty()) return m;
        if (!(s.param("beta") > 0)) return "beta must be > 0";
        if (!(q.z <= s.param("mu"))) return "requires z <= mu";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double mu = s.param("mu"), b = s.param("beta");
        const double u = (mu - q.z) / b;
        return mean_result(u + 1 - std::exp(u), q.z, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double mu = s.param("mu"), b = s.param("beta"), z = q.z;
        return LrFamily{{z - 8 * b - std::fabs(mu - z), mu},
                        [=](double th) {
                          return (mu - th) / b + std::exp((th - z) / b) -
                                 std::exp((mu - z) / b);
                        },
                        z};
      };
      add(std::move(e));
    }

    // ------------------------------------------------------ inverse gamma
    auto invgamma_params = [](const DistributionSpec& s) -> std::string {
      if (auto m = missing(s, {"alpha", "beta"}); !m.empty()) return m;
      if (!(s.param("alpha") > 0 && s.param("beta") > 0))
        return "alpha and beta must be > 0";
      return {};
    };
    auto invgamma_a_log1 = [](const DistributionSpec& s, double z) {
      const double a = s.param("alpha"), b = s.param("beta");
      const double star = b / z + 1;
      return log_gamma(star) - log_gamma(a) + (star - a) * std::log(z / b);
    };
    auto invgamma_b_log1 = [](const DistributionSpec& s, double z) {
      const double a = s.param("alpha"), b = s.param("beta");
      return a * std::log(b / (a * z)) + (a * z - b) / z;
    };
    {
      EntryImpl e;
      e.meta = {"invgamma_lower_a", "invgamma", Direction::lower_mean,
                "alpha > 1, 0 < z <= beta/(alpha-1)", "closed_form"};
      e.check = [invgamma_params](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = invgamma_params(s); !m.empty()) return m;
        if (!(s.param("alpha") > 1)) return "alpha must be > 1";
        if (!(q.z > 0 && q.z <= s.param("beta") / (s.param("alpha") - 1)))
          return "requires 0 < z <= beta/(alpha-1)";
        return {};
      };
      e.eval = [invgamma_a_log1](const DistributionSpec& s, const TailQuery& q) {
        return mean_result(invgamma_a_log1(s, q.z), s.param("beta") / q.z + 1, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double star = b / z + 1;
        return LrFamily{{a, std::max(star, a) * 4 + 10},
                        [=](double th) {
                          return log_gamma(th) - log_gamma(a) +
                                 (th - a) * std::log(z / b);
                        },
                        std::nullopt};
      };
      add(std::move(e));
    }
    {
      EntryImpl e;
      e.meta = {"invgamma_lower_b", "invgamma", Direction::lower_mean,
                "0 < z <= beta/alpha", "closed_form"};
      e.check = [invgamma_params](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = invgamma_params(s); !m.empty()) return m;
        if (!(q.z > 0 && q.z <= s.param("beta") / s.param("alpha")))
          return "requires 0 < z <= beta/alpha";
        return {};
      };
      e.eval = [invgamma_b_log1](const DistributionSpec& s, const TailQuery& q) {
        return mean_result(invgamma_b_log1(s, q.z), s.param("alpha") * q.z, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double star = a * z;
        return LrFamily{{std::min(star, b) * 1e-3, b},
                        [=](double th) {
                          return a * std::log(b / th) + (th - b) / z;
                        },
                        star};
      };
      add(std::move(e));
    }
    {
      EntryImpl e;
      e.meta = {"invgamma_lower", "invgamma", Direction::lower_mean,
                "minimum of the a/b forms on their joint validity", "closed_form", true};
      e.check = [invgamma_params](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = invgamma_params(s); !m.empty()) return m;
        const double a = s.param("alpha"), b = s.param("beta");
        const bool ok_a = a > 1 && q.z > 0 && q.z <= b / (a - 1);
        const bool ok_b = q.z > 0 && q.z <= b / a;
        if (!ok_a && !ok_b) return "z outside the validity region of both forms";
        return {};
      };
      e.eval = [invgamma_a_log1, invgamma_b_log1](const DistributionSpec& s,
                                                  const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta");
        double best = std::numeric_limits<double>::infinity();
        std::optional<double> star;
        if (a > 1 && q.z <= b / (a - 1)) {
          best = invgamma_a_log1(s, q.z);
          star = b / q.z + 1;
        }
        if (q.z <= b / a) {
          const double lb = invgamma_b_log1(s, q.z);
          if (lb < best) {
            best = lb;
            star = a * q.z;
          }
        }
        return mean_result(best, star, q.n);
      };
      add(std::move(e));
    }

    // --------------------------------------------------- inverse Gaussian
    {
      EntryImpl e;
      e.meta = {"invgauss_lower", "invgauss", Direction::lower_mean,
                "lambda > 0, theta > 0, 0 < z <= theta", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"lambda", "theta"}); !m.empty()) return m;
        if (!(s.param("lambda") > 0 && s.param("theta") > 0))
          return "lambda and theta must be > 0";
        if (!(q.z > 0 && q.z <= s.param("theta"))) return "requires 0 < z <= theta";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double l = s.param("lambda"), th = s.param("theta");
        const double log1 = l / th - l / (2 * q.z) - l * q.z / (2 * th * th);
        return mean_result(log1, q.z, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double l = s.param("lambda"), theta = s.param("theta"), z = q.z;
        return LrFamily{{z * 1e-3, theta},
                        [=](double th) {
                          return l / theta - l / th +
                                 (l / (2 * th * th) - l / (2 * theta * theta)) * z;
                        },
                        z};
      };
      add(std::move(e));
    }

    // ------------------------------------------- Lagrangian logarithmic
    {
      EntryImpl e;
      e.meta = {"laglog_lower", "laglog", Direction::lower_mean,
                "0 < theta < 1, beta >= 1, beta*theta < 1, "
                "1 < z <= theta/((beta*theta-1)*ln(1-theta))",
                "implicit"};
      auto zfun = [](double beta, double th) {
        // theta/((beta*theta-1)ln(1-theta)) rewritten without cancellation.
        return 1.0 / ((1 - beta * th) * lp(th));
      };
      e.check = [zfun](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"theta", "beta"}); !m.empty()) return m;
        const double th = s.param("theta"), b = s.param("beta");
        if (!(th > 0 && th < 1)) return "theta must be in (0,1)";
        if (!(b >= 1 && b * th < 1)) return "requires 1 <= beta and beta*theta < 1";
        if (!(q.z > 1 && q.z <= zfun(b, th)))
          return "requires 1 < z <= theta/((beta*theta-1)*ln(1-theta))";
        return {};
      };
      e.implicit_theta = [zfun](const DistributionSpec& s, double z) {
        const double b = s.param("beta"), th = s.param("theta");
        return solve_monotone([&](double v) { return zfun(b, v) - z; }, 1e-12, th);
      };
      auto log_lambda = [](double theta, double b, double z, double th) {
        return z * (std::log(theta) - std::log(th)) +
               z * (b - 1) * (std::log1p(-theta) - std::log1p(-th)) +
               std::log(std::log1p(-th) / std::log1p(-theta));
      };
      auto implicit = e.implicit_theta;
      e.eval = [log_lambda, implicit](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), b = s.param("beta");
        const double star = implicit(s, q.z);
        return mean_result(log_lambda(theta, b, q.z, star), star, q.n);
      };
      e.family = [log_lambda, implicit](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), b = s.param("beta"), z = q.z;
        const double star = implicit(s, z);
        return LrFamily{{std::min(star, theta) * 1e-2, theta},
                        [=](double th) { return log_lambda(theta, b, z, th); },
                        star};
      };
      add(std::move(e));
    }

    // --------------------------------------- Lagrangian negative binomial
    {
      EntryImpl e;
      e.meta = {"lagnegbin_lower", "lagnegbin", Direction::lower_mean,
                "0 < theta < 1, alpha > 1, alpha*theta < 1, beta > 0, "
                "0 <= z <= beta*theta/(1-alpha*theta)",
                "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"theta", "alpha", "beta"}); !m.empty()) return m;
        const double th = s.param("theta"), a = s.param("alpha"), b = s.param("beta");
        if (!(th > 0 && th < 1)) return "theta must be in (0,1)";
        if (!(a > 1 && a * th < 1)) return "requires alpha > 1 and alpha*theta < 1";
        if (!(b > 0)) return "beta must be > 0";
        if (!(q.z >= 0 && q.z <= b * th / (1 - a * th)))
          return "requires 0 <= z <= beta*theta/(1-alpha*theta)";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), a = s.param("alpha"), b = s.param("beta");
        const double star = q.z / (b + a * q.z);
        return mean_result(lagnegbin_log_lambda(theta, a, b, q.z, star), star, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), a = s.param("alpha"), b = s.param("beta");
        const double z = q.z;
        const double star = z / (b + a * z);
        const double lo = (star > 0 ? std::min(star, theta) : theta) * 1e-3;
        return LrFamily{{lo, theta},
                        [=](double th) {
                          return lagnegbin_log_lambda(theta, a, b, z, th);
                        },
                        star};
      };
      add(std::move(e));
    }

    // ------------------------------------------------------------ Laplace
    for (bool upper : {true, false}) {
      EntryImpl e;
      e.meta = {upper ? "laplace_upper" : "laplace_lower", "laplace",
                upper ? Direction::upper_mean : Direction::lower_mean,
                upper ? "beta > 0, z >= alpha+beta" : "beta > 0, z <= alpha-beta",
                "closed_form"};
      e.check = [upper](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"alpha", "beta"}); !m.empty()) return m;
        if (!(s.param("beta") > 0)) return "beta must be > 0";
        if (upper && !(q.z >= s.param("alpha") + s.param("beta")))
          return "requires z >= alpha+beta";
        if (!upper && !(q.z <= s.param("alpha") - s.param("beta")))
          return "requires z <= alpha-beta";
        return {};
      };
      e.eval = [upper](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta");
        const double d = upper ? q.z - a : a - q.z;
        return mean_result(std::log(d / b) + 1 - d / b, d, q.n);
      };
      e.family = [upper](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double d = upper ? z - a : a - z;
        return LrFamily{{b, std::max(d, b) * 4 + 10 * b},
                        [=](double th) {
                          return std::log(th / b) + (1 / th - 1 / b) * d;
                        },
                        d};
      };
      add(std::move(e));
    }

    // -------------------------------------------------------- logarithmic
    {
      EntryImpl e;
      e.meta = {"logarithmic_lower", "logarithmic", Direction::lower_mean,
                "0 < q < 1, 1 < z <= q/((1-q)*ln(1/(1-q)))", "implicit"};
      auto zfun = [](double v) { return 1.0 / ((1 - v) * lp(v)); };
      e.check = [zfun](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"q"}); !m.empty()) return m;
        const double p = s.param("q");
        if (!(p > 0 && p < 1)) return "q must be in (0,1)";
        if (!(q.z > 1 && q.z <= zfun(p)))
          return "requires 1 < z <= q/((1-q)*ln(1/(1-q)))";
        return {};
      };
      e.implicit_theta = [zfun](const DistributionSpec& s, double z) {
        return solve_monotone([&](double v) { return zfun(v) - z; }, 1e-12,
                              s.param("q"));
      };
      auto implicit = e.implicit_theta;
      auto log_lambda = [](double p, double z, double th) {
        return std::log(std::log1p(-th) / std::log1p(-p)) +
               z * (std::log(p) - std::log(th));
      };
      e.eval = [implicit, log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double p = s.param("q");
        const double star = implicit(s, q.z);
        return mean_result(log_lambda(p, q.z, star), star, q.n);
      };
      e.family = [implicit, log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double p = s.param("q"), z = q.z;
        const double star = implicit(s, z);
        return LrFamily{{std::min(star, p) * 1e-2, p},
                        [=](double th) { return log_lambda(p, z, th); },
                        star};
      };
      add(std::move(e));
    }

    // ---------------------------------------------------------- lognormal
    {
      EntryImpl e;
      e.meta = {"lognormal_lower", "lognormal", Direction::lower_mean,
                "sigma > 0, 0 < z <= exp(mu)", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"mu", "sigma"}); !m.empty()) return m;
        if (!(s.param("sigma") > 0)) return "sigma must be > 0";
        if (!(q.z > 0 && q.z <= std::exp(s.param("mu"))))
          return "requires 0 < z <= exp(mu)";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double mu = s.param("mu"), sg = s.param("sigma");
        const double d = (mu - std::log(q.z)) / sg;
        return mean_result(-0.5 * d * d, std::log(q.z), q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double mu = s.param("mu"), sg = s.param("sigma"), z = q.z;
        const double star = std::log(z);
        return LrFamily{{star - 5 * sg - 1, mu},
                        [=](double th) {
                          return (th - mu) * (0.5 * (mu + th) - std::log(z)) /
                                 (sg * sg);
                        },
                        star};
      };
      add(std::move(e));
    }

    // ----------------------------------------------------------- Nakagami
    {
      EntryImpl e;
      e.meta = {"nakagami_lower", "nakagami", Direction::lower_mean,
                "m >= 1/2, sigma > 0, 0 < z <= sigma*Gamma(m+1/2)/Gamma(m)",
                "implicit"};
      auto zfun = [](double sg, double v) {
        return sg * std::exp(log_gamma(v + 0.5) - log_gamma(v));
      };
      e.check = [zfun](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"m", "sigma"}); !m.empty()) return m;
        const double m = s.param("m"), sg = s.param("sigma");
        if (!(m >= 0.5)) return "m must be >= 1/2";
        if (!(sg > 0)) return "sigma must be > 0";
        if (!(q.z > 0 && q.z <= zfun(sg, m)))
          return "requires 0 < z <= sigma*Gamma(m+1/2)/Gamma(m)";
        return {};
      };
      e.implicit_theta = [zfun](const DistributionSpec& s, double z) {
        const double sg = s.param("sigma"), m = s.param("m");
        return solve_monotone([&](double v) { return zfun(sg, v) - z; }, 1e-12, m);
      };
      auto implicit = e.implicit_theta;
      auto log_lambda = [](double m, double sg, double z, double th) {
        return log_gamma(th) - log_gamma(m) + 2 * (m - th) * std::log(z / sg);
      };
      e.eval = [implicit, log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double m = s.param("m"), sg = s.param("sigma");
        const double star = implicit(s, q.z);
        return mean_result(log_lambda(m, sg, q.z, star), star, q.n);
      };
      e.family = [implicit, log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double m = s.param("m"), sg = s.param("sigma"), z = q.z;
        const double star = implicit(s, z);
        return LrFamily{{std::min(star, m) * 1e-2, m},
                        [=](double th) { return log_lambda(m, sg, z, th); },
                        std::nullopt};  // theta indexes the threshold, not the argmin
      };
      add(std::move(e));
    }
    {
      EntryImpl e;
      e.meta = {"nakagami_upper", "nakagami", Direction::upper_mean,
                "m >= 1/2, sigma > 0, z >= sqrt(m)*sigma", "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"m", "sigma"}); !m.empty()) return m;
        const double m = s.param("m"), sg = s.param("sigma");
        if (!(m >= 0.5)) return "m must be >= 1/2";
        if (!(sg > 0)) return "sigma must be > 0";
        if (!(q.z >= std::sqrt(m) * sg)) return "requires z >= sqrt(m)*sigma";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double m = s.param("m"), sg = s.param("sigma");
        const double r = q.z * q.z / (sg * sg);
        return mean_result(m * std::log(r / m) + m - r, q.z / std::sqrt(m), q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double m = s.param("m"), sg = s.param("sigma"), z = q.z;
        const double star = z / std::sqrt(m);
        return LrFamily{{sg, std::max(star, sg) * 4 + sg},
                        [=](double th) {
                          return 2 * m * std::log(th / sg) + z * z / (th * th) -
                                 z * z / (sg * sg);
                        },
                        star};
      };
      add(std::move(e));
    }

    // ------------------------------------------------------------- Pareto
    {
      EntryImpl e;
      e.meta = {"pareto_lower", "pareto", Direction::lower_mean,
                "theta > 1, a > 0, (1-1/theta) < z/mu <= (1-1/theta)*exp(1/theta) "
                "with mu = theta*a/(theta-1)",
                "closed_form"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"theta", "a"}); !m.empty()) return m;
        const double th = s.param("theta"), a = s.param("a");
        if (!(th > 1)) return "theta must be > 1";
        if (!(a > 0)) return "a must be > 0";
        const double gamma = q.z / a;  // = rho*theta/(theta-1)
        if (!(gamma > 1 && gamma <= std::exp(1 / th)))
          return "requires (1-1/theta) < z/mu <= (1-1/theta)*exp(1/theta)";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double th = s.param("theta"), a = s.param("a");
        const double lg = std::log(q.z / a);
        const double log1 = 1 + std::log(th) + std::log(lg) - th * lg;
        return mean_result(log1, 1 / lg, q.n);
      };
      e.family = [](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), a = s.param("a");
        const double lg = std::log(q.z / a);
        const double star = 1 / lg;
        return LrFamily{{theta, std::max(star, theta) * 4 + 10},
                        [=](double th) {
                          return std::log(theta / th) + (th - theta) * lg;
                        },
                        star};
      };
      add(std::move(e));
    }

    // ---------------------------------------------------------- power law
    {
      EntryImpl e;
      e.meta = {"powerlaw_lower", "powerlaw", Direction::lower_mean,
                "alpha > 1, beta > 1, 1 < z <= mean (z inverted to the tilt "
                "exponent theta >= alpha)",
                "implicit"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"alpha", "beta"}); !m.empty()) return m;
        const double a = s.param("alpha"), b = s.param("beta");
        if (!(a > 1)) return "alpha must be > 1";
        if (!(b > 1)) return "beta must be > 1";
        if (!(q.z > 1 && q.z <= powerlaw_mean(a, b)))
          return "requires 1 < z <= the distribution mean";
        return {};
      };
      e.implicit_theta = [](const DistributionSpec& s, double z) {
        const double a = s.param("alpha"), b = s.param("beta");
        auto f = [&](double t) { return powerlaw_mean(t, b) - z; };
        double hi = a + 1;
        for (int i = 0; i < 200 && f(hi) > 0; ++i) hi = a + (hi - a) * 2;
        return solve_monotone(f, a, hi);
      };
      auto implicit = e.implicit_theta;
      auto log_lambda = [](double a, double b, double z, double t) {
        return powerlaw_logC(t, b) - powerlaw_logC(a, b) + (t - a) * std::log(z);
      };
      e.eval = [implicit, log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta");
        const double t = implicit(s, q.z);
        return mean_result(log_lambda(a, b, q.z, t), t, q.n);
      };
      e.family = [implicit, log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double t = implicit(s, z);
        return LrFamily{{a, std::max(t, a) * 4 + 10},
                        [=](double th) { return log_lambda(a, b, z, th); },
                        std::nullopt};  // theta indexes the threshold, not the argmin
      };
      add(std::move(e));
    }

    // ------------------------------------------------------------ Stirling
    {
      EntryImpl e;
      e.meta = {"stirling_lower", "stirling", Direction::lower_mean,
                "m positive integer, 0 < theta < 1, "
                "m < z <= m*theta/((theta-1)*ln(1-theta))",
                "implicit"};
      auto zfun = [](double m, double v) { return m / ((1 - v) * lp(v)); };
      e.check = [zfun](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"m", "theta"}); !m.empty()) return m;
        const double m = s.param("m"), th = s.param("theta");
        if (!(m >= 1 && std::fabs(m - std::round(m)) < 1e-9))
          return "m must be a positive integer";
        if (!(th > 0 && th < 1)) return "theta must be in (0,1)";
        if (!(q.z > m && q.z <= zfun(m, th)))
          return "requires m < z <= m*theta/((theta-1)*ln(1-theta))";
        return {};
      };
      e.implicit_theta = [zfun](const DistributionSpec& s, double z) {
        const double m = s.param("m"), th = s.param("theta");
        return solve_monotone([&](double v) { return zfun(m, v) - z; }, 1e-12, th);
      };
      auto implicit = e.implicit_theta;
      auto log_lambda = [](double m, double theta, double z, double th) {
        return m * std::log(std::log1p(-th) / std::log1p(-theta)) +
               z * (std::log(theta) - std::log(th));
      };
      e.eval = [implicit, log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double m = s.param("m"), theta = s.param("theta");
        const double star = implicit(s, q.z);
        return mean_result(log_lambda(m, theta, q.z, star), star, q.n);
      };
      e.family = [implicit, log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double m = s.param("m"), theta = s.param("theta"), z = q.z;
        const double star = implicit(s, z);
        return LrFamily{{std::min(star, theta) * 1e-2, theta},
                        [=](double th) { return log_lambda(m, theta, z, th); },
                        star};
      };
      add(std::move(e));
    }

    // ------------------------------------------------------------------ F
    for (bool upper : {true, false}) {
      EntryImpl e;
      e.meta = {upper ? "f_upper" : "f_lower", "f",
                upper ? Direction::upper_mean : Direction::lower_mean,
                upper ? "m, n > 0, z >= 1 (single observation)"
                      : "m, n > 0, 0 < z <= 1 (single observation)",
                "closed_form", false, false};
      e.check = [upper](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"m", "n"}); !m.empty()) return m;
        if (!(s.param("m") > 0 && s.param("n") > 0)) return "degrees of freedom must be > 0";
        if (auto m = check_n1(q); !m.empty()) return m;
        if (upper && !(q.z >= 1)) return "requires z >= 1";
        if (!upper && !(q.z > 0 && q.z <= 1)) return "requires 0 < z <= 1";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double m = s.param("m"), n = s.param("n");
        const double log1 = 0.5 * m * std::log(q.z) +
                            0.5 * (n + m) * (std::log(n + m) - std::log(n + m * q.z));
        return bound_from_log(log1, q.z);
      };
      e.family = [upper](const DistributionSpec& s, const TailQuery& q) {
        const double m = s.param("m"), n = s.param("n"), z = q.z;
        const double c = m * z / (n + m * z);
        Bracket b = upper ? Bracket{1.0, std::max(2 * z, 10.0)}
                          : Bracket{std::min(z, 1.0) * 1e-2, 1.0};
        return LrFamily{b,
                        [=](double th) {
                          return 0.5 * m * std::log(th) +
                                 0.5 * (n + m) * std::log1p((1 / th - 1) * c);
                        },
                        z};
      };
      add(std::move(e));
    }

    // ---------------------------------------------------------- Student t
    for (bool outer : {true, false}) {
      EntryImpl e;
      e.meta = {outer ? "t_twosided_outer" : "t_twosided_inner", "t",
                outer ? Direction::two_sided_outer : Direction::two_sided_inner,
                outer ? "n > 0, z >= 1 (single observation)"
                      : "n > 0, 0 < z <= 1 (single observation)",
                "closed_form", false, false};
      e.check = [outer](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"n"}); !m.empty()) return m;
        if (!(s.param("n") > 0)) return "degrees of freedom must be > 0";
        if (auto m = check_n1(q); !m.empty()) return m;
        if (outer && !(q.z >= 1)) return "requires z >= 1";
        if (!outer && !(q.z > 0 && q.z <= 1)) return "requires 0 < z <= 1";
        return {};
      };
      e.eval = [](const DistributionSpec& s, const TailQuery& q) {
        const double n = s.param("n");
        const double log1 = std::log(q.z) + 0.5 * (n + 1) * (std::log(n + 1) -
                                                             std::log(n + q.z * q.z));
        return bound_from_log(log1, q.z);
      };
      e.family = [outer](const DistributionSpec& s, const TailQuery& q) {
        const double n = s.param("n"), z = q.z;
        const double c = z * z / (n + z * z);
        Bracket b = outer ? Bracket{1.0, std::max(2 * z, 10.0)}
                          : Bracket{std::min(z, 1.0) * 1e-2, 1.0};
        return LrFamily{b,
                        [=](double th) {
                          return std::log(th) +
                                 0.5 * (n + 1) * std::log1p((1 / (th * th) - 1) * c);
                        },
                        z};
      };
      add(std::move(e));
    }

    // ----------------------------------------- truncated exponential
    {
      EntryImpl e;
      e.meta = {"truncexp_lower", "truncexp", Direction::lower_mean,
                "theta != 0, 0 < z <= 1 + 1/(e^theta - 1) - 1/theta", "implicit"};
      e.check = [](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"theta"}); !m.empty()) return m;
        const double th = s.param("theta");
        if (th == 0.0 || !std::isfinite(th)) return "theta must be finite and nonzero";
        if (!(q.z > 0 && q.z <= truncexp_mean(th)))
          return "requires 0 < z <= 1 + 1/(e^theta-1) - 1/theta";
        return {};
      };
      e.implicit_theta = [](const DistributionSpec&, double z) {
        return solve_truncexp_theta(z);
      };
      auto log_lambda = [](double theta, double z, double th) {
        return std::log(t_expm1(th)) - std::log(t_expm1(theta)) + (theta - th) * z;
      };
      e.eval = [log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta");
        if (std::fabs(q.z - 0.5) < 1e-10) {
          // The implicit equation degenerates at z = 1/2; closed form instead.
          const double log1 = 0.5 * theta - std::log(t_expm1(theta));
          return mean_result(log1, std::nullopt, q.n);
        }
        const double star = solve_truncexp_theta(q.z);
        return mean_result(log_lambda(theta, q.z, star), star, q.n);
      };
      e.family = [log_lambda](const DistributionSpec& s, const TailQuery& q) {
        const double theta = s.param("theta"), z = q.z;
        const double star = (std::fabs(z - 0.5) < 1e-10) ? 0.0 : solve_truncexp_theta(z);
        const double lo = std::min(star, theta) - 5 - std::fabs(star);
        return LrFamily{{lo, theta},
                        [=](double th) { return log_lambda(theta, z, th); },
                        (std::fabs(z - 0.5) < 1e-10) ? std::optional<double>{}
                                                     : std::optional<double>{star}};
      };
      add(std::move(e));
    }

    // ------------------------------------------------------------ uniform
    for (bool upper : {true, false}) {
      EntryImpl e;
      e.meta = {upper ? "uniform_upper" : "uniform_lower", "uniform",
                upper ? Direction::upper_mean : Direction::lower_mean,
                upper ? "1/2 < z < 1" : "0 < z < 1/2", "implicit"};
      e.check = [upper](const DistributionSpec&, const TailQuery& q) -> std::string {
        if (upper && !(q.z > 0.5 && q.z < 1)) return "requires 1/2 < z < 1";
        if (!upper && !(q.z > 0 && q.z < 0.5)) return "requires 0 < z < 1/2";
        return {};
      };
      e.implicit_theta = [](const DistributionSpec&, double z) {
        return solve_truncexp_theta(z);
      };
      e.eval = [upper](const DistributionSpec&, const TailQuery& q) {
        if (q.relaxed) {
          const double d = q.z - 0.5;
          return mean_result(-6 * d * d, std::nullopt, q.n);
        }
        const double star = solve_truncexp_theta(q.z);
        const double log1 = std::log(t_expm1(star)) - star * q.z;
        return mean_result(log1, star, q.n);
      };
      e.family = [upper](const DistributionSpec&, const TailQuery& q) {
        const double z = q.z;
        const double star = solve_truncexp_theta(z);
        Bracket b = upper ? Bracket{1e-6, std::max(2 * star, 1.0)}
                          : Bracket{std::min(2 * star, -1.0), -1e-6};
        return LrFamily{b,
                        [=](double th) { return std::log(t_expm1(th)) - th * z; },
                        star};
      };
      add(std::move(e));
    }

    // ------------------------------------------------------------ Weibull
    for (bool lower : {true, false}) {
      EntryImpl e;
      e.meta = {lower ? "weibull_lower" : "weibull_upper", "weibull",
                lower ? Direction::lower_mean : Direction::upper_mean,
                lower ? "alpha > 0, 0 < beta <= 1, alpha*z^beta <= 1"
                      : "alpha > 0, beta > 1, alpha*z^beta >= 1",
                "closed_form"};
      e.check = [lower](const DistributionSpec& s, const TailQuery& q) -> std::string {
        if (auto m = missing(s, {"alpha", "beta"}); !m.empty()) return m;
        const double a = s.param("alpha"), b = s.param("beta");
        if (!(a > 0 && b > 0)) return "alpha and beta must be > 0";
        if (lower && !(b <= 1)) return "requires beta <= 1";
        if (!lower && !(b > 1)) return "requires beta > 1";
        if (!(q.z > 0)) return "requires z > 0";
        const double u = a * std::pow(q.z, b);
        if (lower && !(u <= 1)) return "requires alpha*z^beta <= 1";
        if (!lower && !(u >= 1)) return "requires alpha*z^beta >= 1";
        return {};
      };
      e.eval = [lower](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta");
        const double u = a * std::pow(q.z, b);
        auto r = mean_result(std::log(u) + 1 - u, std::pow(q.z, -b), q.n);
        if (lower && b == 1.0) r.reason = "beta = 1 accepted (proof-supported boundary)";
        return r;
      };
      e.family = [lower](const DistributionSpec& s, const TailQuery& q) {
        const double a = s.param("alpha"), b = s.param("beta"), z = q.z;
        const double zb = std::pow(z, b);
        const double star = 1 / zb;
        Bracket br = lower ? Bracket{a, std::max(star, a) * 4}
                           : Bracket{std::min(star, a) * 1e-2, a};
        return LrFamily{br,
                        [=](double th) { return std::log(a / th) + (th - a) * zb; },
                        star};
      };
      add(std::move(e));
    }

    return v;
  }();
  return table;
}

const EntryImpl* find_impl(const std::string& id) {
  for (const auto& e : impls())
    if (e.meta.id == id) return &e;
  return nullptr;
}

}  // namespace

BoundResult evaluate_bound(const std::string& entry_id, const DistributionSpec& spec,
                           const TailQuery& query) {
  const EntryImpl* e = find_impl(entry_id);
  if (!e) throw std::invalid_argument("unknown catalog entry: " + entry_id);
  if (query.n < 1) return invalid_bound("sample count n must be >= 1");
  if (!std::isfinite(query.z)) return invalid_bound("z must be finite");
  if (auto reason = e->check(spec, query); !reason.empty())
    return invalid_bound(reason);
  return e->eval(spec, query);
}

double solve_implicit_theta(const std::string& entry_id, const DistributionSpec& spec,
                            double z) {
  const EntryImpl* e = find_impl(entry_id);
  if (!e) throw std::invalid_argument("unknown catalog entry: " + entry_id);
  if (!e->implicit_theta)
    throw std::invalid_argument(entry_id + " has no implicit tilt equation");
  TailQuery q{e->meta.direction, z, 1};
  if (auto reason = e->check(spec, q); !reason.empty())
    throw std::invalid_argument(entry_id + ": " + reason);
  return e->implicit_theta(spec, z);
}

LrFamily make_lr_family(const std::string& entry_id, const DistributionSpec& spec,
                        const TailQuery& query) {
  const EntryImpl* e = find_impl(entry_id);
  if (!e) throw std::invalid_argument("unknown catalog entry: " + entry_id);
  if (!e->family)
    throw std::invalid_argument(entry_id + " has no bounding family (derived entry)");
  if (auto reason = e->check(spec, query); !reason.empty())
    throw std::invalid_argument(entry_id + ": " + reason);
  return e->family(spec, query);
}

const std::vector<CatalogEntry>& list_catalog() {
  static const std::vector<CatalogEntry> metas = [] {
    std::vector<CatalogEntry> m;
    for (const auto& e : impls()) m.push_back(e.meta);
    return m;
  }();
  return metas;
}

const CatalogEntry* find_entry(const std::string& id) {
  for (const auto& e : list_catalog())
    if (e.id == id) return &e;
  return nullptr;
}

double powerlaw_threshold(double theta, double beta) {
  if (!(beta > 1)) throw std::invalid_argument("powerlaw_threshold: beta must be > 1");
  if (!(theta > 1)) throw std::invalid_argument("powerlaw_threshold: theta must be > 1");
  return powerlaw_mean(theta, beta);
}

}  // namespace lrb
