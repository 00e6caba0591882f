#include "lrb/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lrb/specfun.hpp"

namespace lrb {

namespace {

constexpr double kLn2Pi = 1.8378770664093454836;

std::uint64_t splitmix(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_(splitmix(splitmix(seed + 0x9E3779B97F4A7C15ull) ^
                    (stream_id * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull))) {}

std::uint64_t RngStream::next_u64() {
  return splitmix(key_ + (++counter_) * 0x9E3779B97F4A7C15ull);
}

double RngStream::uniform01() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double RngStream::normal01() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform01()));
  const double a = 2.0 * 3.14159265358979323846 * uniform01();
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double RngStream::exponential() { return -std::log(uniform01()); }

double RngStream::gamma(double shape) {
  if (!(shape > 0)) throw std::invalid_argument("gamma shape must be > 0");
  if (shape < 1.0)
    return gamma(shape + 1.0) * std::pow(uniform01(), 1.0 / shape);
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal01();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

long RngStream::poisson(double lambda) {
  if (!(lambda >= 0)) throw std::invalid_argument("poisson mean must be >= 0");
  long total = 0;
  // Additivity keeps plain inversion in a range where e^-lambda is benign.
  while (lambda > 30.0) {
    double p = std::exp(-30.0), cum = p;
    const double u = uniform01();
    long k = 0;
    while (u > cum) {
      ++k;
      p *= 30.0 / k;
      cum += p;
    }
    total += k;
    lambda -= 30.0;
  }
  double p = std::exp(-lambda), cum = p;
  const double u = uniform01();
  long k = 0;
  while (u > cum && k < 1000) {
    ++k;
    p *= lambda / k;
    cum += p;
  }
  return total + k;
}

namespace {

double need(const DistributionSpec& s, const char* k) { return s.param(k); }

// ------------------------------------------------- log pmf helpers (lattice)

double log_pmf_borel(double theta, long x) {
  return (x - 1) * std::log(theta * x) - theta * x - log_gamma(x + 1.0);
}

double log_pmf_consul(double theta, double m, long x) {
  return -std::log(static_cast<double>(x)) + log_gamma(m * x + 1) -
         log_gamma(static_cast<double>(x)) - log_gamma(m * x - x + 2) +
         (x - 1) * (std::log(theta) - std::log1p(-theta)) +
         m * x * std::log1p(-theta);
}

double log_pmf_geeta(double theta, double beta, long x) {
  return -std::log(beta * x - 1) + log_gamma(beta * x) - log_gamma(x + 1.0) -
         log_gamma(beta * x - x) + (x - 1) * std::log(theta) +
         (beta * x - x) * std::log1p(-theta);
}

double log_pmf_laglog(double theta, double beta, long x) {
  return x * std::log(theta) + x * (beta - 1) * std::log1p(-theta) +
         log_gamma(beta * x) - log_gamma(x + 1.0) - log_gamma(beta * x - x + 1) -
         std::log(-std::log1p(-theta));
}

double log_pmf_lagnegbin(double theta, double alpha, double beta, long x) {
  return std::log(beta) - std::log(alpha * x + beta) + log_gamma(alpha * x + beta + 1) -
         log_gamma(x + 1.0) - log_gamma(alpha * x + beta - x + 1) +
         x * std::log(theta) + (beta + alpha * x - x) * std::log1p(-theta);
}

double log_pmf_logarithmic(double q, long x) {
  return x * std::log(q) - std::log(static_cast<double>(x)) -
         std::log(-std::log1p(-q));
}

double log_pmf_beta_negbinom(double a, double b, double r, long x) {
  return log_gamma(r + x) - log_gamma(x + 1.0) - log_gamma(r) +
         log_beta(a + r, b + x) - log_beta(a, b);
}

// ln |s(x, m)|, unsigned Stirling numbers of the first kind, log-domain
// recurrence |s(n+1,k)| = n|s(n,k)| + |s(n,k-1)|.
double log_unsigned_stirling1(long x, long m) {
  if (m < 0 || m > x) return -std::numeric_limits<double>::infinity();
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> row(m + 1, ninf);  // row for n = 0
  row[0] = 0.0;                          // |s(0,0)| = 1
  auto logadd = [](double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
  };
  for (long n = 0; n < x; ++n) {
    std::vector<double> next(m + 1, ninf);
    for (long k = std::min<long>(m, n + 1); k >= 1; --k) {
      const double carry = (n > 0) ? std::log(static_cast<double>(n)) + row[k] : ninf;
      next[k] = logadd(carry, row[k - 1]);
    }
    next[0] = ninf;  // |s(n,0)| = 0 for n >= 1
    row = std::move(next);
  }
  return row[m];
}

double log_pmf_stirling(double theta, long m, long x) {
  return log_gamma(m + 1.0) + log_unsigned_stirling1(x, m) + x * std::log(theta) -
         log_gamma(x + 1.0) - m * std::log(-std::log1p(-theta));
}

// ---------------------------------------------------------- lattice sampling

struct DiscreteTable {
  long x0 = 0;
  std::vector<double> cdf;
};

DiscreteTable build_table(long x0, const std::function<double(long)>& log_pmf) {
  DiscreteTable t;
  t.x0 = x0;
  double cum = 0.0;
  for (long x = x0; x < x0 + 2000000; ++x) {
    cum += std::exp(log_pmf(x));
    t.cdf.push_back(cum);
    if (cum >= 1.0 - 1e-12) break;
  }
  return t;
}

long draw_table(const DiscreteTable& t, double u) {
  const auto it = std::lower_bound(t.cdf.begin(), t.cdf.end(), u);
  const long idx = (it == t.cdf.end()) ? static_cast<long>(t.cdf.size()) - 1
                                       : static_cast<long>(it - t.cdf.begin());
  return t.x0 + idx;
}

double powerlaw_norm(double a, double beta) {
  if (std::fabs(a - 1.0) < 1e-9) return std::log(beta);
  return -std::expm1((1 - a) * std::log(beta)) / (a - 1);
}

}  // namespace

Sampler::Sampler(const DistributionSpec& spec) {
  const std::string& f = spec.family;
  if (f == "normal") {
    const double mu = need(spec, "mu"), sg = need(spec, "sigma");
    fn_ = [=](RngStream& r) { return mu + sg * r.normal01(); };
  } else if (f == "beta") {
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    fn_ = [=](RngStream& r) {
      const double g1 = r.gamma(a), g2 = r.gamma(b);
      return g1 / (g1 + g2);
    };
  } else if (f == "betaprime") {
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    fn_ = [=](RngStream& r) { return r.gamma(a) / r.gamma(b); };
  } else if (f == "beta_negbinom") {
    const double a = need(spec, "alpha"), b = need(spec, "beta"), tr = need(spec, "n");
    fn_ = [=](RngStream& r) {
      const double g1 = r.gamma(a), g2 = r.gamma(b);
      const double p = g1 / (g1 + g2);
      return static_cast<double>(r.poisson(r.gamma(tr) * (1 - p) / p));
    };
  } else if (f == "borel") {
    const double th = need(spec, "theta");
    auto t = build_table(1, [=](long x) { return log_pmf_borel(th, x); });
    fn_ = [t](RngStream& r) { return static_cast<double>(draw_table(t, r.uniform01())); };
  } else if (f == "consul") {
    const double th = need(spec, "theta"), m = need(spec, "m");
    auto t = build_table(1, [=](long x) { return log_pmf_consul(th, m, x); });
    fn_ = [t](RngStream& r) { return static_cast<double>(draw_table(t, r.uniform01())); };
  } else if (f == "geeta") {
    const double th = need(spec, "theta"), b = need(spec, "beta");
    auto t = build_table(1, [=](long x) { return log_pmf_geeta(th, b, x); });
    fn_ = [t](RngStream& r) { return static_cast<double>(draw_table(t, r.uniform01())); };
  } else if (f == "gumbel") {
    const double mu = need(spec, "mu"), b = need(spec, "beta");
    fn_ = [=](RngStream& r) { return mu - b * std::log(-std::log(r.uniform01())); };
  } else if (f == "invgamma") {
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    fn_ = [=](RngStream& r) { return b / r.gamma(a); };
  } else if (f == "invgauss") {
    const double l = need(spec, "lambda"), mu = need(spec, "theta");
    fn_ = [=](RngStream& r) {
      const double nrm = r.normal01();
      const double y = nrm * nrm;
      const double x = mu + mu * mu * y / (2 * l) -
                       (mu / (2 * l)) * std::sqrt(4 * mu * l * y + mu * mu * y * y);
      return (r.uniform01() <= mu / (mu + x)) ? x : mu * mu / x;
    };
  } else if (f == "laglog") {
    const double th = need(spec, "theta"), b = need(spec, "beta");
    auto t = build_table(1, [=](long x) { return log_pmf_laglog(th, b, x); });
    fn_ = [t](RngStream& r) { return static_cast<double>(draw_table(t, r.uniform01())); };
  } else if (f == "lagnegbin") {
    const double th = need(spec, "theta"), a = need(spec, "alpha"), b = need(spec, "beta");
    auto t = build_table(0, [=](long x) { return log_pmf_lagnegbin(th, a, b, x); });
    fn_ = [t](RngStream& r) { return static_cast<double>(draw_table(t, r.uniform01())); };
  } else if (f == "laplace") {
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    fn_ = [=](RngStream& r) {
      const double u = r.uniform01();
      return (u < 0.5) ? a + b * std::log(2 * u) : a - b * std::log(2 * (1 - u));
    };
  } else if (f == "logarithmic") {
    const double q = need(spec, "q");
    auto t = build_table(1, [=](long x) { return log_pmf_logarithmic(q, x); });
    fn_ = [t](RngStream& r) { return static_cast<double>(draw_table(t, r.uniform01())); };
  } else if (f == "lognormal") {
    const double mu = need(spec, "mu"), sg = need(spec, "sigma");
    fn_ = [=](RngStream& r) { return std::exp(mu + sg * r.normal01()); };
  } else if (f == "nakagami") {
    const double m = need(spec, "m"), sg = need(spec, "sigma");
    fn_ = [=](RngStream& r) { return sg * std::sqrt(r.gamma(m)); };
  } else if (f == "pareto") {
    const double th = need(spec, "theta"), a = need(spec, "a");
    fn_ = [=](RngStream& r) { return a * std::pow(r.uniform01(), -1.0 / th); };
  } else if (f == "powerlaw") {
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    fn_ = [=](RngStream& r) {
      const double u = r.uniform01();
      if (std::fabs(a - 1.0) < 1e-9) return std::exp(u * std::log(b));
      return std::pow(1 - u * -std::expm1((1 - a) * std::log(b)), 1 / (1 - a));
    };
  } else if (f == "stirling") {
    const double th = need(spec, "theta");
    const long m = std::lround(need(spec, "m"));
    auto t = build_table(1, [=](long x) { return log_pmf_logarithmic(th, x); });
    fn_ = [t, m](RngStream& r) {
      long s = 0;
      for (long i = 0; i < m; ++i) s += draw_table(t, r.uniform01());
      return static_cast<double>(s);
    };
  } else if (f == "f") {
    const double m = need(spec, "m"), n = need(spec, "n");
    fn_ = [=](RngStream& r) {
      return (2 * r.gamma(m / 2) / m) / (2 * r.gamma(n / 2) / n);
    };
  } else if (f == "t") {
    const double n = need(spec, "n");
    fn_ = [=](RngStream& r) {
      return r.normal01() / std::sqrt(2 * r.gamma(n / 2) / n);
    };
  } else if (f == "truncexp") {
    const double th = need(spec, "theta");
    fn_ = [=](RngStream& r) {
      return std::log1p(r.uniform01() * std::expm1(th)) / th;
    };
  } else if (f == "uniform") {
    fn_ = [](RngStream& r) { return r.uniform01(); };
  } else if (f == "weibull") {
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    fn_ = [=](RngStream& r) { return std::pow(r.exponential() / a, 1 / b); };
  } else {
    throw std::invalid_argument("no sampler for family " + f);
  }
}

double Sampler::draw(RngStream& rng) const { return fn_(rng); }

SampleBatch sample(const DistributionSpec& spec, RngStream& rng, std::size_t count) {
  Sampler s(spec);
  SampleBatch b;
  b.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) b.values.push_back(s.draw(rng));
  return b;
}

double log_density(const DistributionSpec& spec, double x) {
  const std::string& f = spec.family;
  auto bad = [&]() -> double {
    throw std::domain_error(f + ": x outside the support");
  };
  auto as_lattice = [&](long min_x) {
    if (std::fabs(x - std::round(x)) > 1e-9 || std::llround(x) < min_x) bad();
    return std::lround(x);
  };

  if (f == "normal") {
    const double mu = need(spec, "mu"), sg = need(spec, "sigma");
    const double d = (x - mu) / sg;
    return -std::log(sg) - 0.5 * kLn2Pi - 0.5 * d * d;
  }
  if (f == "beta") {
    if (!(x > 0 && x < 1)) bad();
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    return (a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - log_beta(a, b);
  }
  if (f == "betaprime") {
    if (!(x > 0)) bad();
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    return (a - 1) * std::log(x) - (a + b) * std::log1p(x) - log_beta(a, b);
  }
  if (f == "beta_negbinom")
    return log_pmf_beta_negbinom(need(spec, "alpha"), need(spec, "beta"),
                                 need(spec, "n"), as_lattice(0));
  if (f == "borel") return log_pmf_borel(need(spec, "theta"), as_lattice(1));
  if (f == "consul")
    return log_pmf_consul(need(spec, "theta"), need(spec, "m"), as_lattice(1));
  if (f == "geeta")
    return log_pmf_geeta(need(spec, "theta"), need(spec, "beta"), as_lattice(1));
  if (f == "gumbel") {
    const double mu = need(spec, "mu"), b = need(spec, "beta");
    const double u = (mu - x) / b;
    return -std::log(b) + u - std::exp(u);
  }
  if (f == "invgamma") {
    if (!(x > 0)) bad();
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    return a * std::log(b) - (a + 1) * std::log(x) - b / x - log_gamma(a);
  }
  if (f == "invgauss") {
    if (!(x > 0)) bad();
    const double l = need(spec, "lambda"), mu = need(spec, "theta");
    return 0.5 * (std::log(l) - kLn2Pi - 3 * std::log(x)) -
           l * (x - mu) * (x - mu) / (2 * mu * mu * x);
  }
  if (f == "laglog")
    return log_pmf_laglog(need(spec, "theta"), need(spec, "beta"), as_lattice(1));
  if (f == "lagnegbin")
    return log_pmf_lagnegbin(need(spec, "theta"), need(spec, "alpha"),
                             need(spec, "beta"), as_lattice(0));
  if (f == "laplace") {
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    return -std::log(2 * b) - std::fabs(x - a) / b;
  }
  if (f == "logarithmic") return log_pmf_logarithmic(need(spec, "q"), as_lattice(1));
  if (f == "lognormal") {
    if (!(x > 0)) bad();
    const double mu = need(spec, "mu"), sg = need(spec, "sigma");
    const double d = (std::log(x) - mu) / sg;
    return -std::log(x * sg) - 0.5 * kLn2Pi - 0.5 * d * d;
  }
  if (f == "nakagami") {
    if (!(x > 0)) bad();
    const double m = need(spec, "m"), sg = need(spec, "sigma");
    return std::log(2.0) + (2 * m - 1) * std::log(x) - x * x / (sg * sg) -
           log_gamma(m) - 2 * m * std::log(sg);
  }
  if (f == "pareto") {
    const double th = need(spec, "theta"), a = need(spec, "a");
    if (!(x >= a)) bad();
    return std::log(th) + th * std::log(a) - (th + 1) * std::log(x);
  }
  if (f == "powerlaw") {
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    if (!(x >= 1 && x <= b)) bad();
    return -a * std::log(x) - std::log(powerlaw_norm(a, b));
  }
  if (f == "stirling") {
    const long m = std::lround(need(spec, "m"));
    return log_pmf_stirling(need(spec, "theta"), m, as_lattice(m));
  }
  if (f == "f") {
    if (!(x > 0)) bad();
    const double m = need(spec, "m"), n = need(spec, "n");
    return 0.5 * m * (std::log(m) - std::log(n)) + (0.5 * m - 1) * std::log(x) -
           0.5 * (m + n) * std::log1p(m * x / n) - log_beta(0.5 * m, 0.5 * n);
  }
  if (f == "t") {
    const double n = need(spec, "n");
    return -0.5 * std::log(n) - log_beta(0.5, 0.5 * n) -
           0.5 * (n + 1) * std::log1p(x * x / n);
  }
  if (f == "truncexp") {
    if (!(x > 0 && x < 1)) bad();
    const double th = need(spec, "theta");
    return th * x - std::log(std::expm1(th) / th);
  }
  if (f == "uniform") {
    if (!(x >= 0 && x <= 1)) bad();
    return 0.0;
  }
  if (f == "weibull") {
    if (!(x > 0)) bad();
    const double a = need(spec, "alpha"), b = need(spec, "beta");
    return std::log(a * b) + (b - 1) * std::log(x) - a * std::pow(x, b);
  }
  throw std::invalid_argument("no density for family " + f);
}

std::vector<double> sample_mvn(const std::vector<double>& mu, const SpdMatrix& sigma,
                               RngStream& rng) {
  const std::size_t p = mu.size();
  auto ch = cholesky(sigma);
  if (!ch.success) throw std::domain_error("sample_mvn: sigma is not SPD");
  std::vector<double> z(p);
  for (auto& v : z) v = rng.normal01();
  std::vector<double> x(mu);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j <= i; ++j) x[i] += ch.lower.at(i, j) * z[j];
  return x;
}

std::vector<double> sample_dcm(const std::vector<double>& alphas, long trials,
                               RngStream& rng) {
  const std::size_t cats = alphas.size();
  std::vector<double> w(cats);
  double wsum = 0;
  for (std::size_t i = 0; i < cats; ++i) {
    w[i] = rng.gamma(alphas[i]);
    wsum += w[i];
  }
  std::vector<double> counts(cats - 1, 0.0);  // non-slack categories only
  for (long t = 0; t < trials; ++t) {
    double u = rng.uniform01() * wsum;
    std::size_t c = 0;
    while (c + 1 < cats && u > w[c]) {
      u -= w[c];
      ++c;
    }
    if (c > 0) counts[c - 1] += 1.0;
  }
  return counts;
}

std::vector<double> sample_mvp(double alpha, const std::vector<double>& betas,
                               RngStream& rng) {
  const double zg = rng.gamma(alpha);
  std::vector<double> x(betas.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = betas[i] * (1.0 + rng.exponential() / zg);
  return x;
}

SpdMatrix sample_wishart_identity(std::size_t p, double dof, RngStream& rng) {
  if (!(dof > static_cast<double>(p) - 1)) throw std::invalid_argument("dof too small");
  SpdMatrix a(p);  // Bartlett lower factor
  for (std::size_t i = 0; i < p; ++i) {
    a.at(i, i) = std::sqrt(2.0 * rng.gamma(0.5 * (dof - i)));
    for (std::size_t j = 0; j < i; ++j) a.at(i, j) = rng.normal01();
  }
  SpdMatrix w(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) s += a.at(i, k) * a.at(j, k);
      w.at(i, j) = w.at(j, i) = s;
    }
  return w;
}

}  // namespace lrb
