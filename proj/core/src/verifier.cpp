#include "lrb/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "lrb/samplers.hpp"
#include "lrb/specfun.hpp"

namespace lrb {

namespace {

// Regularized incomplete beta via the standard continued fraction (Lentz).
double inc_beta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  const double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front =
      a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1) / (a + b + 2))
    return std::exp(ln_front) * inc_beta_cf(a, b, x) / a;
  return 1.0 - std::exp(ln_front) * inc_beta_cf(b, a, 1.0 - x) / b;
}

double inv_reg_inc_beta(double p, double a, double b) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (reg_inc_beta(a, b, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Runs `samples` independent event trials split into contiguous blocks, one
// RngStream per block; the event callable must be shareable across threads.
std::uint64_t count_successes(const MonteCarloConfig& cfg,
                              const std::function<bool(RngStream&)>& event) {
  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<std::uint64_t> hits(workers, 0);
  auto run_block = [&](unsigned b) {
    const std::uint64_t base = cfg.samples / workers, rem = cfg.samples % workers;
    const std::uint64_t trials = base + (b < rem ? 1 : 0);
    RngStream rng(cfg.seed, b);
    std::uint64_t h = 0;
    for (std::uint64_t t = 0; t < trials; ++t)
      if (event(rng)) ++h;
    hits[b] = h;
  };
  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned b = 0; b < workers; ++b) pool.emplace_back(run_block, b);
    for (auto& t : pool) t.join();
  }
  std::uint64_t total = 0;
  for (unsigned b = 0; b < workers; ++b) total += hits[b];
  return total;
}

TailEstimate estimate_from_hits(std::uint64_t hits, const MonteCarloConfig& cfg) {
  TailEstimate e;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(cfg.samples);
  e.cp_lower = clopper_pearson_lower(hits, cfg.samples, cfg.confidence);
  e.cp_upper = clopper_pearson_upper(hits, cfg.samples, cfg.confidence);
  return e;
}

VerificationReport finish_report(VerificationReport r, const TailEstimate& e,
                                 const MonteCarloConfig& cfg) {
  r.p_hat = e.p_hat;
  r.cp_lower = e.cp_lower;
  r.cp_upper = e.cp_upper;
  r.dominated = r.bound >= e.cp_lower;
  r.tightness = e.p_hat > 0 ? r.bound / e.p_hat
                            : std::numeric_limits<double>::infinity();
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  return r;
}

}  // namespace

double clopper_pearson_lower(std::uint64_t s, std::uint64_t n, double confidence) {
  if (!(confidence > 0 && confidence < 1))
    throw std::invalid_argument("confidence must be in (0,1)");
  if (s == 0) return 0.0;
  const double a2 = 0.5 * (1.0 - confidence);
  return inv_reg_inc_beta(a2, static_cast<double>(s),
                          static_cast<double>(n - s) + 1.0);
}

double clopper_pearson_upper(std::uint64_t s, std::uint64_t n, double confidence) {
  if (!(confidence > 0 && confidence < 1))
    throw std::invalid_argument("confidence must be in (0,1)");
  if (s == n) return 1.0;
  const double a2 = 0.5 * (1.0 - confidence);
  return inv_reg_inc_beta(1.0 - a2, static_cast<double>(s) + 1.0,
                          static_cast<double>(n - s));
}

TailEstimate estimate_tail(const DistributionSpec& spec, const TailQuery& query,
                           const MonteCarloConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  const Sampler sampler(spec);
  const long n = std::max<long>(1, query.n);
  const double z = query.z;
  const Direction dir = query.direction;

  auto event = [&sampler, n, z, dir](RngStream& rng) {
    if (dir == Direction::lower_mean || dir == Direction::upper_mean) {
      double sum = 0;
      for (long i = 0; i < n; ++i) sum += sampler.draw(rng);
      const double mean = sum / static_cast<double>(n);
      return dir == Direction::lower_mean ? mean <= z : mean >= z;
    }
    const double x = sampler.draw(rng);
    switch (dir) {
      case Direction::two_sided_outer: return std::fabs(x) >= z;
      case Direction::two_sided_inner: return std::fabs(x) <= z;
      default: return x <= z;  // cdf_point
    }
  };
  return estimate_from_hits(count_successes(cfg, event), cfg);
}

VerificationReport check_dominance(const std::string& entry_id,
                                   const DistributionSpec& spec,
                                   const TailQuery& query,
                                   const MonteCarloConfig& cfg) {
  VerificationReport r;
  r.entry_id = entry_id;
  r.spec = spec;
  r.query = query;
  r.samples = cfg.samples;
  r.seed = cfg.seed;

  const BoundResult b = evaluate_bound(entry_id, spec, query);
  r.bound = b.bound;
  r.log_bound = b.log_bound;
  r.valid = b.valid;
  r.reason = b.reason;
  if (!b.valid) {
    r.dominated = true;  // bound 1 holds vacuously
    return r;
  }
  return finish_report(std::move(r), estimate_tail(spec, query, cfg), cfg);
}

std::vector<VerificationReport> tightness_sweep(
    const std::string& entry_id, const std::vector<DistributionSpec>& param_grid,
    const std::vector<double>& z_grid, const std::vector<long>& n_grid,
    const MonteCarloConfig& cfg) {
  const CatalogEntry* entry = find_entry(entry_id);
  if (!entry) throw std::invalid_argument("unknown catalog entry: " + entry_id);
  std::vector<VerificationReport> out;
  for (const auto& spec : param_grid)
    for (double z : z_grid)
      for (long n : n_grid) {
        TailQuery q{entry->direction, z, n};
        out.push_back(check_dominance(entry_id, spec, q, cfg));
      }
  return out;
}

SweepSummary summarize(const std::vector<VerificationReport>& reports) {
  SweepSummary s;
  s.total = reports.size();
  std::vector<double> tight;
  for (const auto& r : reports) {
    if (!r.valid) continue;
    ++s.valid_points;
    if (!r.dominated) ++s.violations;
    if (std::isfinite(r.tightness)) tight.push_back(r.tightness);
  }
  if (!tight.empty()) {
    std::sort(tight.begin(), tight.end());
    s.min_tightness = tight.front();
    s.max_tightness = tight.back();
    s.median_tightness = tight[tight.size() / 2];
  }
  return s;
}

namespace {

VerificationReport start_mv_report(const char* entry_id, const char* family,
                                   const MonteCarloConfig& cfg) {
  VerificationReport r;
  r.entry_id = entry_id;
  r.spec.family = family;
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  return r;
}

VerificationReport mv_finish(VerificationReport r, const BoundResult& b,
                             const std::function<bool(RngStream&)>& event,
                             const MonteCarloConfig& cfg) {
  r.bound = b.bound;
  r.log_bound = b.log_bound;
  r.valid = b.valid;
  r.reason = b.reason;
  if (!b.valid) {
    r.dominated = true;
    return r;
  }
  return finish_report(std::move(r),
                       estimate_from_hits(count_successes(cfg, event), cfg), cfg);
}

}  // namespace

VerificationReport check_dominance_mvn(const std::vector<double>& mu,
                                       const SpdMatrix& sigma,
                                       const std::vector<double>& z, long n,
                                       const MonteCarloConfig& cfg) {
  auto r = start_mv_report("mvn_upper_orthant", "mvn", cfg);
  r.query.direction = Direction::upper_mean;
  r.query.n = n;
  const BoundResult b = mvn_orthant_bound(mu, sigma, z, n);
  auto event = [&mu, &sigma, &z, n](RngStream& rng) {
    std::vector<double> mean(mu.size(), 0.0);
    for (long i = 0; i < n; ++i) {
      const auto x = sample_mvn(mu, sigma, rng);
      for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += x[j];
    }
    for (std::size_t j = 0; j < mean.size(); ++j)
      if (mean[j] / n < z[j]) return false;
    return true;
  };
  return mv_finish(std::move(r), b, event, cfg);
}

VerificationReport check_dominance_dcm(const std::vector<double>& alphas,
                                       long trials, const std::vector<double>& z,
                                       const MonteCarloConfig& cfg) {
  auto r = start_mv_report("dcm_lower_orthant", "dcm", cfg);
  r.query.direction = Direction::lower_mean;
  const BoundResult b = dcm_orthant_bound(alphas, static_cast<double>(trials), z);
  auto event = [&alphas, trials, &z](RngStream& rng) {
    const auto counts = sample_dcm(alphas, trials, rng);
    for (std::size_t j = 0; j < z.size(); ++j)
      if (counts[j] > z[j]) return false;
    return true;
  };
  return mv_finish(std::move(r), b, event, cfg);
}

VerificationReport check_dominance_img(int p, double alpha, double rho,
                                       const MonteCarloConfig& cfg) {
  auto r = start_mv_report("img_loewner_lower", "img", cfg);
  const BoundResult b = img_loewner_bound(p, alpha, rho);
  // On the Wishart slice X = W^-1 with W ~ Wishart(I, 2 alpha), and the mean
  // of X is I/(2 alpha - p - 1).  The event X below rho * mean (Loewner)
  // inverts to W above ((2 alpha - p - 1)/rho) * I.
  const double c = (2 * alpha - p - 1) / rho;
  auto event = [p, alpha, c](RngStream& rng) {
    const SpdMatrix w =
        sample_wishart_identity(static_cast<std::size_t>(p), 2 * alpha, rng);
    SpdMatrix ci(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) ci.at(i, i) = c;
    return loewner_leq(ci, w);
  };
  return mv_finish(std::move(r), b, event, cfg);
}

VerificationReport check_dominance_mvp(double alpha, const std::vector<double>& betas,
                                       const std::vector<double>& z, long n,
                                       MvpStrategy strategy,
                                       const MonteCarloConfig& cfg) {
  auto r = start_mv_report("mvp_lower_orthant", "mvp", cfg);
  r.query.direction = Direction::lower_mean;
  r.query.n = n;
  const BoundResult b = mvp_orthant_bound(alpha, betas, z, n, strategy);
  auto event = [alpha, &betas, &z, n](RngStream& rng) {
    std::vector<double> mean(betas.size(), 0.0);
    for (long i = 0; i < n; ++i) {
      const auto x = sample_mvp(alpha, betas, rng);
      for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += x[j];
    }
    for (std::size_t j = 0; j < mean.size(); ++j)
      if (mean[j] / n > z[j]) return false;
    return true;
  };
  return mv_finish(std::move(r), b, event, cfg);
}

}  // namespace lrb
