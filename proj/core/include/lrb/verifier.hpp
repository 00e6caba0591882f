#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "lrb/catalog.hpp"
#include "lrb/multivariate.hpp"
#include "lrb/smallmat.hpp"

// Monte Carlo certification that a bound dominates the empirical tail
// probability.  Dominance is asserted against the exact Clopper-Pearson
// lower confidence limit, not the raw point estimate, so sampling noise
// cannot produce spurious violations.
//
// Determinism: the sample space is split into `workers` contiguous blocks,
// block b drawing from stream_id b of the master seed; results are merged in
// block order, making (samples, seed, workers) the complete random input.

namespace lrb {

struct MonteCarloConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 12345;
  double confidence = 0.9999;
  unsigned workers = 1;
};

struct TailEstimate {
  double p_hat = 0.0;
  double cp_lower = 0.0;
  double cp_upper = 1.0;
};

struct VerificationReport {
  std::string entry_id;
  DistributionSpec spec;
  TailQuery query;
  double bound = 1.0;
  double log_bound = 0.0;
  bool valid = true;
  std::string reason;
  double p_hat = 0.0;
  double cp_lower = 0.0;
  double cp_upper = 1.0;
  bool dominated = true;
  double tightness = std::numeric_limits<double>::infinity();
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Empirical probability of the query event (a success is one simulated
// n-sample mean, or single draw for the point-query directions, satisfying
// the event) plus exact Clopper-Pearson limits at cfg.confidence.
TailEstimate estimate_tail(const DistributionSpec& spec, const TailQuery& query,
                           const MonteCarloConfig& cfg);

// Bound evaluation plus estimate_tail; dominated = (bound >= cp_lower).
// Invalid queries skip sampling and come back valid=false, bound=1,
// dominated vacuously true.
VerificationReport check_dominance(const std::string& entry_id,
                                   const DistributionSpec& spec,
                                   const TailQuery& query,
                                   const MonteCarloConfig& cfg);

// One report per (params, z, n) grid point, in grid order.
std::vector<VerificationReport> tightness_sweep(
    const std::string& entry_id, const std::vector<DistributionSpec>& param_grid,
    const std::vector<double>& z_grid, const std::vector<long>& n_grid,
    const MonteCarloConfig& cfg);

struct SweepSummary {
  std::size_t total = 0;
  std::size_t valid_points = 0;
  std::size_t violations = 0;
  double min_tightness = 0.0;
  double median_tightness = 0.0;
  double max_tightness = 0.0;
};

// Aggregates over the valid reports only.
SweepSummary summarize(const std::vector<VerificationReport>& reports);

// Multivariate checks; entry ids mvn_upper_orthant, dcm_lower_orthant,
// img_loewner_lower, mvp_lower_orthant.
VerificationReport check_dominance_mvn(const std::vector<double>& mu,
                                       const SpdMatrix& sigma,
                                       const std::vector<double>& z, long n,
                                       const MonteCarloConfig& cfg);
VerificationReport check_dominance_dcm(const std::vector<double>& alphas,
                                       long trials, const std::vector<double>& z,
                                       const MonteCarloConfig& cfg);
// Runs on the Wishart slice of the inverse matrix gamma family (scale 2,
// shape dof/2), the only case with a standard exact sampler.
VerificationReport check_dominance_img(int p, double alpha, double rho,
                                       const MonteCarloConfig& cfg);
VerificationReport check_dominance_mvp(double alpha, const std::vector<double>& betas,
                                       const std::vector<double>& z, long n,
                                       MvpStrategy strategy,
                                       const MonteCarloConfig& cfg);

// Exact Clopper-Pearson binomial limits at the given two-sided confidence.
double clopper_pearson_lower(std::uint64_t successes, std::uint64_t trials,
                             double confidence);
double clopper_pearson_upper(std::uint64_t successes, std::uint64_t trials,
                             double confidence);

}  // namespace lrb
