#pragma once

#include <cstdint>
#include <vector>

#include "lrb/catalog.hpp"
#include "lrb/smallmat.hpp"

// Random variate generation and density evaluation for every catalog family.
// The generator is counter-based, so a (seed, stream_id) pair names a fixed,
// platform-independent sequence; parallel consumers take distinct stream ids.

namespace lrb {

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform01();   // strictly inside (0,1)
  double normal01();
  double exponential();           // unit rate
  double gamma(double shape);     // unit scale, any shape > 0
  long poisson(double lambda);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct SampleBatch {
  std::vector<double> values;
  std::size_t count() const { return values.size(); }
};

// Draws from spec's family.  Built once per spec; draw() is const and
// thread-safe, all mutable state lives in the caller's RngStream.
class Sampler {
 public:
  explicit Sampler(const DistributionSpec& spec);  // throws on unknown family
  double draw(RngStream& rng) const;

 private:
  std::function<double(RngStream&)> fn_;
};

SampleBatch sample(const DistributionSpec& spec, RngStream& rng, std::size_t count);

// Exact log pdf/pmf; throws std::domain_error for x outside the support.
double log_density(const DistributionSpec& spec, double x);

// Multivariate draws used by the verifier.
std::vector<double> sample_mvn(const std::vector<double>& mu, const SpdMatrix& sigma,
                               RngStream& rng);
// Counts for the k non-slack categories of a Dirichlet-compound multinomial.
std::vector<double> sample_dcm(const std::vector<double>& alphas, long trials,
                               RngStream& rng);
std::vector<double> sample_mvp(double alpha, const std::vector<double>& betas,
                               RngStream& rng);
// Wishart(I_p, dof) via the Bartlett factorization; the inverse matrix gamma
// verification runs on this slice (scale 2, shape = dof/2), where the Loewner
// event on X = W^-1 maps to one on W.
SpdMatrix sample_wishart_identity(std::size_t p, double dof, RngStream& rng);

}  // namespace lrb
