#pragma once

#include <optional>
#include <vector>

#include "lrb/lr_engine.hpp"
#include "lrb/smallmat.hpp"

// Multivariate tail bounds: Gaussian upper orthant, Dirichlet-compound
// multinomial lower orthant, inverse matrix gamma Loewner contraction, and
// multivariate Pareto lower orthant.

namespace lrb {

// P(sample mean of n iid N(mu, Sigma) vectors >= z componentwise).
// Requires Sigma^-1 z >= Sigma^-1 mu componentwise (tolerance 1e-12).
BoundResult mvn_orthant_bound(const std::vector<double>& mu, const SpdMatrix& sigma,
                              const std::vector<double>& z, long n = 1);

// P(X_l <= z_l for all l) for a Dirichlet-compound multinomial count vector.
// alphas holds the k+1 Dirichlet parameters (slack category first), trials is
// the multinomial total.  Requires 0 < z_l <= trials*alpha_l/sum(alpha) and
// sum(z) < trials.
BoundResult dcm_orthant_bound(const std::vector<double>& alphas, double trials,
                              const std::vector<double>& z);

// P(X is dominated, in the Loewner order, by rho times the mean matrix) for a
// p x p inverse matrix gamma variate with shape alpha.  Requires 0 < rho < 1
// and 2*alpha - p - 1 > 0.  The bound can exceed 1 for small p.
BoundResult img_loewner_bound(int p, double alpha, double rho);

// How the tilt parameter for the multivariate Pareto bound is chosen.
enum class MvpStrategy {
  direct,         // caller-supplied theta
  balanced_root,  // theta solving sum_{l<k} 1/(theta+l) = ln S
  mean_based,     // theta = 1 + 1/(r - 1) with r the average z_i/beta_i
  best            // minimum over the applicable automatic choices
};

// P(sample mean of n iid multivariate Pareto vectors <= z componentwise),
// scale betas, common shape alpha.  Requires z_l > beta_l for every l.
BoundResult mvp_orthant_bound(double alpha, const std::vector<double>& betas,
                              const std::vector<double>& z, long n = 1,
                              MvpStrategy strategy = MvpStrategy::best,
                              std::optional<double> theta = std::nullopt);

}  // namespace lrb
