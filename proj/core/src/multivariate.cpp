#include "lrb/multivariate.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lrb/numerics.hpp"
#include "lrb/specfun.hpp"

namespace lrb {

namespace {

bool finite_all(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

BoundResult mvn_orthant_bound(const std::vector<double>& mu, const SpdMatrix& sigma,
                              const std::vector<double>& z, long n) {
  const std::size_t p = mu.size();
  if (p == 0) return invalid_bound("dimension must be positive");
  if (sigma.dim() != p || z.size() != p)
    return invalid_bound("mu, sigma, and z dimensions disagree");
  if (n < 1) return invalid_bound("sample count n must be >= 1");
  if (!finite_all(mu) || !finite_all(z)) return invalid_bound("inputs must be finite");

  std::vector<double> siz, simu;
  try {
    siz = spd_solve(sigma, z);
    simu = spd_solve(sigma, mu);
  } catch (const std::domain_error&) {
    return invalid_bound("sigma is not positive definite");
  }
  for (std::size_t i = 0; i < p; ++i)
    if (siz[i] < simu[i] - 1e-12)
      return invalid_bound("requires sigma^-1 z >= sigma^-1 mu componentwise");

  double muSz = 0, zSz = 0, muSmu = 0;
  for (std::size_t i = 0; i < p; ++i) {
    muSz += mu[i] * siz[i];
    zSz += z[i] * siz[i];
    muSmu += mu[i] * simu[i];
  }
  return bound_from_log(static_cast<double>(n) * (muSz - 0.5 * (zSz + muSmu)),
                        std::nullopt);
}

BoundResult dcm_orthant_bound(const std::vector<double>& alphas, double trials,
                              const std::vector<double>& z) {
  if (alphas.size() < 2) return invalid_bound("need a slack category and at least one count");
  const std::size_t k = alphas.size() - 1;
  if (z.size() != k) return invalid_bound("z must have one entry per non-slack category");
  for (double a : alphas)
    if (!(a > 0) || !std::isfinite(a)) return invalid_bound("alphas must be positive");
  if (!(trials >= 1) || std::fabs(trials - std::round(trials)) > 1e-9)
    return invalid_bound("trials must be a positive integer");

  const double asum = std::accumulate(alphas.begin(), alphas.end(), 0.0);
  double zsum = 0;
  for (std::size_t l = 0; l < k; ++l) {
    if (!(z[l] > 0)) return invalid_bound("requires z_l > 0");
    if (!(z[l] <= trials * alphas[l + 1] / asum))
      return invalid_bound("requires z_l <= trials*alpha_l/sum(alpha)");
    zsum += z[l];
  }
  if (!(zsum < trials)) return invalid_bound("requires sum(z) < trials");

  // Tilted Dirichlet parameters: keep the slack weight, shrink each bounded
  // category in proportion to its threshold.
  const double a0 = alphas[0];
  std::vector<double> theta(k + 1);
  theta[0] = a0;
  double tsum = a0;
  for (std::size_t l = 0; l < k; ++l) {
    theta[l + 1] = a0 * z[l] / (trials - zsum);
    tsum += theta[l + 1];
  }

  double lb = log_gamma(asum) + log_gamma(trials + tsum) - log_gamma(tsum) -
              log_gamma(trials + asum);
  for (std::size_t l = 0; l < k; ++l)
    lb += log_gamma(z[l] + alphas[l + 1]) + log_gamma(theta[l + 1]) -
          log_gamma(z[l] + theta[l + 1]) - log_gamma(alphas[l + 1]);
  return bound_from_log(lb, std::nullopt);
}

BoundResult img_loewner_bound(int p, double alpha, double rho) {
  if (p < 1) return invalid_bound("dimension must be positive");
  if (!(rho > 0 && rho < 1)) return invalid_bound("requires 0 < rho < 1");
  if (!(2 * alpha - p - 1 > 0)) return invalid_bound("requires 2*alpha > p + 1");
  const double lb = -p * alpha * std::log(rho) -
                    0.5 * p * (1 / rho - 1) * (2 * alpha - p - 1);
  return bound_from_log(lb, std::nullopt);
}

namespace {

// ln Lambda(theta) for the multivariate Pareto orthant bound, with
// S = 1 - k + sum z_i/beta_i.
double mvp_log_lambda(double alpha, std::size_t k, double logS, double theta) {
  double lb = (theta - alpha) * logS;
  for (std::size_t i = 0; i < k; ++i) lb += std::log((alpha + i) / (theta + i));
  return lb;
}

}  // namespace

BoundResult mvp_orthant_bound(double alpha, const std::vector<double>& betas,
                              const std::vector<double>& z, long n,
                              MvpStrategy strategy, std::optional<double> theta) {
  const std::size_t k = betas.size();
  if (k == 0) return invalid_bound("dimension must be positive");
  if (z.size() != k) return invalid_bound("betas and z dimensions disagree");
  if (!(alpha > 0)) return invalid_bound("alpha must be > 0");
  if (n < 1) return invalid_bound("sample count n must be >= 1");

  double S = 1.0 - static_cast<double>(k);
  double ratio_sum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(betas[i] > 0)) return invalid_bound("betas must be positive");
    if (!(z[i] > betas[i])) return invalid_bound("requires z_l > beta_l");
    ratio_sum += z[i] / betas[i];
    S += z[i] / betas[i];
  }
  const double logS = std::log(S);

  auto result = [&](double th) {
    return bound_from_log(n * mvp_log_lambda(alpha, k, logS, th), th);
  };

  if (strategy == MvpStrategy::direct) {
    if (!theta) return invalid_bound("direct strategy needs a theta value");
    if (!(*theta > alpha)) return invalid_bound("requires theta > alpha");
    return result(*theta);
  }

  // balanced_root: theta with sum_{l<k} 1/(theta+l) = ln S; a root above
  // alpha exists iff the sum at alpha exceeds ln S.
  auto digamma_like = [k](double th) {
    double s = 0;
    for (std::size_t l = 0; l < k; ++l) s += 1.0 / (th + l);
    return s;
  };
  std::optional<double> th_root;
  if (digamma_like(alpha) > logS && logS > 0) {
    auto f = [&](double th) { return digamma_like(th) - logS; };
    double hi = alpha + 1;
    for (int i = 0; i < 200 && f(hi) > 0; ++i) hi = alpha + (hi - alpha) * 2;
    th_root = find_root_bracketed(f, {alpha, hi}, SearchConfig{1e-13, 1e-13, 300});
  }

  // mean_based: match the average threshold ratio to the mean of the tilted
  // law, needs alpha > 1 and the ratio below the mean's supremum.
  std::optional<double> th_mean;
  const double r = ratio_sum / static_cast<double>(k);
  if (alpha > 1 && r > 1 && r < alpha / (alpha - 1)) th_mean = 1 + 1 / (r - 1);

  switch (strategy) {
    case MvpStrategy::balanced_root:
      if (!th_root) return invalid_bound("no balanced-root theta above alpha exists");
      return result(*th_root);
    case MvpStrategy::mean_based:
      if (!th_mean)
        return invalid_bound("mean-based theta needs alpha > 1 and the average "
                             "z_i/beta_i in (1, alpha/(alpha-1))");
      return result(*th_mean);
    default: {
      double best = mvp_log_lambda(alpha, k, logS, alpha);  // theta = alpha: Lambda = 1
      double best_th = alpha;
      for (auto cand : {th_root, th_mean}) {
        if (!cand) continue;
        const double lb = mvp_log_lambda(alpha, k, logS, *cand);
        if (lb < best) {
          best = lb;
          best_th = *cand;
        }
      }
      return bound_from_log(n * best, best_th);
    }
  }
}

}  // namespace lrb
