#include "lrb/smallmat.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace lrb {

SpdMatrix::SpdMatrix(std::size_t p, std::vector<double> row_major)
    : p_(p), a_(std::move(row_major)) {
  if (a_.size() != p * p)
    throw std::invalid_argument("SpdMatrix: data size does not match dimension");
}

CholeskyResult cholesky(const SpdMatrix& a, double eps) {
  const std::size_t p = a.dim();
  SpdMatrix l(p);
  double scale = 0.0;
  for (std::size_t i = 0; i < p; ++i)
    scale = std::max(scale, std::fabs(a.at(i, i)));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t j = 0; j < p; ++j) {
    double diag = a.at(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l.at(j, k) * l.at(j, k);
    if (!(diag > eps * scale)) return {false, SpdMatrix{}};
    const double ljj = std::sqrt(diag);
    l.at(j, j) = ljj;
    for (std::size_t i = j + 1; i < p; ++i) {
      double s = a.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
      l.at(i, j) = s / ljj;
    }
  }
  return {true, l};
}

double log_det(const SpdMatrix& a) {
  auto ch = cholesky(a);
  if (!ch.success) throw std::domain_error("log_det: matrix is not positive definite");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::log(ch.lower.at(i, i));
  return 2.0 * s;
}

std::vector<double> spd_solve(const SpdMatrix& a, const std::vector<double>& b) {
  const std::size_t p = a.dim();
  if (b.size() != p) throw std::invalid_argument("spd_solve: size mismatch");
  auto ch = cholesky(a);
  if (!ch.success) throw std::domain_error("spd_solve: matrix is not positive definite");
  const SpdMatrix& l = ch.lower;
  std::vector<double> y(p), x(p);
  for (std::size_t i = 0; i < p; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l.at(i, k) * y[k];
    y[i] = s / l.at(i, i);
  }
  for (std::size_t ii = p; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < p; ++k) s -= l.at(k, ii) * x[k];
    x[ii] = s / l.at(ii, ii);
  }
  return x;
}

bool loewner_leq(const SpdMatrix& a, const SpdMatrix& b, double eps) {
  const std::size_t p = a.dim();
  if (b.dim() != p) throw std::invalid_argument("loewner_leq: size mismatch");
  SpdMatrix diff(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      diff.at(i, j) = b.at(i, j) - a.at(i, j);
  return cholesky(diff, eps).success;
}

}  // namespace lrb
