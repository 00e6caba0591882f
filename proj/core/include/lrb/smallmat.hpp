#pragma once

#include <cstddef>
#include <vector>

// Dense symmetric positive definite matrices of small dimension (p <= ~10),
// just enough linear algebra for the multivariate bounds: Cholesky, log
// determinant, linear solves, and the Loewner partial order test.

namespace lrb {

class SpdMatrix {
 public:
  SpdMatrix() : p_(0) {}
  explicit SpdMatrix(std::size_t p) : p_(p), a_(p * p, 0.0) {}
  SpdMatrix(std::size_t p, std::vector<double> row_major);

  std::size_t dim() const { return p_; }
  double& at(std::size_t i, std::size_t j) { return a_[i * p_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * p_ + j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  std::size_t p_;
  std::vector<double> a_;
};

struct CholeskyResult {
  bool success;          // false when the matrix is not positive definite
  SpdMatrix lower;       // L with A = L L^T, valid only when success
};

// Cholesky factorization.  A pivot at or below eps * (scale of the matrix)
// counts as failure, so semidefinite matrices on the boundary do not pass.
CholeskyResult cholesky(const SpdMatrix& a, double eps = 1e-10);

// ln det(A) via Cholesky; throws std::domain_error when A is not SPD.
double log_det(const SpdMatrix& a);

// Solves A x = b for SPD A; throws std::domain_error when A is not SPD.
std::vector<double> spd_solve(const SpdMatrix& a, const std::vector<double>& b);

// Loewner order test: returns true iff B - A is (strictly) positive
// definite under the Cholesky pivot tolerance.  Boundary cases where B - A
// is singular are reported as NOT satisfying the order.
bool loewner_leq(const SpdMatrix& a, const SpdMatrix& b, double eps = 1e-10);

}  // namespace lrb
