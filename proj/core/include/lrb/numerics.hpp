#pragma once

#include <functional>

// One-dimensional root finding and minimization on bracketing intervals.
// These routines back every implicit tilt-parameter solve in the catalog,
// so the default tolerances are deliberately tight.

namespace lrb {

struct SearchConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_iter = 200;
};

struct Bracket {
  double lo;
  double hi;
};

struct MinimizeResult {
  double x;
  double fx;
};

// Root of f on [b.lo, b.hi]; f(lo) and f(hi) must differ in sign (or one of
// them may be zero).  Brent-style hybrid of bisection with inverse
// interpolation.  Throws std::invalid_argument when the bracket does not
// straddle a sign change and std::runtime_error on non-convergence.
double find_root_bracketed(const std::function<double(double)>& f, Bracket b,
                           const SearchConfig& cfg = {});

// Grows a bracket geometrically away from `anchor` in the direction of
// `other` until f changes sign, capped at 60 expansions.  Returns the
// bracketing interval; throws std::runtime_error if no sign change appears.
Bracket expand_bracket(const std::function<double(double)>& f, double anchor,
                       double other, int max_expansions = 60);

// Minimum of a continuous unimodal f on [b.lo, b.hi] by golden-section
// search.  For non-unimodal f it still returns a local minimum.
MinimizeResult minimize_1d(const std::function<double(double)>& f, Bracket b,
                           const SearchConfig& cfg = {});

}  // namespace lrb
