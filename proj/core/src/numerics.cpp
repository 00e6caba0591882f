#include "lrb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrb {

namespace {
double tol_at(double x, const SearchConfig& cfg) {
  return cfg.abs_tol + cfg.rel_tol * std::fabs(x);
}
}  // namespace

double find_root_bracketed(const std::function<double(double)>& f, Bracket br,
                           const SearchConfig& cfg) {
  double a = br.lo, b = br.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("find_root_bracketed: no sign change on bracket");

  // Classic Brent: keep [a,b] bracketing, c is the previous iterate.
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = tol_at(b, cfg);
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0) return b;
    if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
      d = e = m;  // bisection
    } else {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d; d = p / q;  // accept interpolation
      } else {
        d = e = m;
      }
    }
    a = b; fa = fb;
    b += (std::fabs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw std::runtime_error("find_root_bracketed: max iterations exceeded");
}

Bracket expand_bracket(const std::function<double(double)>& f, double anchor,
                       double other, int max_expansions) {
  double fa = f(anchor);
  if (fa == 0.0) return {anchor, anchor};
  double step = other - anchor;
  double prev = anchor;
  for (int i = 0; i < max_expansions; ++i) {
    const double x = anchor + step;
    const double fx = f(x);
    if (fx == 0.0 || (fa > 0.0) != (fx > 0.0))
      return step > 0 ? Bracket{prev, x} : Bracket{x, prev};
    prev = x;
    step *= 2.0;
  }
  throw std::runtime_error("expand_bracket: no sign change found");
}

MinimizeResult minimize_1d(const std::function<double(double)>& f, Bracket br,
                           const SearchConfig& cfg) {
  if (!(br.lo <= br.hi)) throw std::invalid_argument("minimize_1d: empty bracket");
  constexpr double kInvPhi = 0.6180339887498949;
  double a = br.lo, b = br.hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int iter = 0; iter < cfg.max_iter && (b - a) > tol_at(0.5 * (a + b), cfg);
       ++iter) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return (f1 <= f2) ? MinimizeResult{x1, f1} : MinimizeResult{x2, f2};
}

}  // namespace lrb
