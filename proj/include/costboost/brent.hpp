// Zeroin-style bracketed scalar root finding: bisection guaranteed, secant /
// inverse quadratic interpolation when they behave. Non-finite function values
// (an overflowed bracket endpoint) force bisection steps.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace costboost {

// Root of f in [a,b] given f(a)*f(b) <= 0. Terminates when the bracket width
// drops below rel_tol * max(1, |x|) (plus a machine-epsilon guard).
template <class F>
double brent_root(F&& f, double a, double b, double fa, double fb, double rel_tol,
                  int max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::runtime_error("brent_root: root is not bracketed");

  double c = a, fc = fa;
  double d = b - a, e = b - a;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::isfinite(fc) && std::isfinite(fb) && std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * eps * std::fabs(b) + 0.5 * rel_tol * std::max(1.0, std::fabs(b));
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol || fb == 0.0) return b;

    bool interpolated = false;
    if (std::isfinite(fa) && std::isfinite(fb) && std::isfinite(fc) &&
        std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
        interpolated = true;
      }
    }
    if (!interpolated) d = e = xm;

    a = b;
    fa = fb;
    b += std::fabs(d) > tol ? d : (xm > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

}  // namespace costboost
