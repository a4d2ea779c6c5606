#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/fpclassify.hpp>

#include "ds0/errors.hpp"
#include "ds0/numeric.hpp"

namespace ds0 {

template <class R>
struct QuadratureResult {
  Cplx<R> value;
  R error;  // |last level - previous level|
  int level = 0;
};

// Exp-sinh quadrature on (0, inf) for analytic integrands with
// super-exponential decay: t = exp(c sinh u), trapezoid in u with successive
// halving until two levels agree to `tol` (relative). Tail growth beyond the
// integrand's natural scale raises DivergenceError.
template <class R, class F>
QuadratureResult<R> integrate_half_line(F&& f, const R& tol, int max_level = 11) {
  using std::cosh, std::exp, std::sinh;
  using bmp::cosh, bmp::exp, bmp::sinh;
  const R c = boost::math::constants::half_pi<R>();
  const R h0 = R(1) / 2;

  Cplx<R> prev{};
  QuadratureResult<R> out;
  for (int level = 3; level <= max_level; ++level) {
    R h = h0 / (1 << level);
    Cplx<R> sum{};
    R max_term(0);
    int grow_run = 0;
    for (int dir : {+1, -1}) {
      int quiet = 0;
      for (long j = dir == 1 ? 0 : -1;; j += dir) {
        R u = h * static_cast<long long>(j);
        R t = exp(c * sinh(u));
        R w = c * cosh(u) * t * h;
        Cplx<R> term = f(t);
        term.re *= w;
        term.im *= w;
        R mag = abs(term);
        if (!(boost::math::isfinite)(mag))
          throw DivergenceError("integrate_half_line: integrand overflow; ray not decaying");
        if (mag > max_term) {
          max_term = mag;
          if (dir == 1 && u > 3) {
            if (++grow_run > 8)
              throw DivergenceError("integrate_half_line: tail grows; integrand not decaying");
          }
        } else if (dir == 1) {
          grow_run = 0;
        }
        sum += term;
        if (mag <= max_term * tol / 1024) {
          if (++quiet >= 6) break;
        } else {
          quiet = 0;
        }
        if (u > 7 || u < -7) break;  // |t| beyond ~1e190 or below ~1e-190
      }
    }
    out.value = sum;
    out.level = level;
    if (level > 3) {
      out.error = abs(sum - prev);
      R scale = abs(sum);
      if (scale == 0) scale = R(1);
      if (out.error <= tol * scale) return out;
    }
    prev = sum;
  }
  return out;  // caller inspects .error when max_level was exhausted
}

}  // namespace ds0
