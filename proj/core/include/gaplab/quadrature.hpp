#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gaplab/errors.hpp"

namespace gaplab {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

struct QuadratureStats {
  int evaluations = 0;
  int max_depth_reached = 0;
};

namespace detail {

template <class F, class Value>
Value simpson_step(F& f, double a, double b, const Value& fa, const Value& fm,
                   const Value& fb, const Value& whole, double tol, int depth,
                   const QuadratureOptions& opts, QuadratureStats& stats) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Value flm = f(lm);
  const Value frm = f(rm);
  stats.evaluations += 2;
  if (depth > stats.max_depth_reached) stats.max_depth_reached = depth;
  const Value left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Value right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const Value refined = left + right;
  const double err = (refined - whole).cwiseAbs().maxCoeff();
  if (err <= 15.0 * tol) {
    return refined + (refined - whole) / 15.0;
  }
  if (depth >= opts.max_depth) {
    throw NumericalError("adaptive Simpson did not converge on [" +
                         std::to_string(a) + ", " + std::to_string(b) +
                         "] within depth " + std::to_string(opts.max_depth));
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, opts,
                      stats) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, opts,
                      stats);
}

}  // namespace detail

// Adaptive Simpson for an Eigen-valued integrand; the error test uses the
// largest entrywise deviation. b < a yields the negated integral.
template <class F>
auto adaptive_simpson(F&& f, double a, double b,
                      const QuadratureOptions& opts = {},
                      QuadratureStats* stats = nullptr) {
  using Value = std::decay_t<decltype(f(a))>;
  QuadratureStats local;
  QuadratureStats& st = stats ? *stats : local;
  const Value fa = f(a);
  const Value fb = f(b);
  const Value fm = f(0.5 * (a + b));
  st.evaluations += 3;
  if (a == b) return Value((fa * 0.0).eval());
  const Value whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Value(detail::simpson_step(f, a, b, fa, fm, fb, whole, opts.abs_tol, 1,
                                    opts, st));
}

}  // namespace gaplab
