#pragma once

#include <cmath>
#include <utility>

#include "mixpois/errors.hpp"

namespace mixpois {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_levels = 20;
};

namespace detail {

template <class F>
struct SimpsonState {
  F& f;
  int max_levels;
  double unresolved = 0.0;  // error mass left in panels that hit max depth
};

template <class F>
double simpson_rec(SimpsonState<F>& st, double a, double fa, double m, double fm,
                   double b, double fb, double whole, double tol, int level) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double h6 = (b - a) / 12.0;
  const double left = h6 * (fa + 4.0 * flm + fm);
  const double right = h6 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (level >= st.max_levels) {
    st.unresolved += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  const double half_tol = 0.5 * tol;
  return simpson_rec(st, a, fa, lm, flm, m, fm, left, half_tol, level + 1) +
         simpson_rec(st, m, fm, rm, frm, b, fb, right, half_tol, level + 1);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b] to an absolute tolerance.
/// Throws NumericalError when the refinement-depth budget is exhausted
/// before the tolerance is met; the error carries the achieved tolerance.
template <class F>
double adaptive_simpson(F&& f, double a, double b, QuadratureOptions opt = {}) {
  detail::SimpsonState<F> st{f, opt.max_levels, 0.0};
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value =
      detail::simpson_rec(st, a, fa, m, fm, b, fb, whole, opt.abs_tol, 0);
  if (st.unresolved > opt.abs_tol) {
    throw NumericalError("adaptive quadrature did not converge", opt.abs_tol,
                         st.unresolved);
  }
  return value;
}

/// Integral of f over [0, inf) via the substitution u = x/(1+x), which maps
/// the half-line onto [0, 1). The integrand must decay at infinity.
template <class F>
double integrate_zero_to_inf(F&& f, QuadratureOptions opt = {}) {
  auto g = [&f](double u) {
    if (u >= 1.0) return 0.0;
    const double om = 1.0 - u;
    const double x = u / om;
    const double v = f(x);
    return v / (om * om);
  };
  return adaptive_simpson(g, 0.0, 1.0, opt);
}

}  // namespace mixpois
