#pragma once

#include <cmath>
#include <algorithm>
#include <string>

#include "wpvol/errors.hpp"

namespace wpvol {

struct QuadResult {
  double value = 0;
  double error = 0;  // accumulated Richardson error estimate
  long evaluations = 0;
};

namespace detail {

template <class Func>
struct SimpsonState {
  const Func& f;
  long evaluations = 0;
  double error = 0;
  int max_depth;
  bool exhausted = false;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= max_depth) {
      if (std::abs(delta) > 15.0 * tol) exhausted = true;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace detail

/// Adaptive Simpson on [a, b] to absolute tolerance `tol`. Throws
/// QuadratureError if the recursion depth runs out before the tolerance is
/// met.
template <class Func>
QuadResult integrate(const Func& f, double a, double b, double tol, int max_depth = 48) {
  if (!(tol > 0)) throw PreconditionError("quadrature tolerance must be positive");
  if (b <= a) return {};
  detail::SimpsonState<Func> s{f, 0, 0, max_depth};
  // Start from a few panels so that narrow features are not missed by the
  // first three samples.
  constexpr int kPanels = 8;
  double total = 0;
  const double h = (b - a) / kPanels;
  for (int i = 0; i < kPanels; ++i) {
    const double pa = a + i * h, pb = i + 1 == kPanels ? b : a + (i + 1) * h;
    const double qa = s.eval(pa), qb = s.eval(pb), qm = s.eval(0.5 * (pa + pb));
    total += s.refine(pa, pb, qa, qm, qb, (pb - pa) / 6.0 * (qa + 4.0 * qm + qb), tol / kPanels, 0);
  }
  if (s.exhausted)
    throw QuadratureError("adaptive Simpson did not converge on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]",
                          s.error);
  return {total, s.error, s.evaluations};
}

/// Iterated integral of f(x, y) over a <= x <= b, lo(x) <= y <= hi(x). The
/// inner integrals run at a tighter tolerance so their noise stays below the
/// outer error budget.
template <class Func, class Lo, class Hi>
QuadResult integrate2d(const Func& f, double a, double b, const Lo& lo, const Hi& hi, double tol) {
  const double width = b - a;
  const double inner_tol = tol / std::max(1.0, 8.0 * width);
  double inner_error = 0;
  long inner_evals = 0;
  auto outer = [&](double x) {
    const double y0 = lo(x), y1 = hi(x);
    if (!(y1 > y0)) return 0.0;
    QuadResult r = integrate([&](double y) { return f(x, y); }, y0, y1, inner_tol);
    inner_error = std::max(inner_error, r.error);
    inner_evals += r.evaluations;
    return r.value;
  };
  QuadResult r = integrate(outer, a, b, tol / 2);
  r.error += inner_error * width;
  r.evaluations += inner_evals;
  return r;
}

}  // namespace wpvol
