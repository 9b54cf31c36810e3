#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature, used as the independent
// oracle against the library's closed forms.  Test-only: nothing in
// include/ may depend on this.

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace testsupport {

template <typename Fn>
double gk15(const Fn& f, double a, double b, double& error_estimate) {
  // Kronrod 15-point nodes/weights on [-1, 1] with embedded Gauss-7.
  static const double nodes[8] = {
      0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
      0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
  static const double kronrod_w[8] = {
      0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
      0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
  static const double gauss_w[4] = {
      0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f_center = f(center);
  double kronrod = kronrod_w[0] * f_center;
  double gauss = gauss_w[0] * f_center;
  for (int i = 1; i < 8; ++i) {
    const double offset = half * nodes[i];
    const double pair = f(center + offset) + f(center - offset);
    kronrod += kronrod_w[i] * pair;
    if (i % 2 == 0) gauss += gauss_w[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  error_estimate = std::abs(kronrod - gauss);
  return kronrod;
}

template <typename Fn>
double integrate_adaptive(const Fn& f, double a, double b, double rel_tol,
                          double abs_tol, int depth = 0) {
  double err = 0.0;
  const double whole = gk15(f, a, b, err);
  if (err <= rel_tol * std::abs(whole) || err <= abs_tol) return whole;
  if (depth > 60) throw std::runtime_error("integrate_adaptive: depth exceeded");
  const double mid = 0.5 * (a + b);
  return integrate_adaptive(f, a, mid, rel_tol, 0.5 * abs_tol, depth + 1) +
         integrate_adaptive(f, mid, b, rel_tol, 0.5 * abs_tol, depth + 1);
}

// Absolute tolerance anchored to a coarse estimate of int |f|, so panels
// whose local integral nearly cancels do not recurse forever.
template <typename Fn>
double integrate(const Fn& f, double a, double b, double rel_tol = 1e-13) {
  double coarse_err = 0.0;
  double scale =
      gk15([&](double x) { return std::abs(f(x)); }, a, b, coarse_err);
  scale = std::max(std::abs(scale), 1e-300);
  return integrate_adaptive(f, a, b, rel_tol, rel_tol * scale, 0);
}

}  // namespace testsupport
