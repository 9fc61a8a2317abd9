#ifndef PLB_OPTIMIZE_HPP
#define PLB_OPTIMIZE_HPP

#include <cmath>
#include <utility>

namespace plb {

struct MinResult {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section minimization on [lo, hi] down to a relative interval width.
template <class F>
MinResult golden_min(F&& f, double lo, double hi, double rel_tol = 1e-8) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  const double scale = std::abs(hi - lo);
  while (std::abs(b - a) > rel_tol * scale) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? MinResult{c, fc} : MinResult{d, fd};
}

/// Uniform scan followed by golden-section refinement around the best sample.
/// The scan guards against multimodality; the better of the two wins.
template <class F>
MinResult minimize_scan_golden(F&& f, double lo, double hi, int scan_points = 200,
                               double rel_tol = 1e-8) {
  MinResult best{lo, f(lo)};
  int best_i = 0;
  for (int i = 1; i < scan_points; ++i) {
    const double x = lo + (hi - lo) * i / (scan_points - 1);
    const double v = f(x);
    if (v < best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  const double step = (hi - lo) / (scan_points - 1);
  const double a = best_i == 0 ? lo : best.x - step;
  const double b = best_i == scan_points - 1 ? hi : best.x + step;
  const MinResult refined = golden_min(f, a, b, rel_tol);
  return refined.value < best.value ? refined : best;
}

}  // namespace plb

#endif
