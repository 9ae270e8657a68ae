#include "subplanck/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subplanck {

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo) {
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Minimizes |f| on [lo, hi]; returns the abscissa.
double golden_min_abs(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = std::abs(f(c));
  double fd = std::abs(f(d));
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = std::abs(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = std::abs(f(d));
    }
  }
  return fc < fd ? c : d;
}

}  // namespace

std::optional<RayZero> first_zero_along_ray(const std::function<double(double)>& f, double step,
                                            double max_radius, double touch_tolerance, double start) {
  if (!(step > 0.0) || !(max_radius > start)) throw std::invalid_argument("invalid ray scan parameters");
  double r_prev2 = start;
  double r_prev = start;
  double f_prev2 = f(start);
  double f_prev = f_prev2;
  if (f_prev == 0.0 && start > 0.0) return RayZero{start, false};
  for (int i = 1;; ++i) {
    const double r = std::min(start + i * step, max_radius);
    const double fr = f(r);
    if (fr == 0.0) return RayZero{r, false};
    if (std::signbit(fr) != std::signbit(f_prev)) return RayZero{bisect(f, r_prev, r, f_prev), false};
    if (i >= 2 && std::abs(f_prev) < std::abs(f_prev2) && std::abs(f_prev) <= std::abs(fr)) {
      const double r_min = golden_min_abs(f, r_prev2, r);
      if (std::abs(f(r_min)) <= touch_tolerance) return RayZero{r_min, true};
    }
    if (r >= max_radius) return std::nullopt;
    r_prev2 = r_prev;
    f_prev2 = f_prev;
    r_prev = r;
    f_prev = fr;
  }
}

}  // namespace subplanck
