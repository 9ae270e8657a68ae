#pragma once

#include <functional>
#include <optional>

namespace subplanck {

struct RayZero {
  double radius = 0.0;
  /// True when the zero was found as a minimum of |f| (even-order zero)
  /// rather than through a sign change.
  bool touching = false;
};

/// Scans f(r) outward from `start` in increments of `step` up to `max_radius`.
/// A sign change is refined by bisection to ~1e-13; a local minimum of |f|
/// is refined by golden-section search and accepted as a zero when
/// |f| <= touch_tolerance there.
std::optional<RayZero> first_zero_along_ray(const std::function<double(double)>& f, double step,
                                            double max_radius, double touch_tolerance, double start = 0.0);

}  // namespace subplanck
