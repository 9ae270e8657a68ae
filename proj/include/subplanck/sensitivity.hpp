#pragma once

#include <optional>

#include "subplanck/grid.hpp"
#include "subplanck/states.hpp"

namespace subplanck {

/// Phase-space displacement delta = dx + i dp.
struct DisplacementVector {
  double dx = 0.0;
  double dp = 0.0;

  static DisplacementVector polar(double radius, double angle);
  complex value() const { return {dx, dp}; }
};

/// D(delta)|psi>: each term (c, g) becomes (c e^{(delta conj(g) - conj(delta) g)/2}, g + delta).
CoherentSuperposition displace(const CoherentSuperposition& s, DisplacementVector d);

/// <psi| D(delta) |psi> = inner_product(s, displace(s, d)).
complex overlap_amplitude(const CoherentSuperposition& s, DisplacementVector d);

/// O(delta) = |<psi| D(delta) |psi>|^2.
double overlap_exact(const CoherentSuperposition& s, DisplacementVector d);

/// Large-beta form keeping only j = k terms:
/// e^{-|delta|^2} / L^2 |sum_j e^{2 i beta (dp cos w_j - dx sin w_j)}|^2.
double overlap_diagonal(int L, double beta, DisplacementVector d);

/// Continuum limit e^{-|delta|^2} J0(2 beta |delta|)^2.
double overlap_bessel(double beta, DisplacementVector d);

/// Bessel function of the first kind, order zero.
double bessel_j0(double x);

enum class OverlapMode { exact, diagonal, bessel };

/// [-1, 1]^2 at 401 x 401.
GridSpec default_overlap_grid();

inline constexpr double kZeroRegionThreshold = 1e-4;

ScalarGrid overlap_grid(const CoherentSuperposition& s, const GridSpec& spec, unsigned threads = 0);
ScalarGrid overlap_grid_diagonal(int L, double beta, const GridSpec& spec, unsigned threads = 0);
ScalarGrid overlap_grid_bessel(double beta, const GridSpec& spec, unsigned threads = 0);

/// 1 where the overlap value is below `threshold`, 0 elsewhere.
ScalarGrid zero_mask(const ScalarGrid& overlap, double threshold = kZeroRegionThreshold);

/// zero_mask(overlap_grid(s, spec), threshold).
ScalarGrid zero_region_map(const CoherentSuperposition& s, const GridSpec& spec,
                           double threshold = kZeroRegionThreshold, unsigned threads = 0);

/// Smallest |delta| along `direction` (radians) at which the exact overlap
/// vanishes, or nullopt if none exists within `max_radius`.
std::optional<double> first_overlap_zero(const CoherentSuperposition& s, double direction, double max_radius = 3.0);

struct PatchExtension {
  double direction = 0.0;  // radians
  double width = 0.0;
  /// Set when no zero was found and `width` is the envelope proxy.
  bool no_zero = false;
};

/// Full width of the central interference patch along a line through the
/// origin: distance between the nearest zeros on either side. L = 2 uses the
/// exact cat Wigner function (theta = 0); even L >= 4 uses the central
/// interference term. With no zero inside the search radius the result
/// reports sqrt(2), the full 1/e width of the e^{-2|alpha|^2} envelope.
PatchExtension patch_extension(int L, double beta, double direction);

inline constexpr double kEnvelopeFullWidth = 1.4142135623730951;

}  // namespace subplanck
