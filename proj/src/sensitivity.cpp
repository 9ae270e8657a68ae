#include "subplanck/sensitivity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "subplanck/wigner.hpp"
#include "subplanck/zeros.hpp"

namespace subplanck {

namespace {

constexpr double kPi = std::numbers::pi;

// Radius the patch-extension scan covers before falling back to the envelope proxy.
constexpr double kExtensionSearchRadius = 2.0;

double scan_step(double beta) { return beta > 0.0 ? kPi / (40.0 * beta) : 0.01; }

}  // namespace

DisplacementVector DisplacementVector::polar(double radius, double angle) {
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

CoherentSuperposition displace(const CoherentSuperposition& s, DisplacementVector d) {
  const complex delta = d.value();
  std::vector<CoherentTerm> out;
  out.reserve(s.size());
  for (const auto& t : s.terms()) {
    const complex phase = std::exp(0.5 * (delta * std::conj(t.label) - std::conj(delta) * t.label));
    out.push_back({t.coeff * phase, t.label + delta});
  }
  return CoherentSuperposition(std::move(out));
}

complex overlap_amplitude(const CoherentSuperposition& s, DisplacementVector d) {
  return inner_product(s, displace(s, d));
}

double overlap_exact(const CoherentSuperposition& s, DisplacementVector d) {
  return std::norm(overlap_amplitude(s, d));
}

double overlap_diagonal(int L, double beta, DisplacementVector d) {
  if (L < 1) throw std::invalid_argument("overlap_diagonal needs L >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("overlap_diagonal needs beta > 0");
  complex sum{0.0, 0.0};
  for (int j = 0; j < L; ++j) {
    const double w = 2.0 * kPi * j / L;
    sum += std::polar(1.0, 2.0 * beta * (d.dp * std::cos(w) - d.dx * std::sin(w)));
  }
  return std::exp(-std::norm(d.value())) * std::norm(sum) / (static_cast<double>(L) * L);
}

double overlap_bessel(double beta, DisplacementVector d) {
  if (!(beta > 0.0)) throw std::invalid_argument("overlap_bessel needs beta > 0");
  const double r = std::abs(d.value());
  const double j0 = bessel_j0(2.0 * beta * r);
  return std::exp(-r * r) * j0 * j0;
}

GridSpec default_overlap_grid() { return GridSpec::square(-1.0, 1.0, 401); }

ScalarGrid overlap_grid(const CoherentSuperposition& s, const GridSpec& spec, unsigned threads) {
  return evaluate_grid(spec, [&s](double x, double p) { return overlap_exact(s, {x, p}); }, threads);
}

ScalarGrid overlap_grid_diagonal(int L, double beta, const GridSpec& spec, unsigned threads) {
  overlap_diagonal(L, beta, {});  // argument validation before spawning workers
  return evaluate_grid(spec, [=](double x, double p) { return overlap_diagonal(L, beta, {x, p}); }, threads);
}

ScalarGrid overlap_grid_bessel(double beta, const GridSpec& spec, unsigned threads) {
  overlap_bessel(beta, {});
  return evaluate_grid(spec, [=](double x, double p) { return overlap_bessel(beta, {x, p}); }, threads);
}

ScalarGrid zero_mask(const ScalarGrid& overlap, double threshold) {
  if (!std::isfinite(threshold)) throw std::invalid_argument("zero-region threshold must be finite");
  ScalarGrid mask{overlap.spec, std::vector<double>(overlap.values.size())};
  for (std::size_t i = 0; i < overlap.values.size(); ++i) mask.values[i] = overlap.values[i] < threshold ? 1.0 : 0.0;
  return mask;
}

ScalarGrid zero_region_map(const CoherentSuperposition& s, const GridSpec& spec, double threshold, unsigned threads) {
  return zero_mask(overlap_grid(s, spec, threads), threshold);
}

std::optional<double> first_overlap_zero(const CoherentSuperposition& s, double direction, double max_radius) {
  // The amplitude is real for parity-symmetric states; its real part is
  // scanned and each candidate is kept only if the full |amplitude|^2 vanishes.
  auto real_amp = [&](double r) { return overlap_amplitude(s, DisplacementVector::polar(r, direction)).real(); };
  const double step = scan_step(s.max_label_magnitude());
  const double touch = 1e-9 * std::abs(overlap_amplitude(s, {}));
  double start = 0.0;
  while (start < max_radius) {
    const auto zero = first_zero_along_ray(real_amp, step, max_radius, touch, start);
    if (!zero) return std::nullopt;
    if (overlap_exact(s, DisplacementVector::polar(zero->radius, direction)) < 1e-12) return zero->radius;
    start = zero->radius + 0.5 * step;
  }
  return std::nullopt;
}

PatchExtension patch_extension(int L, double beta, double direction) {
  if (!(beta > 0.0)) throw std::invalid_argument("patch extension needs beta > 0");
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("patch extension needs an even L >= 2");
  const double ux = std::cos(direction);
  const double up = std::sin(direction);
  auto profile = [&](double r) {
    const PhasePoint a{r * ux, r * up};
    return L == 2 ? wigner_closed_cat2(beta, 0.0, a) : central_interference(L, beta, a);
  };
  const double touch = 1e-9 * std::abs(profile(0.0));
  const double step = scan_step(beta);
  const auto forward = first_zero_along_ray(profile, step, kExtensionSearchRadius, touch);
  const auto backward =
      first_zero_along_ray([&](double r) { return profile(-r); }, step, kExtensionSearchRadius, touch);
  if (!forward || !backward) return {direction, kEnvelopeFullWidth, true};
  return {direction, forward->radius + backward->radius, false};
}

}  // namespace subplanck
