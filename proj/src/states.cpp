#include "subplanck/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace subplanck {

namespace {

bool is_finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// <n|gamma> = exp(-|g|^2/2 + n log|g| - lgamma(n+1)/2 + i n arg g).
complex coherent_fock_amplitude(complex gamma, int n) {
  const double r = std::abs(gamma);
  if (r == 0.0) return n == 0 ? complex{1.0, 0.0} : complex{0.0, 0.0};
  const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
  return std::polar(std::exp(log_mag), n * std::arg(gamma));
}

complex ipow(complex z, int k) {
  complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

CoherentSuperposition::CoherentSuperposition(std::vector<CoherentTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("superposition needs at least one term");
  for (const auto& t : terms) {
    if (!is_finite(t.coeff) || !is_finite(t.label))
      throw std::invalid_argument("superposition term is not finite");
    auto same = std::find_if(terms_.begin(), terms_.end(), [&](const CoherentTerm& u) {
      return std::abs(u.label - t.label) <= kLabelMergeTolerance;
    });
    if (same != terms_.end())
      same->coeff += t.coeff;
    else
      terms_.push_back(t);
  }
}

CoherentSuperposition CoherentSuperposition::coherent(complex label) {
  return CoherentSuperposition({{complex{1.0, 0.0}, label}});
}

double CoherentSuperposition::norm_squared() const { return inner_product(*this, *this).real(); }

bool CoherentSuperposition::is_normalized() const {
  return std::abs(norm_squared() - 1.0) < kNormTolerance;
}

CoherentSuperposition CoherentSuperposition::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw std::invalid_argument("cannot normalize a null superposition");
  const double scale = 1.0 / std::sqrt(n2);
  std::vector<CoherentTerm> out(terms_.begin(), terms_.end());
  for (auto& t : out) t.coeff *= scale;
  return CoherentSuperposition(std::move(out));
}

double CoherentSuperposition::max_label_magnitude() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.label));
  return m;
}

double FockVector::norm_squared() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return s;
}

complex coherent_overlap(complex g1, complex g2) {
  // Real part written as -|g1 - g2|^2 / 2 so large labels do not cancel.
  return std::polar(std::exp(-0.5 * std::norm(g1 - g2)), (std::conj(g1) * g2).imag());
}

CoherentSuperposition make_cat(complex beta, int L, std::span<const double> phases) {
  if (L < 1) throw std::invalid_argument("cat state needs L >= 1 components");
  if (!is_finite(beta)) throw std::invalid_argument("cat amplitude is not finite");
  if (!phases.empty() && phases.size() != static_cast<std::size_t>(L))
    throw std::invalid_argument("expected " + std::to_string(L) + " phases, got " +
                                std::to_string(phases.size()));
  std::vector<CoherentTerm> terms;
  terms.reserve(L);
  for (int j = 0; j < L; ++j) {
    const double phi = phases.empty() ? 0.0 : phases[j];
    if (!std::isfinite(phi)) throw std::invalid_argument("cat phase is not finite");
    const double omega = 2.0 * std::numbers::pi * j / L;
    terms.push_back({std::polar(1.0, phi), beta * std::polar(1.0, omega)});
  }
  return CoherentSuperposition(std::move(terms)).normalized();
}

double normalization_exact(double beta, int L) {
  if (L < 1) throw std::invalid_argument("normalization needs L >= 1");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("normalization needs finite beta >= 0");
  // <beta e^{i w_k}|beta e^{i w_j}> = exp(-2 beta^2 sin^2((w_j - w_k)/2)) e^{i beta^2 sin(w_j - w_k)}
  const double b2 = beta * beta;
  double total = L;
  for (int j = 0; j < L; ++j) {
    for (int k = 0; k < j; ++k) {
      const double d = 2.0 * std::numbers::pi * (j - k) / L;
      const double h = std::sin(0.5 * d);
      total += 2.0 * std::exp(-2.0 * b2 * h * h) * std::cos(b2 * std::sin(d));
    }
  }
  return total;
}

complex inner_product(const CoherentSuperposition& a, const CoherentSuperposition& b) {
  complex s{0.0, 0.0};
  for (const auto& u : a.terms())
    for (const auto& v : b.terms()) s += std::conj(u.coeff) * v.coeff * coherent_overlap(u.label, v.label);
  return s;
}

int default_cutoff(double max_label_magnitude) {
  const double g = max_label_magnitude;
  return static_cast<int>(std::ceil(g * g + 10.0 * g + 20.0));
}

int default_cutoff(const CoherentSuperposition& s) { return default_cutoff(s.max_label_magnitude()); }

FockVector fock_project(const CoherentSuperposition& s, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("Fock cutoff must be >= 1");
  FockVector out;
  out.coeffs.assign(cutoff + 1, complex{0.0, 0.0});
  for (const auto& t : s.terms())
    for (int n = 0; n <= cutoff; ++n) out.coeffs[n] += t.coeff * coherent_fock_amplitude(t.label, n);
  double tail = 0.0;
  for (int n = std::max(0, cutoff - 4); n <= cutoff; ++n) tail += std::norm(out.coeffs[n]);
  out.truncation_warning = tail >= 1e-12;
  return out;
}

FockVector fock_project(const CoherentSuperposition& s) { return fock_project(s, default_cutoff(s)); }

complex normally_ordered_moment(const CoherentSuperposition& s, int m, int n) {
  if (m < 0 || n < 0 || m > 8 || n > 8)
    throw std::invalid_argument("moment orders must lie in [0, 8]");
  complex total{0.0, 0.0};
  for (const auto& u : s.terms()) {
    const complex left = std::conj(u.coeff) * ipow(std::conj(u.label), m);
    for (const auto& v : s.terms())
      total += left * v.coeff * ipow(v.label, n) * coherent_overlap(u.label, v.label);
  }
  return total;
}

}  // namespace subplanck
