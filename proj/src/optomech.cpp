#include "subplanck/optomech.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace subplanck {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{2 pi i num / den} with num reduced modulo den first.
complex unit_root(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den));
}

std::int64_t parse_integer(std::string_view text) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw std::invalid_argument("expected an exact fraction a/b, got '" + std::string(text) + "'");
  return v;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw std::invalid_argument("fraction needs num >= 0 and den > 0");
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return make(parse_integer(text), 1);
  return make(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

double OptomechConfig::coupling() const { return std::sqrt(k_squared.value()); }

double OptomechConfig::revival_time() const { return 2.0 * kPi * M; }

int GaussCoefficients::component_count() const {
  int count = 0;
  for (const auto& c : b)
    if (std::abs(c) > kGaussZeroModulus) ++count;
  return count;
}

GaussCoefficients gauss_coefficients(std::int64_t p, std::int64_t q) {
  if (q < 1 || p < 0) throw std::invalid_argument("Gauss sum needs p >= 0 and q >= 1");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("Gauss sum needs coprime p and q");
  GaussCoefficients g;
  g.p = p;
  g.q = q;
  g.l = q % 4 == 0 ? q / 2 : q;
  const std::int64_t ratio = q / g.l;  // s k / l = s k ratio / q
  g.b.assign(static_cast<std::size_t>(g.l), complex{0.0, 0.0});
  for (std::int64_t s = 0; s < g.l; ++s) {
    complex sum{0.0, 0.0};
    for (std::int64_t k = 0; k < g.l; ++k) {
      const std::int64_t phase = ((s * k % q) * ratio + (p % q) * (k * k % q)) % q;
      sum += unit_root(phase, q);
    }
    g.b[static_cast<std::size_t>(s)] = sum / static_cast<double>(g.l);
  }
  return g;
}

Rational revival_fraction(int M, Rational k_squared) {
  if (M < 1) throw std::invalid_argument("revival index M must be positive");
  const std::int64_t den = k_squared.den;
  const std::int64_t num = (static_cast<std::int64_t>(M) % den) * (k_squared.num % den) % den;
  return Rational::make(num, den);
}

CoherentSuperposition cavity_state_at_revival(const OptomechConfig& cfg) {
  const Rational frac = revival_fraction(cfg.M, cfg.k_squared);
  const GaussCoefficients g = gauss_coefficients(frac.num, frac.den);
  std::vector<CoherentTerm> terms;
  for (std::int64_t s = 0; s < g.l; ++s) {
    const complex b = g.b[static_cast<std::size_t>(s)];
    if (std::abs(b) <= kGaussZeroModulus) continue;
    terms.push_back({b, cfg.alpha0 * unit_root(-s, g.l)});
  }
  return CoherentSuperposition(std::move(terms));
}

CoherentSuperposition matched_ideal_cat(const OptomechConfig& cfg) {
  const CoherentSuperposition analogue = cavity_state_at_revival(cfg);
  const auto terms = analogue.terms();
  const int L = static_cast<int>(terms.size());
  // Labels run clockwise, alpha0' e^{-2 pi i m / L}; make_cat runs counter-clockwise.
  std::vector<double> phases(static_cast<std::size_t>(L));
  for (int m = 0; m < L; ++m) phases[static_cast<std::size_t>((L - m) % L)] = std::arg(terms[m].coeff);
  return make_cat(terms[0].label, L, phases);
}

FockVector cavity_state_fock(const OptomechConfig& cfg, double t, int cutoff) {
  FockVector v = fock_project(CoherentSuperposition::coherent(cfg.alpha0), cutoff);
  const double kappa = cfg.k_squared.value() * (t - std::sin(t));
  for (std::size_t n = 0; n < v.coeffs.size(); ++n) {
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    v.coeffs[n] *= std::polar(1.0, kappa * n2);
  }
  return v;
}

JointState joint_state(const OptomechConfig& cfg, double t, int cutoff) {
  const FockVector c = fock_project(CoherentSuperposition::coherent(cfg.alpha0), cutoff);
  const double k = cfg.coupling();
  const double k2 = cfg.k_squared.value();
  const complex rot = std::polar(1.0, -t);
  const double mirror_phase = cfg.beta_m.imag() - (cfg.beta_m * rot).imag();
  JointState js;
  js.truncation_warning = c.truncation_warning;
  js.branches.reserve(c.coeffs.size());
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    const double n = static_cast<double>(i);
    const double phase = k2 * n * n * (t - std::sin(t)) + k * n * mirror_phase;
    js.branches.push_back({static_cast<int>(i), c.coeffs[i] * std::polar(1.0, phase),
                           k * n * (1.0 - rot) + cfg.beta_m * rot});
  }
  return js;
}

double reduced_cavity_purity(const JointState& js) {
  double total = 0.0;
  for (const auto& a : js.branches) {
    const double wa = std::norm(a.amp);
    for (const auto& b : js.branches) total += wa * std::norm(b.amp) * std::exp(-std::norm(a.mirror_label - b.mirror_label));
  }
  return total;
}

double fidelity(const CoherentSuperposition& a, const CoherentSuperposition& b) { return std::norm(inner_product(a, b)); }

}  // namespace subplanck
