#include "subplanck/wigner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace subplanck {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

// Largest Re K_jk the factorized path accepts; e^{600} leaves headroom below DBL_MAX.
constexpr double kMaxKernelExponent = 600.0;

double gaussian(PhasePoint alpha, complex centre) { return std::exp(-2.0 * std::norm(alpha.value() - centre)); }

}  // namespace

complex wigner_elementary(complex g1, complex g2, PhasePoint alpha) {
  const complex a = alpha.value();
  const complex e = -0.5 * (std::norm(g1) + std::norm(g2)) + g1 * std::conj(g2) -
                    2.0 * (a - g1) * (std::conj(a) - std::conj(g2));
  return kTwoOverPi * std::exp(e);
}

WignerEvaluator::WignerEvaluator(const CoherentSuperposition& s) : terms_(s.terms().begin(), s.terms().end()) {
  const std::size_t n = terms_.size();
  pair_kernel_.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const complex gj = terms_[j].label;
      const complex gk = terms_[k].label;
      const complex kernel = 0.5 * (std::norm(gj) + std::norm(gk)) - gj * std::conj(gk);
      if (kernel.real() > kMaxKernelExponent) factorized_ = false;
      pair_kernel_[j * n + k] = terms_[j].coeff * std::conj(terms_[k].coeff) * std::exp(kernel);
    }
  }
}

complex WignerEvaluator::evaluate_complex(PhasePoint alpha) const {
  const std::size_t n = terms_.size();
  complex total{0.0, 0.0};
  if (!factorized_) {
    for (const auto& u : terms_)
      for (const auto& v : terms_) total += u.coeff * std::conj(v.coeff) * wigner_elementary(u.label, v.label, alpha);
    return total;
  }
  const complex a = alpha.value();
  // e^{s_j}: modulus exp(-|alpha - g_j|^2), phase 2 Im(g_j conj(alpha)).
  complex local[64];
  std::vector<complex> heap;
  complex* phase = local;
  if (n > 64) {
    heap.resize(n);
    phase = heap.data();
  }
  for (std::size_t j = 0; j < n; ++j) {
    const complex g = terms_[j].label;
    phase[j] = std::polar(std::exp(-std::norm(a - g)), 2.0 * (g * std::conj(a)).imag());
  }
  for (std::size_t j = 0; j < n; ++j) {
    complex row{0.0, 0.0};
    const complex* kernel = &pair_kernel_[j * n];
    for (std::size_t k = 0; k < n; ++k) row += kernel[k] * std::conj(phase[k]);
    total += phase[j] * row;
  }
  return kTwoOverPi * total;
}

double WignerEvaluator::operator()(PhasePoint alpha) const {
  const complex w = evaluate_complex(alpha);
  if (std::abs(w.imag()) >= kResidueTolerance) {
    std::ostringstream msg;
    msg << "Wigner double sum has imaginary residue " << w.imag() << " at (" << alpha.x << ", " << alpha.p << ")";
    throw ConsistencyError(msg.str());
  }
  return w.real();
}

double wigner_at(const CoherentSuperposition& s, PhasePoint alpha) { return WignerEvaluator(s)(alpha); }

double wigner_closed_cat2(double beta, double theta, PhasePoint alpha) {
  const double norm = 2.0 * (1.0 + std::cos(theta) * std::exp(-2.0 * beta * beta));
  const double bracket = gaussian(alpha, beta) + gaussian(alpha, -beta) +
                         2.0 * gaussian(alpha, 0.0) * std::cos(theta + 4.0 * beta * alpha.p);
  return 2.0 / (kPi * norm) * bracket;
}

double wigner_closed_cat4(double beta, PhasePoint alpha) {
  const double b2 = beta * beta;
  const double norm = 4.0 + 8.0 * std::exp(-b2) * std::cos(b2) + 4.0 * std::exp(-2.0 * b2);
  const double x = alpha.x;
  const double p = alpha.p;
  const double h = 0.5 * beta;
  double bracket = gaussian(alpha, beta) + gaussian(alpha, -beta) + gaussian(alpha, complex{0.0, beta}) +
                   gaussian(alpha, complex{0.0, -beta});
  bracket += 2.0 * gaussian(alpha, {h, h}) * std::cos(-2.0 * beta * x - 2.0 * beta * p + b2);
  bracket += 2.0 * gaussian(alpha, {-h, h}) * std::cos(2.0 * beta * x - 2.0 * beta * p + b2);
  bracket += 2.0 * gaussian(alpha, {-h, -h}) * std::cos(2.0 * beta * x + 2.0 * beta * p + b2);
  bracket += 2.0 * gaussian(alpha, {h, -h}) * std::cos(-2.0 * beta * x + 2.0 * beta * p + b2);
  bracket += 2.0 * gaussian(alpha, 0.0) * (std::cos(4.0 * beta * p) + std::cos(4.0 * beta * x));
  return 2.0 / (kPi * norm) * bracket;
}

double central_interference(int L, double beta, PhasePoint alpha) {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("central interference needs an even L >= 2");
  double sum = 0.0;
  for (int j = 0; j < L / 2; ++j) {
    const double w = 2.0 * kPi * j / L;
    sum += std::cos(4.0 * beta * std::cos(w) * alpha.p - 4.0 * beta * std::sin(w) * alpha.x);
  }
  return 4.0 * gaussian(alpha, 0.0) / (kPi * L) * sum;
}

complex characteristic_function(const CoherentSuperposition& s, complex lambda) {
  // <g_j| D(lambda) |g_k> = e^{(lambda conj(g_k) - conj(lambda) g_k)/2} <g_j|g_k + lambda>
  complex total{0.0, 0.0};
  for (const auto& v : s.terms()) {
    const complex shifted = v.label + lambda;
    const complex phase = std::exp(0.5 * (lambda * std::conj(v.label) - std::conj(lambda) * v.label));
    for (const auto& u : s.terms())
      total += std::conj(u.coeff) * v.coeff * phase * coherent_overlap(u.label, shifted);
  }
  return total;
}

ParityOracleResult wigner_parity_oracle(const CoherentSuperposition& s, PhasePoint alpha, int cutoff) {
  // D(-alpha)|g> = e^{(conj(alpha) g - alpha conj(g))/2} |g - alpha>
  const complex a = alpha.value();
  std::vector<CoherentTerm> shifted;
  shifted.reserve(s.size());
  for (const auto& t : s.terms())
    shifted.push_back({t.coeff * std::exp(0.5 * (std::conj(a) * t.label - a * std::conj(t.label))), t.label - a});
  const FockVector fock = fock_project(CoherentSuperposition(std::move(shifted)), cutoff);
  double sum = 0.0;
  for (std::size_t n = 0; n < fock.coeffs.size(); ++n) sum += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(fock.coeffs[n]);
  return {kTwoOverPi * sum, fock.truncation_warning};
}

GridSpec default_wigner_grid(double beta) {
  const double r = std::abs(beta) + 4.0;
  return GridSpec::square(-r, r, std::abs(beta) > 6.0 ? 1201 : 801);
}

ScalarGrid wigner_grid(const CoherentSuperposition& s, const GridSpec& spec, unsigned threads) {
  const WignerEvaluator w(s);
  return evaluate_grid(spec, [&w](double x, double p) { return w({x, p}); }, threads);
}

ScalarGrid central_interference_grid(int L, double beta, const GridSpec& spec, unsigned threads) {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("central interference needs an even L >= 2");
  return evaluate_grid(spec, [=](double x, double p) { return central_interference(L, beta, {x, p}); }, threads);
}

}  // namespace subplanck
