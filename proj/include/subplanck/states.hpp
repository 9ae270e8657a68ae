#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace subplanck {

using complex = std::complex<double>;

/// One coefficient-weighted coherent state, coeff * |label>.
struct CoherentTerm {
  complex coeff;
  complex label;
};

/// Finite superposition sum_j c_j |gamma_j> of coherent states.
///
/// Terms whose labels lie within `kLabelMergeTolerance` of each other are
/// merged at construction by adding their coefficients, so the term list
/// never holds two copies of the same coherent state.
class CoherentSuperposition {
 public:
  static constexpr double kLabelMergeTolerance = 1e-12;
  static constexpr double kNormTolerance = 1e-12;

  /// Throws std::invalid_argument for an empty list or non-finite entries.
  explicit CoherentSuperposition(std::vector<CoherentTerm> terms);

  /// Convenience for a single coherent state |label>.
  static CoherentSuperposition coherent(complex label);

  std::span<const CoherentTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// <psi|psi> under the exact coherent-state inner product.
  double norm_squared() const;
  bool is_normalized() const;
  /// Rescaled copy with unit norm. Throws if the norm vanishes.
  CoherentSuperposition normalized() const;

  double max_label_magnitude() const;

 private:
  std::vector<CoherentTerm> terms_;
};

/// Truncated number-basis expansion, coeffs[n] = <n|psi> for n = 0..cutoff.
struct FockVector {
  std::vector<complex> coeffs;
  /// Set when the last five retained populations carry >= 1e-12 weight.
  bool truncation_warning = false;

  std::size_t cutoff() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double norm_squared() const;
};

/// <g1|g2> = exp(-|g1|^2/2 - |g2|^2/2 + conj(g1) g2).
complex coherent_overlap(complex g1, complex g2);

/// sum_j e^{i phi_j} |beta e^{2 pi i j / L}>, normalized by the exact inner
/// product. `phases` is either empty (all zero) or of length L.
CoherentSuperposition make_cat(complex beta, int L, std::span<const double> phases = {});

/// Norm of the unnormalized equal-phase cat: sum_{j,k} <beta_k|beta_j>.
double normalization_exact(double beta, int L);

/// <a|b>, conjugate-linear in `a`.
complex inner_product(const CoherentSuperposition& a, const CoherentSuperposition& b);

/// ceil(g^2 + 10 g + 20) with g the largest label magnitude.
int default_cutoff(const CoherentSuperposition& s);
int default_cutoff(double max_label_magnitude);

FockVector fock_project(const CoherentSuperposition& s, int cutoff);
FockVector fock_project(const CoherentSuperposition& s);

/// <(a^dagger)^m a^n> for m, n <= 8.
complex normally_ordered_moment(const CoherentSuperposition& s, int m, int n);

}  // namespace subplanck
