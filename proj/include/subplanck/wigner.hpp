#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "subplanck/grid.hpp"
#include "subplanck/states.hpp"

namespace subplanck {

/// Phase-space point alpha = x + i p (x: position axis, p: momentum axis).
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;

  static PhasePoint from_complex(complex a) { return {a.real(), a.imag()}; }
  complex value() const { return {x, p}; }
};

/// Raised when a quantity that must be real comes out with a large imaginary part.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Wigner function of the operator |g1><g2|:
/// (2/pi) exp(-(|g1|^2+|g2|^2)/2 + g1 conj(g2) - 2 (alpha-g1)(conj(alpha)-conj(g2))).
complex wigner_elementary(complex g1, complex g2, PhasePoint alpha);

/// Evaluates the Wigner function of one fixed superposition at many points.
///
/// W(alpha) = (2/pi) sum_{j,k} c_j conj(c_k) exp(E_jk(alpha)). The exponent
/// splits as s_j + conj(s_k) + K_jk with s_j = -|alpha|^2 + 2 g_j conj(alpha)
/// - |g_j|^2 and K_jk = (|g_j|^2 + |g_k|^2)/2 - g_j conj(g_k), so each point
/// costs L exponentials instead of L^2. Re K_jk = |g_j - g_k|^2 / 2; when that
/// exceeds the double range the evaluator falls back to per-pair exponentials.
class WignerEvaluator {
 public:
  static constexpr double kResidueTolerance = 1e-9;

  explicit WignerEvaluator(const CoherentSuperposition& s);

  /// Real Wigner value. Throws ConsistencyError if the imaginary residue of
  /// the double sum reaches kResidueTolerance.
  double operator()(PhasePoint alpha) const;

  /// Full complex double sum, exposed for residue checks.
  complex evaluate_complex(PhasePoint alpha) const;

 private:
  std::vector<CoherentTerm> terms_;
  std::vector<complex> pair_kernel_;  // c_j conj(c_k) exp(K_jk), row-major
  bool factorized_ = true;
};

/// Composite Wigner function of a normalized superposition.
double wigner_at(const CoherentSuperposition& s, PhasePoint alpha);

/// Closed form for (|beta> + e^{i theta}|-beta>)/sqrt(N):
/// (2/(pi N)) [G(beta) + G(-beta) + 2 G(0) cos(theta + 4 beta Im alpha)],
/// G(c) = exp(-2|alpha - c|^2), N = 2 (1 + cos(theta) e^{-2 beta^2}).
double wigner_closed_cat2(double beta, double theta, PhasePoint alpha);

/// Closed form for the compass state (|b> + |ib> + |-b> + |-ib>)/sqrt(N):
/// four outer Gaussians, four side-lobe fringes centred at beta(+-1+-i)/2 and
/// the two central cosines cos(4 beta x) + cos(4 beta p).
double wigner_closed_cat4(double beta, PhasePoint alpha);

/// Central interference of an even-L cat with N_L ~ L:
/// (4 G(0) / (pi L)) sum_{j<L/2} cos(4 beta cos(w_j) p - 4 beta sin(w_j) x).
double central_interference(int L, double beta, PhasePoint alpha);

/// Tr[rho D(lambda)] = C_N(lambda) e^{-|lambda|^2/2}.
complex characteristic_function(const CoherentSuperposition& s, complex lambda);

struct ParityOracleResult {
  double value = 0.0;
  bool truncation_warning = false;
};

/// (2/pi) sum_n (-1)^n |<n|D(-alpha)|psi>|^2, evaluated in a truncated Fock
/// basis after displacing the whole superposition.
ParityOracleResult wigner_parity_oracle(const CoherentSuperposition& s, PhasePoint alpha, int cutoff);

/// Default figure grid: +-(beta + 4) at 801 points, 1201 when beta > 6.
GridSpec default_wigner_grid(double beta);

ScalarGrid wigner_grid(const CoherentSuperposition& s, const GridSpec& spec, unsigned threads = 0);

/// Grid of central_interference(L, beta, .) for zoomed central views.
ScalarGrid central_interference_grid(int L, double beta, const GridSpec& spec, unsigned threads = 0);

}  // namespace subplanck
