#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "subplanck/states.hpp"

namespace subplanck {

/// Exact non-negative fraction num/den in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Reduces and validates (den > 0, num >= 0).
  static Rational make(std::int64_t num, std::int64_t den);
  /// Parses "a/b" or "a". Decimal or symbolic input is rejected with
  /// std::invalid_argument since the revival arithmetic needs exact values.
  static Rational parse(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Cavity-mirror system H = a'a + b'b - k a'a (b + b') in a frame rotating
/// with the cavity, with mirror frequency 1 and k^2 held exactly.
struct OptomechConfig {
  Rational k_squared = Rational::make(1, 240);
  complex alpha0{8.0, 0.0};
  complex beta_m{0.0, 0.0};
  int M = 1;

  double coupling() const;
  /// t = 2 pi M.
  double revival_time() const;
};

/// Expansion e^{2 pi i (p/q) n^2} = sum_s b_s e^{-2 pi i s n / l}.
struct GaussCoefficients {
  std::int64_t p = 0;
  std::int64_t q = 1;
  /// q/2 when 4 | q, q otherwise.
  std::int64_t l = 1;
  std::vector<complex> b;

  /// Number of coefficients with nonzero modulus.
  int component_count() const;
};

/// Modulus below which a Gauss coefficient is treated as exactly zero.
inline constexpr double kGaussZeroModulus = 1e-10;

/// b_s = (1/l) sum_{k<l} e^{2 pi i (s k / l + p k^2 / q)}. Requires gcd(p, q) = 1.
GaussCoefficients gauss_coefficients(std::int64_t p, std::int64_t q);

/// (M k^2) mod 1 as a reduced fraction p/q (p = 0, q = 1 for a full revival).
Rational revival_fraction(int M, Rational k_squared);

/// sum_s b_s |alpha0 e^{-2 pi i s / l}> over nonzero b_s, for t = 2 pi M.
CoherentSuperposition cavity_state_at_revival(const OptomechConfig& cfg);

/// The even-L cat with the same labels and coefficient phases as the revival
/// state, built through make_cat with a complex amplitude.
CoherentSuperposition matched_ideal_cat(const OptomechConfig& cfg);

/// Cavity branch amplitudes c_n e^{i k^2 n^2 (t - sin t)} with c_n = <n|alpha0>.
/// Equals the reduced cavity state only when t is a multiple of 2 pi.
FockVector cavity_state_fock(const OptomechConfig& cfg, double t, int cutoff);

struct JointBranch {
  int n = 0;
  complex amp;
  complex mirror_label;
};

/// sum_n amp_n |n> (x) |mirror_label_n>.
struct JointState {
  std::vector<JointBranch> branches;
  bool truncation_warning = false;
};

/// Exact joint evolution for a coherent mirror |beta_m>. For photon number n
/// the mirror sees a displaced oscillator centred at kn, so
///   label_n = kn (1 - e^{-it}) + beta_m e^{-it},
///   amp_n   = c_n exp(i [k^2 n^2 (t - sin t) + kn (Im beta_m - Im(beta_m e^{-it}))]).
JointState joint_state(const OptomechConfig& cfg, double t, int cutoff);

/// Tr(rho_c^2) = sum_{n,m} |a_n|^2 |a_m|^2 |<chi_m|chi_n>|^2.
double reduced_cavity_purity(const JointState& js);

/// |<a|b>|^2.
double fidelity(const CoherentSuperposition& a, const CoherentSuperposition& b);

}  // namespace subplanck
