#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "subplanck/optomech.hpp"
#include "subplanck/wigner.hpp"

using namespace subplanck;

namespace {

constexpr double kPi = std::numbers::pi;

OptomechConfig config(int M, double alpha0 = 8.0) {
  OptomechConfig cfg;
  cfg.M = M;
  cfg.alpha0 = alpha0;
  return cfg;
}

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(Rational::parse("1/240") == Rational{1, 240});
  CHECK(Rational::parse("2/480") == Rational{1, 240});
  CHECK(Rational::parse("3") == Rational{3, 1});
  for (const char* bad : {"0.5", "1/0", "-1/3", "abc", "1/", "/2", "1/2/3", ""})
    CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
}

TEST_CASE("revival fractions use M times k squared") {
  const auto ksq = Rational::make(1, 240);
  CHECK(revival_fraction(60, ksq) == Rational{1, 4});
  CHECK(revival_fraction(30, ksq) == Rational{1, 8});
  CHECK(revival_fraction(20, ksq) == Rational{1, 12});
  CHECK(revival_fraction(240, ksq) == Rational{0, 1});
  CHECK(revival_fraction(300, ksq) == Rational{1, 4});
  CHECK_THROWS_AS(revival_fraction(0, ksq), std::invalid_argument);
}

TEST_CASE("Gauss sums expand the quadratic phase") {
  for (std::int64_t q = 1; q <= 48; ++q)
    for (std::int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const auto g = gauss_coefficients(p, q);
      REQUIRE(g.b.size() == static_cast<std::size_t>(g.l));
      double worst = 0.0;
      for (std::int64_t n = 0; n <= 4 * g.l; ++n) {
        complex sum = 0.0;
        for (std::int64_t s = 0; s < g.l; ++s) sum += g.b[s] * std::polar(1.0, -2.0 * kPi * double(s * n % g.l) / double(g.l));
        worst = std::max(worst, std::abs(std::polar(1.0, 2.0 * kPi * double(p * (n * n % q) % q) / double(q)) - sum));
      }
      CHECK(worst < 1e-12);

      for (std::int64_t s = 0; s < g.l; ++s) {
        double expected;
        if (q % 2 == 1) expected = std::sqrt(1.0 / q);
        else if (q % 4 == 0) expected = std::sqrt(2.0 / q);
        else expected = s % 2 == 1 ? std::sqrt(2.0 / q) : 0.0;
        CHECK(std::abs(std::abs(g.b[s]) - expected) < 1e-12);
      }
      CHECK(g.component_count() == (q % 2 == 1 ? q : q / 2));
    }
  CHECK_THROWS_AS(gauss_coefficients(2, 4), std::invalid_argument);
}

TEST_CASE("revival states have the expected component counts") {
  const std::vector<std::pair<int, int>> cases{{60, 2}, {30, 4}, {20, 6}, {15, 8}, {12, 10}, {10, 12}, {240, 1}};
  for (auto [M, L] : cases) {
    const auto s = cavity_state_at_revival(config(M));
    CHECK(s.size() == static_cast<std::size_t>(L));
    CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("revival state agrees with the number-basis evolution") {
  for (int M : {60, 30, 20, 15, 12, 10, 7}) {
    const auto cfg = config(M);
    const int cutoff = default_cutoff(8.0);
    const auto fock = cavity_state_fock(cfg, cfg.revival_time(), cutoff);
    const auto proj = fock_project(cavity_state_at_revival(cfg), cutoff);
    const complex ov = oracle::fock_inner(proj.coeffs, fock.coeffs);
    const complex phase = ov / std::abs(ov);
    double dist = 0.0;
    for (std::size_t n = 0; n < fock.coeffs.size(); ++n) dist += std::norm(fock.coeffs[n] - phase * proj.coeffs[n]);
    CHECK(std::sqrt(dist) < 1e-10);
  }
}

TEST_CASE("matched ideal cats reproduce the revival states") {
  for (int M : {60, 30, 20, 15, 12, 10}) {
    const auto cfg = config(M);
    const auto analogue = cavity_state_at_revival(cfg);
    const auto ideal = matched_ideal_cat(cfg);
    CHECK(fidelity(analogue, ideal) == doctest::Approx(1.0).epsilon(1e-10));
    const auto spec = GridSpec::square(-12.0, 12.0, 121);
    const auto a = wigner_grid(analogue, spec), b = wigner_grid(ideal, spec);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("fidelity examples") {
  const auto s = make_cat(3.0, 5);
  CHECK(fidelity(s, s) == doctest::Approx(1.0));
  CHECK(fidelity(CoherentSuperposition::coherent(2.0), CoherentSuperposition::coherent(-2.0)) ==
        doctest::Approx(std::exp(-16.0)).epsilon(1e-12));
}

TEST_CASE("joint branches follow the driven-oscillator evolution") {
  OptomechConfig cfg;
  cfg.k_squared = Rational::make(1, 25);  // k = 0.2
  cfg.alpha0 = 1.5;
  cfg.beta_m = complex{0.3, -0.2};
  const double t = 2.3;
  const auto js = joint_state(cfg, t, 12);
  const auto c = oracle::fock_coherent(cfg.alpha0, 12);
  for (int n = 0; n <= 6; ++n) {
    const auto& b = js.branches[n];
    const auto mirror = oracle::evolve_driven_oscillator(0.2 * n, cfg.beta_m, t, 40, 4000);
    const auto lib = oracle::fock_coherent(b.mirror_label, 39);
    double dist = 0.0;
    for (int m = 0; m < 40; ++m) dist += std::norm(c[n] * mirror[m] - b.amp * lib[m]);
    CHECK(std::sqrt(dist) < 1e-9);
  }
}

TEST_CASE("reduced purity returns to one at separable times") {
  for (int M : {1, 10, 30, 60}) {
    auto cfg = config(M, 2.0);
    const auto js = joint_state(cfg, cfg.revival_time(), default_cutoff(2.0));
    CHECK_FALSE(js.truncation_warning);
    CHECK(std::abs(reduced_cavity_purity(js) - 1.0) < 1e-10);
    cfg.beta_m = complex{0.5, 1.0};
    CHECK(std::abs(reduced_cavity_purity(joint_state(cfg, cfg.revival_time(), default_cutoff(2.0))) - 1.0) < 1e-10);
  }
  const auto cfg = config(1, 2.0);
  const double mid = reduced_cavity_purity(joint_state(cfg, kPi, default_cutoff(2.0)));
  CHECK(mid < 1.0 - 1e-6);
  CHECK(mid > 0.0);

  // At a separable time the branch amplitudes are the cavity Fock amplitudes.
  const auto js = joint_state(config(30, 2.0), 60 * kPi, 40);
  const auto fock = cavity_state_fock(config(30, 2.0), 60 * kPi, 40);
  for (int n = 0; n <= 40; ++n) CHECK(std::abs(js.branches[n].amp - fock.coeffs[n]) < 1e-12);
}
