#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "subplanck/states.hpp"

using namespace subplanck;

TEST_CASE("coherent overlap agrees with number-basis inner product") {
  const complex a{1.3, -0.7}, b{-0.4, 2.1};
  const auto fa = oracle::fock_coherent(a, 80), fb = oracle::fock_coherent(b, 80);
  CHECK(std::abs(coherent_overlap(a, b) - oracle::fock_inner(fa, fb)) < 1e-14);
  CHECK(std::abs(coherent_overlap(a, a) - 1.0) < 1e-15);
  // |<b|-b>|^2 = e^{-4 b^2}
  CHECK(std::norm(coherent_overlap(2.0, -2.0)) == doctest::Approx(std::exp(-16.0)).epsilon(1e-12));
}

TEST_CASE("construction validates and merges labels") {
  CHECK_THROWS_AS(CoherentSuperposition(std::vector<CoherentTerm>{}), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(CoherentSuperposition(std::vector<CoherentTerm>{{1.0, {nan, 0.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(CoherentSuperposition({{{1.0, INFINITY}, 0.0}}), std::invalid_argument);

  const CoherentSuperposition s({{1.0, 1.0}, {2.0, 1.0 + 1e-14}, {1.0, -1.0}});
  REQUIRE(s.size() == 2);
  CHECK(s.terms()[0].coeff == complex{3.0, 0.0});

  // beta = 0 collapses every component onto the vacuum
  const auto vac = make_cat(0.0, 6);
  REQUIRE(vac.size() == 1);
  CHECK(vac.is_normalized());
  CHECK(std::abs(vac.terms()[0].label) == 0.0);
}

TEST_CASE("make_cat is normalized for all L and beta") {
  for (int L = 1; L <= 12; ++L)
    for (double beta : {0.3, 1.0, 2.0, 8.0, 16.0}) {
      const auto s = make_cat(beta, L);
      CHECK(s.size() == static_cast<std::size_t>(L));
      CHECK(std::abs(inner_product(s, s) - 1.0) < 1e-12);
    }
  const std::vector<double> phases{0.0, 0.4, -1.1, 2.5};
  const auto s = make_cat(complex{1.5, 0.5}, 4, phases);
  CHECK(s.is_normalized());
  CHECK(std::arg(s.terms()[1].coeff / s.terms()[0].coeff) == doctest::Approx(0.4));
  CHECK_THROWS_AS(make_cat(2.0, 4, std::vector<double>{0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_cat(2.0, 0), std::invalid_argument);
}

TEST_CASE("normalization_exact matches the trigonometric sum and make_cat coefficients") {
  for (int L : {2, 3, 4, 6, 8, 10, 12})
    for (double beta : {0.5, 1.0, 2.5, 8.0}) {
      const double n = normalization_exact(beta, L);
      CHECK(n == doctest::Approx(oracle::cat_norm(beta, L)).epsilon(1e-12));
      const double c = std::abs(make_cat(beta, L).terms()[0].coeff);
      CHECK(n == doctest::Approx(1.0 / (c * c)).epsilon(1e-12));
    }
  // High-precision reference values.
  CHECK(normalization_exact(8.0, 12) == doctest::Approx(12.00378172727924461883).epsilon(1e-13));
  CHECK(normalization_exact(8.0, 10) == doctest::Approx(10.0000980088795034677).epsilon(1e-13));
  CHECK(normalization_exact(8.0, 4) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(normalization_exact(8.0, 2) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("inner product is conjugate-linear and additive") {
  const CoherentSuperposition a({{{0.3, 0.2}, {1.0, 0.5}}, {{-0.7, 0.1}, {-0.2, 1.4}}});
  const CoherentSuperposition b(std::vector<CoherentTerm>{{{1.1, -0.4}, {0.3, -0.9}}});
  const CoherentSuperposition c({{{0.2, 0.8}, {2.0, 0.1}}, {{0.5, 0.0}, {-1.0, -1.0}}});
  std::vector<CoherentTerm> bc(b.terms().begin(), b.terms().end());
  bc.insert(bc.end(), c.terms().begin(), c.terms().end());
  CHECK(std::abs(inner_product(a, CoherentSuperposition(bc)) - (inner_product(a, b) + inner_product(a, c))) < 1e-14);
  CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-15);
}

TEST_CASE("fidelities agree with number-basis projections") {
  const auto a = make_cat(complex{5.0, 3.0}, 6, std::vector<double>{0, 1, 2, 3, 4, 5});
  const auto b = make_cat(8.0, 4);
  const auto c = CoherentSuperposition({{1.0, {-2.0, 7.5}}, {{0.0, 1.0}, {6.0, -1.0}}}).normalized();
  for (const auto* x : {&a, &b, &c})
    for (const auto* y : {&a, &b, &c}) {
      const auto fx = fock_project(*x), fy = fock_project(*y);
      CHECK_FALSE(fx.truncation_warning);
      const double lhs = std::norm(inner_product(*x, *y));
      const double rhs = std::norm(oracle::fock_inner(fx.coeffs, fy.coeffs));
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("fock_project matches the recurrence and flags truncation") {
  const auto s = make_cat(complex{3.0, 1.0}, 3);
  const auto f = fock_project(s, 90);
  const auto ref = oracle::fock_of(s, 90);
  REQUIRE(f.coeffs.size() == 91);
  for (std::size_t n = 0; n < ref.size(); ++n) CHECK(std::abs(f.coeffs[n] - ref[n]) < 1e-13);
  CHECK(f.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(default_cutoff(8.0) == 164);
  CHECK(fock_project(make_cat(8.0, 2)).cutoff() == 164);
  CHECK(fock_project(CoherentSuperposition::coherent(6.0), 20).truncation_warning);
  CHECK_THROWS_AS(fock_project(s, 0), std::invalid_argument);
}

TEST_CASE("normally ordered moments") {
  const auto coh = CoherentSuperposition::coherent(complex{1.5, -2.0});
  CHECK(std::abs(normally_ordered_moment(coh, 1, 1) - 6.25) < 1e-12);
  CHECK(std::abs(normally_ordered_moment(coh, 0, 2) - complex{1.5, -2.0} * complex{1.5, -2.0}) < 1e-12);
  CHECK(std::abs(normally_ordered_moment(make_cat(8.0, 2), 0, 1)) < 1e-10);
  CHECK(std::abs(normally_ordered_moment(make_cat(8.0, 4), 0, 0) - 1.0) < 1e-12);
  // Zero label: only m = n = 0 survives.
  CHECK(std::abs(normally_ordered_moment(make_cat(0.0, 2), 1, 0)) == 0.0);

  for (double beta : {0.5, 2.0, 4.0}) {
    const auto s = make_cat(complex{beta, 0.3}, 3, std::vector<double>{0.0, 0.7, -0.2});
    const auto f = oracle::fock_of(s, 120);
    for (int m = 0; m <= 3; ++m)
      for (int n = 0; n <= 3; ++n) {
        const complex ref = oracle::fock_moment(f, m, n);
        CHECK(std::abs(normally_ordered_moment(s, m, n) - ref) < 1e-9 * std::max(1.0, std::abs(ref)));
      }
  }
  CHECK_THROWS_AS(normally_ordered_moment(coh, 9, 0), std::invalid_argument);
}
