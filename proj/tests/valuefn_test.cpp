#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "multiprice/errors.hpp"
#include "multiprice/valuefn.hpp"
#include "oracles.hpp"

using namespace multiprice;

TEST_CASE("price sets reject bad input") {
  CHECK_THROWS_AS(PriceSet({}), InvalidPriceSet);
  CHECK_THROWS_AS(PriceSet({0.0, 1.0}), InvalidPriceSet);
  CHECK_THROWS_AS(PriceSet({2.0, 1.0}), InvalidPriceSet);
  CHECK_THROWS_AS(PriceSet({1.0, 1.0}), InvalidPriceSet);
  CHECK_THROWS_AS(PriceSet({1.0, INFINITY}), InvalidPriceSet);
  CHECK(canonicalize_prices({3.0, 1.0, 3.0}) == PriceSet({1.0, 3.0}));
}

TEST_CASE("booking limits match an independent bisection") {
  std::mt19937_64 g(11);
  for (int s = 0; s < 100; ++s) {
    const auto r = oracle::random_prices(g, 1 + g() % 6, 100.0);
    const auto ours = solve_alphas(PriceSet(r));
    const auto ref = oracle::alphas_by_common_ratio(r);
    REQUIRE(ours.size() == ref.size());
    for (std::size_t j = 0; j < ours.size(); ++j) CHECK(ours[j] == doctest::Approx(ref[j]).epsilon(1e-10));
  }
}

TEST_CASE("two prices {1,3}") {
  const ValueFunction vf = build_value_function(PriceSet({1.0, 3.0}));
  const double closed = 1.0 - (std::sqrt(1.0 + 24.0 / std::numbers::e) - 1.0) / 4.0;
  CHECK(vf.F == doctest::Approx(closed).epsilon(1e-12));
  CHECK(vf.F == doctest::Approx(0.4662).epsilon(1e-4));
  CHECK(vf.alphas[0] == doctest::Approx(0.6277).epsilon(1e-3));
  CHECK(vf.G == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("single price reduces to the classic balance function") {
  const ValueFunction vf = build_value_function(PriceSet({7.0}));
  CHECK(vf.alphas[0] == 1.0);
  CHECK(vf.F == doctest::Approx(1.0 - 1.0 / std::numbers::e).epsilon(1e-15));
  CHECK(vf(0.0) == 0.0);
  CHECK(vf(1.0) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("value function agrees with the direct formula") {
  std::mt19937_64 g(12);
  for (int s = 0; s < 30; ++s) {
    const auto r = oracle::random_prices(g, 1 + g() % 5, 50.0);
    const ValueFunction vf = build_value_function(PriceSet(r));
    for (int i = 0; i <= 100; ++i) {
      const double w = i / 100.0;
      CHECK(vf(w) == doctest::Approx(oracle::phi(r, vf.alphas, w)).epsilon(1e-9));
    }
  }
}

TEST_CASE("{150,450} grid is strictly increasing and convex within segments") {
  const ValueFunction vf = build_value_function(PriceSet({150.0, 450.0}));
  std::vector<double> v;
  for (int i = 0; i <= 100; ++i) v.push_back(vf(i / 100.0));
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double a = (i - 1) / 100.0, c = (i + 1) / 100.0;
    if (vf.segment(a) != vf.segment(c)) continue;
    CHECK(v[i + 1] - 2.0 * v[i] + v[i - 1] > 0.0);
  }
  CHECK(vf(vf.borders[1]) == doctest::Approx(150.0).epsilon(1e-12));
  CHECK(vf.derivative(0.3) > 0.0);
  CHECK_THROWS_AS(vf(1.5), DomainError);
}

TEST_CASE("two-price closed form is stable near xi = 1") {
  const double e = std::numbers::e;
  CHECK(two_price_F(1.0 + 1e-12) == doctest::Approx(1.0 - 1.0 / e).epsilon(1e-9));
  CHECK_THROWS_AS(two_price_F(1.0), DomainError);
  for (double xi : {1.5, 4.0, 100.0}) {
    CHECK(two_price_F(xi) == doctest::Approx(oracle::two_price_F(xi)).epsilon(1e-12));
  }
}

TEST_CASE("lambert W inverts w e^w") {
  for (double x : {0.0, 1e-8, 0.1, 1.0, std::numbers::e, 10.0, 1e6}) {
    const double w = lambert_w0(x);
    CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-13));
  }
  CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-15));
  CHECK_THROWS_AS(lambert_w0(-0.1), DomainError);
}

TEST_CASE("continuum value function") {
  for (double ratio : {1.5, std::numbers::e, 10.0, 1000.0}) {
    const ContinuumValueFunction c = build_continuum(2.0, 2.0 * ratio);
    CHECK(c.alpha == doctest::Approx(oracle::continuum_alpha(std::log(ratio))).epsilon(1e-12));
    CHECK(c(c.alpha) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c(1.0) == doctest::Approx(2.0 * ratio).epsilon(1e-12));
  }
  // Log ratio 1 gives alpha = W(1).
  CHECK(build_continuum(1.0, std::numbers::e).alpha ==
        doctest::Approx(lambert_w0(1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(build_continuum(2.0, 1.0), InvalidRange);
}

TEST_CASE("discrete price sets beat the continuum with the same endpoints") {
  std::mt19937_64 g(13);
  for (int s = 0; s < 100; ++s) {
    const auto r = oracle::random_prices(g, 2 + g() % 5, 100.0);
    CHECK(build_value_function(PriceSet(r)).F > build_continuum(r.front(), r.back()).F);
  }
}

TEST_CASE("alpha1 exceeds sigma1 when there are several prices") {
  std::mt19937_64 g(14);
  for (int s = 0; s < 200; ++s) {
    const ValueFunction vf = build_value_function(PriceSet(oracle::random_prices(g, 2 + g() % 5, 100.0)));
    CHECK(vf.alphas[0] > vf.G);
    CHECK(std::log(1.0 / (1.0 - vf.F)) > vf.G);
  }
}
