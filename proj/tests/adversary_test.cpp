#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "multiprice/adversary.hpp"
#include "multiprice/errors.hpp"
#include "multiprice/lp.hpp"
#include "oracles.hpp"

using namespace multiprice;

namespace {

// Projection onto {0 <= x <= cap, sum x <= 1}.
std::vector<double> project(std::vector<double> x, const std::vector<double>& cap) {
  auto clipped = [&](double shift) {
    std::vector<double> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = std::clamp(x[j] - shift, 0.0, cap[j]);
    return y;
  };
  auto total = [](const std::vector<double>& y) { return std::accumulate(y.begin(), y.end(), 0.0); };
  if (total(clipped(0.0)) <= 1.0) return clipped(0.0);
  double lo = 0.0, hi = *std::max_element(x.begin(), x.end());
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(clipped(mid)) > 1.0 ? lo : hi) = mid;
  }
  return clipped(hi);
}

struct Maximizer {
  std::vector<double> lambda;
  double value = -1.0;
};

// Maximizes sum_j r_j B_j (1 - e^{-l_j}) over the feasible lambdas by
// projected gradient ascent from random starts.
Maximizer maximize_online_bound(const std::vector<double>& r, const std::vector<double>& B,
                                std::mt19937_64& g, int restarts) {
  const std::size_t m = r.size();
  std::vector<double> cap(m, 1.0);
  for (std::size_t j = 0; j + 1 < m; ++j) cap[j] = std::min(1.0, std::log(B[j] / B[j + 1]));
  double L = 0.0;
  for (std::size_t j = 0; j < m; ++j) L = std::max(L, r[j] * B[j]);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Maximizer best;
  for (int s = 0; s < restarts; ++s) {
    std::vector<double> x(m);
    for (double& v : x) v = u(g);
    x = project(x, cap);
    for (int it = 0; it < 400; ++it) {
      for (std::size_t j = 0; j < m; ++j) x[j] += r[j] * B[j] * std::exp(-x[j]) / L;
      x = project(x, cap);
    }
    double value = 0.0;
    for (std::size_t j = 0; j < m; ++j) value += r[j] * B[j] * -std::expm1(-x[j]);
    if (value > best.value) best = {x, value};
  }
  return best;
}

}  // namespace

TEST_CASE("phase weights") {
  CHECK(solve_betas(PriceSet({2.0})).betas == std::vector<double>{1.0});
  const PhaseWeights w = solve_betas(PriceSet({1.0, 3.0}));
  CHECK(w.B[1] == doctest::Approx(0.2582).epsilon(1e-3));
  CHECK(w.betas[0] == doctest::Approx(0.7418).epsilon(1e-3));

  std::mt19937_64 g(51);
  for (int s = 0; s < 50; ++s) {
    const auto r = oracle::random_prices(g, 2 + g() % 5, 100.0);
    const PhaseWeights pw = solve_betas(PriceSet(r));
    const auto alphas = solve_alphas(PriceSet(r));
    CHECK(pw.B[0] == 1.0);
    for (std::size_t j = 1; j < r.size(); ++j) {
      CHECK(pw.B[j] < pw.B[j - 1]);
      CHECK(pw.B[j] > 0.0);
      CHECK(alphas[j - 1] <= std::log(pw.B[j - 1] / pw.B[j]) + 1e-12);
    }
    CHECK(std::accumulate(pw.betas.begin(), pw.betas.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("instance structure") {
  const AdversarialInstance inst = build_instance(PriceSet({1.0, 3.0}), 40, 3, 9);
  CHECK(inst.setup.size() == 40);
  CHECK(inst.arrivals.size() == 120);
  std::vector<std::size_t> sorted = inst.permutation;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
  for (std::size_t g = 0; g < 40; ++g) {
    const Arrival& a = inst.arrivals.arrivals[g * 3];
    CHECK(a.interests.size() == 40 - g);
    CHECK(a.interests.front().item == inst.permutation[g]);
    CHECK(a.interests.front().willingness == static_cast<int>(inst.group_phase[g] + 1));
  }
  CHECK_THROWS_AS(build_instance(PriceSet({1.0, 2.0, 4.0}), 2, 1, 1), ValidationError);
  CHECK_THROWS_AS(build_instance(PriceSet({1.0}), 0, 1, 1), ValidationError);
}

TEST_CASE("optimum is the sum over phases and matches the LP") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const AdversarialInstance inst = build_instance(PriceSet({1.0, 2.0, 4.0}), 12, 2, s);
    CHECK(solve_primal(inst.setup, inst.arrivals).objective == doctest::Approx(inst.opt).epsilon(1e-10));
  }
  const AdversarialInstance kvv = build_instance(PriceSet({1.0}), 2, 1, 3);
  CHECK(kvv.opt == 2.0);
}

TEST_CASE("analytic ratio equals F") {
  CHECK(analytic_bounds(PriceSet({1.0}), 100, 1).ratio == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  std::mt19937_64 g(52);
  for (int s = 0; s < 30; ++s) {
    const PriceSet ps(oracle::random_prices(g, 1 + g() % 5, 50.0));
    CHECK(analytic_bounds(ps, 10, 3).ratio == doctest::Approx(build_value_function(ps).F).epsilon(1e-10));
  }
}

TEST_CASE("booking limits maximize the online bound") {
  std::mt19937_64 g(53);
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto r = oracle::random_prices(g, m, 10.0);
    const PriceSet ps(r);
    const PhaseWeights w = solve_betas(ps);
    const auto alphas = solve_alphas(ps);
    const Maximizer best = maximize_online_bound(r, std::vector<double>(w.B.begin(), w.B.begin() + m), g, 2500);
    CHECK(best.value == doctest::Approx(analytic_bounds(ps, 1, 1).online_ub).epsilon(1e-6));
    for (std::size_t j = 0; j < m; ++j) CHECK(best.lambda[j] == doctest::Approx(alphas[j]).epsilon(1e-4));
  }
}
