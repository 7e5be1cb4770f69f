#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "multiprice/errors.hpp"
#include "multiprice/lp.hpp"
#include "oracles.hpp"

using namespace multiprice;

namespace {

MnlModel random_model(std::mt19937_64& g, std::size_t items, std::size_t per_item,
                      std::size_t types) {
  std::normal_distribution<double> u(0.0, 1.0);
  std::vector<Product> products;
  for (std::size_t i = 0; i < items; ++i) {
    for (std::size_t j = 0; j < per_item; ++j) products.push_back({i, j, ""});
  }
  std::vector<CustomerType> ts;
  for (std::size_t a = 0; a < types; ++a) {
    CustomerType t{"t", 1.0 / static_cast<double>(types), {}, u(g)};
    for (std::size_t p = 0; p < products.size(); ++p) {
      t.utilities.push_back(g() % 7 == 0 ? -std::numeric_limits<double>::infinity() : u(g));
    }
    ts.push_back(t);
  }
  return MnlModel(products, ts);
}

}  // namespace

TEST_CASE("MNL probabilities") {
  std::mt19937_64 g(31);
  const MnlModel m = random_model(g, 3, 2, 2);
  const Assortment s = {0, 2, 3, 5};
  const ChoiceProbs p = choice_probs(m, 1, s);
  double total = p.no_purchase;
  for (double x : p.product) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  const auto ref = oracle::mnl_probs(m.type(1), s);
  for (std::size_t k = 0; k < ref.size(); ++k) CHECK(p.product[k] == doctest::Approx(ref[k]).epsilon(1e-12));

  // Shifting every utility, no-purchase included, changes nothing.
  std::vector<CustomerType> shifted = m.types();
  for (auto& t : shifted) {
    for (double& u : t.utilities) u += 3.0;
    t.no_purchase += 3.0;
  }
  const ChoiceProbs q = choice_probs(MnlModel(m.products(), shifted), 1, s);
  for (std::size_t k = 0; k < ref.size(); ++k) CHECK(q.product[k] == doctest::Approx(p.product[k]).epsilon(1e-12));
}

TEST_CASE("products with -inf utility are never chosen") {
  const double ninf = -std::numeric_limits<double>::infinity();
  const MnlModel m({{0, 0, "a"}, {1, 0, "b"}}, {{"t", 1.0, {ninf, 0.0}, 0.0}});
  const ChoiceProbs p = choice_probs(m, 0, {0, 1});
  CHECK(p.product[0] == 0.0);
  CHECK(p.product[1] == doctest::Approx(0.5));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(MnlModel({{0, 0, "a"}}, {}), ValidationError);
  CHECK_THROWS_AS(MnlModel({{0, 0, "a"}}, {{"t", 1.0, {0.0, 1.0}, 0.0}}), ValidationError);
  CHECK_THROWS_AS(MnlModel({{0, 0, "a"}}, {{"t", 0.7, {0.0}, 0.0}}), ValidationError);
}

TEST_CASE("sampled choices follow the MNL frequencies") {
  std::mt19937_64 g(32);
  const MnlModel m = random_model(g, 2, 2, 1);
  const Assortment s = {0, 1, 2, 3};
  const ChoiceProbs p = choice_probs(m, 0, s);
  constexpr int draws = 100000;
  std::vector<double> count(5, 0.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d = 0; d < draws; ++d) {
    const auto c = sample_choice(m, 0, s, u(g));
    count[c ? *c : 4] += 1.0;
  }
  for (std::size_t k = 0; k < 5; ++k) {
    const double prob = k < 4 ? p.product[k] : p.no_purchase;
    const double sd = std::sqrt(prob * (1.0 - prob) / draws);
    CHECK(std::abs(count[k] / draws - prob) <= 4.0 * sd + 1e-12);
  }
}

TEST_CASE("assortment optimizer matches brute force") {
  std::mt19937_64 g(33);
  std::uniform_real_distribution<double> val(-3.0, 6.0);
  for (int s = 0; s < 200; ++s) {
    const MnlModel m = random_model(g, 4, 2, 1);
    std::vector<double> values(m.product_count());
    for (double& v : values) v = val(g);
    for (bool one_price : {false, true}) {
      const auto fam = one_price ? AssortmentFamily::one_price_per_item() : AssortmentFamily::unconstrained();
      const AssortmentChoice ours = optimize_assortment(m, 0, values, fam);
      const auto brute = oracle::brute_force_assortment(m, 0, values, one_price);
      CHECK(ours.value == doctest::Approx(brute.value).epsilon(1e-10));
      CHECK(assortment_value(m, 0, ours.products, values) == doctest::Approx(ours.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("availability mask removes products") {
  std::mt19937_64 g(34);
  const MnlModel m = random_model(g, 3, 1, 1);
  const std::vector<double> values = {5.0, 4.0, 3.0};
  const std::vector<char> mask = {0, 1, 1};
  const AssortmentChoice c = optimize_assortment(m, 0, values, AssortmentFamily::unconstrained(), mask);
  for (std::size_t p : c.products) CHECK(p != 0);
}

TEST_CASE("explicit families pick the best listed assortment") {
  std::mt19937_64 g(35);
  const MnlModel m = random_model(g, 2, 1, 1);
  AssortmentFamily fam{FamilyKind::explicit_list, {{0}, {1}}};
  const std::vector<double> values = {1.0, 100.0};
  const AssortmentChoice c = optimize_assortment(m, 0, values, fam);
  if (std::isfinite(m.type(0).utilities[1])) CHECK(c.products == Assortment{1});
}

TEST_CASE("simplex solves a textbook LP") {
  // max 3x + 5y; x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6).
  Eigen::VectorXd rhs(3);
  rhs << 4, 12, 18;
  RevisedSimplex lp(rhs);
  lp.add_column(3.0, {{0, 1.0}, {2, 3.0}});
  lp.add_column(5.0, {{1, 2.0}, {2, 2.0}});
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(36.0));
  CHECK(lp.primal()[0] == doctest::Approx(2.0));
  CHECK(lp.primal()[1] == doctest::Approx(6.0));
  CHECK(lp.duals()[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lp.duals()[1] == doctest::Approx(1.5));
  CHECK(lp.duals()[2] == doctest::Approx(1.0));
}

TEST_CASE("simplex survives a degenerate, cycling-prone LP") {
  // Beale's example in max form.
  Eigen::VectorXd rhs(3);
  rhs << 0, 0, 1;
  SimplexOptions opts;
  opts.degenerate_switch = 1;
  RevisedSimplex lp(rhs, opts);
  lp.add_column(0.75, {{0, 0.25}, {1, 0.5}});
  lp.add_column(-150.0, {{0, -60.0}, {1, -90.0}});
  lp.add_column(0.02, {{0, -1.0 / 25.0}, {1, -1.0 / 50.0}, {2, 1.0}});
  lp.add_column(-6.0, {{0, 9.0}, {1, 3.0}});
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(0.05));
  CHECK(lp.used_bland());
}

TEST_CASE("simplex limits") {
  Eigen::VectorXd rhs(1);
  rhs << 1;
  RevisedSimplex unbounded(rhs);
  unbounded.add_column(1.0, {{0, -1.0}});
  CHECK_THROWS_AS(unbounded.solve(), SolverLimit);

  Eigen::VectorXd rhs2(2);
  rhs2 << 1, 1;
  SimplexOptions opts;
  opts.max_iterations = 1;
  RevisedSimplex capped(rhs2, opts);
  capped.add_column(1.0, {{0, 1.0}});
  capped.add_column(1.0, {{1, 1.0}});
  CHECK_THROWS_AS(capped.solve(), SolverLimit);

  Eigen::VectorXd bad(1);
  bad << -1;
  CHECK_THROWS_AS(RevisedSimplex{bad}, ValidationError);
}

TEST_CASE("hindsight LP: strong duality and dual feasibility") {
  std::mt19937_64 g(36);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 20; ++s) {
    Setup setup;
    for (std::size_t i = 0; i < 3; ++i) setup.items.push_back({1 + static_cast<long>(g() % 3), PriceSet(oracle::random_prices(g, 2, 5.0))});
    ArrivalSequence arr;
    arr.kind = s % 2 ? ArrivalKind::single_offer : ArrivalKind::fractional;
    for (int t = 0; t < 8; ++t) {
      Arrival a;
      for (const Item& it : setup.items) {
        std::vector<double> p(it.prices.size());
        double cap = u(g);
        for (double& x : p) x = cap = cap * u(g);
        a.probs.push_back(p);
      }
      arr.arrivals.push_back(a);
    }
    const LpSolution sol = solve_primal(setup, arr);
    CHECK(sol.objective == doctest::Approx(sol.dual_objective).epsilon(1e-9));
    for (double y : sol.y) CHECK(y >= -1e-9);
    for (double z : sol.z) CHECK(z >= -1e-9);
    for (std::size_t t = 0; t < arr.size(); ++t) {
      for (std::size_t i = 0; i < setup.size(); ++i) {
        for (std::size_t j = 0; j < setup.items[i].prices.size(); ++j) {
          const double p = arr.arrivals[t].probs[i][j];
          CHECK(p * (setup.items[i].prices[j] - sol.y[i]) <= sol.z[t] + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("hindsight LP guards") {
  Setup setup;
  setup.items.push_back({1, PriceSet({1.0})});
  ArrivalSequence arr;
  arr.kind = ArrivalKind::assortment;
  arr.arrivals.resize(1);
  CHECK_THROWS_AS(solve_primal(setup, arr), ValidationError);

  ArrivalSequence many;
  many.kind = ArrivalKind::single_offer;
  for (int t = 0; t < 10; ++t) many.arrivals.push_back(Arrival{{{1.0}}, {}, 0, 0.0});
  LpOptions small;
  small.max_nonzeros = 5;
  CHECK_THROWS_AS(solve_primal(setup, many, small), SolverLimit);
}

TEST_CASE("choice LP: column generation against all columns, with a dual certificate") {
  std::mt19937_64 g(37);
  std::uniform_real_distribution<double> c(0.5, 30.0);
  for (int s = 0; s < 25; ++s) {
    const MnlModel m = random_model(g, 3, 2, 2);
    Setup setup;
    for (std::size_t i = 0; i < 3; ++i) setup.items.push_back({1 + static_cast<long>(g() % 10), PriceSet(oracle::random_prices(g, 2, 4.0))});
    const std::vector<double> counts = {c(g), c(g)};
    const LpSolution sol = solve_choice_lp(setup, counts, m);
    const auto full = oracle::full_column_choice_lp(setup, counts, m);
    CHECK(sol.objective == doctest::Approx(full.objective).epsilon(1e-9));
    CHECK(sol.objective == doctest::Approx(sol.dual_objective).epsilon(1e-9));
    CHECK(sol.bound_gap <= 1e-6 * (1.0 + sol.objective));
    const std::vector<double> prices = product_prices(setup, m);
    for (std::size_t a = 0; a < 2; ++a) {
      for (const auto& subset : oracle::all_subsets(m.product_count())) {
        const auto probs = oracle::mnl_probs(m.type(a), subset);
        double reduced = 0.0;
        for (std::size_t p : subset) reduced += probs[p] * (prices[p] - sol.y[m.products()[p].item]);
        CHECK(counts[a] * reduced <= sol.z[a] + 1e-7 * (1.0 + std::abs(sol.z[a])));
      }
    }
  }
}

TEST_CASE("choice LP capacity override and zero counts") {
  std::mt19937_64 g(38);
  const MnlModel m = random_model(g, 2, 1, 2);
  Setup setup;
  setup.items = {{5, PriceSet({2.0})}, {5, PriceSet({3.0})}};
  ChoiceLpOptions opts;
  opts.capacities = {0.0, 0.0};
  CHECK(solve_choice_lp(setup, std::vector<double>{10.0, 10.0}, m, opts).objective == doctest::Approx(0.0));
  CHECK(solve_choice_lp(setup, std::vector<double>{0.0, 0.0}, m).objective == doctest::Approx(0.0));
  CHECK_THROWS_AS(solve_choice_lp(setup, std::vector<double>{1.0}, m), ValidationError);
  CHECK_THROWS_AS(solve_choice_lp(setup, std::vector<double>{-1.0, 1.0}, m), ValidationError);
}
