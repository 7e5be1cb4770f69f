// Independent reference computations used by the unit and acceptance tests.
// None of these call into the code they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "multiprice/choice.hpp"
#include "multiprice/instance.hpp"
#include "multiprice/simplex.hpp"
#include "multiprice/valuefn.hpp"

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
  double flo = f(lo);
  for (int it = 0; it < iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Two prices {1, xi}: the unrationalized closed form.
inline double two_price_F(double xi) {
  const double e = std::numbers::e;
  return 1.0 - (std::sqrt(1.0 + 4.0 * xi * (xi - 1.0) / e) - 1.0) / (2.0 * (xi - 1.0));
}

// Booking limits by bisection on the common value c of
// (1 - e^{-a_j}) / (1 - r_{j-1}/r_j), subject to sum a_j = 1.
inline std::vector<double> alphas_by_common_ratio(const std::vector<double>& r) {
  const std::size_t m = r.size();
  auto alphas_for = [&](double c) {
    std::vector<double> a(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double gap = 1.0 - (j == 0 ? 0.0 : r[j - 1] / r[j]);
      a[j] = -std::log1p(-std::min(c * gap, 1.0 - 1e-300));
    }
    return a;
  };
  auto excess = [&](double c) {
    double s = 0.0;
    for (double a : alphas_for(c)) s += a;
    return s - 1.0;
  };
  // c lies in (0, 1): c = 1 - 1/e solves m = 1, more prices only lower it.
  return alphas_for(bisect(excess, 0.0, 1.0 - 1.0 / std::numbers::e));
}

// Continuum booking limit for log price ratio R: (a + R - 1) e^a = R.
inline double continuum_alpha(double R) {
  return bisect([R](double a) { return (a + R - 1.0) * std::exp(a) - R; }, 0.0, 1.0);
}

// Piecewise-exponential value function evaluated directly from the booking
// limits: on segment j, r_{j-1} + (r_j - r_{j-1}) (e^{w - L_{j-1}} - 1) / (e^{a_j} - 1).
inline double phi(const std::vector<double>& r, const std::vector<double>& alphas, double w) {
  double left = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double right = left + alphas[j];
    if (w < right || j + 1 == r.size()) {
      const double lo = j == 0 ? 0.0 : r[j - 1];
      return lo + (r[j] - lo) * std::expm1(w - left) / std::expm1(alphas[j]);
    }
    left = right;
  }
  return r.back();
}

// Best revenue on a deterministic instance: every customer is assigned to
// at most one item, at the highest price they accept. Memoized search over
// (customer, remaining inventories).
inline double exhaustive_deterministic(const multiprice::Setup& setup,
                                       const multiprice::ArrivalSequence& arrivals) {
  const std::size_t n = setup.size();
  std::vector<long> stock(n);
  for (std::size_t i = 0; i < n; ++i) stock[i] = setup.items[i].inventory;
  std::map<std::pair<std::size_t, std::vector<long>>, double> memo;
  std::function<double(std::size_t)> go = [&](std::size_t t) -> double {
    if (t == arrivals.size()) return 0.0;
    const auto key = std::make_pair(t, stock);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best = go(t + 1);
    for (const multiprice::Interest& in : arrivals.arrivals[t].interests) {
      if (in.willingness <= 0 || stock[in.item] == 0) continue;
      --stock[in.item];
      const double price =
          setup.items[in.item].prices[static_cast<std::size_t>(in.willingness - 1)];
      best = std::max(best, price + go(t + 1));
      ++stock[in.item];
    }
    memo.emplace(key, best);
    return best;
  };
  return go(0);
}

inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t P) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 1; mask < (1u << P); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t p = 0; p < P; ++p) {
      if (mask & (1u << p)) s.push_back(p);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// MNL purchase probabilities computed from raw utilities.
inline std::vector<double> mnl_probs(const multiprice::CustomerType& type,
                                     const std::vector<std::size_t>& offered) {
  double denom = std::exp(type.no_purchase);
  for (std::size_t p : offered) {
    if (std::isfinite(type.utilities[p])) denom += std::exp(type.utilities[p]);
  }
  std::vector<double> probs(type.utilities.size(), 0.0);
  for (std::size_t p : offered) {
    if (std::isfinite(type.utilities[p])) probs[p] = std::exp(type.utilities[p]) / denom;
  }
  return probs;
}

struct BruteAssortment {
  std::vector<std::size_t> products;
  double value = 0.0;
};

// Best assortment by enumerating every subset (the empty set scores 0).
inline BruteAssortment brute_force_assortment(const multiprice::MnlModel& model,
                                              std::size_t type,
                                              const std::vector<double>& values,
                                              bool one_price_per_item) {
  BruteAssortment best;
  for (const auto& s : all_subsets(model.product_count())) {
    if (one_price_per_item) {
      std::vector<std::size_t> items;
      for (std::size_t p : s) items.push_back(model.products()[p].item);
      std::sort(items.begin(), items.end());
      if (std::adjacent_find(items.begin(), items.end()) != items.end()) continue;
    }
    const std::vector<double> probs = mnl_probs(model.type(type), s);
    double v = 0.0;
    for (std::size_t p : s) v += probs[p] * values[p];
    if (v > best.value) best = {s, v};
  }
  return best;
}

struct FullLp {
  double objective = 0.0;
  std::vector<double> y;
};

// Choice LP with every nonempty assortment as an explicit column.
inline FullLp full_column_choice_lp(const multiprice::Setup& setup,
                                    const std::vector<double>& counts,
                                    const multiprice::MnlModel& model) {
  const std::size_t n = setup.size();
  const std::size_t A = model.type_count();
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n + A));
  for (std::size_t i = 0; i < n; ++i) {
    rhs[static_cast<Eigen::Index>(i)] = static_cast<double>(setup.items[i].inventory);
  }
  for (std::size_t a = 0; a < A; ++a) rhs[static_cast<Eigen::Index>(n + a)] = 1.0;
  multiprice::RevisedSimplex lp(rhs);
  for (std::size_t a = 0; a < A; ++a) {
    for (const auto& s : all_subsets(model.product_count())) {
      const std::vector<double> probs = mnl_probs(model.type(a), s);
      std::vector<double> use(n, 0.0);
      double rev = 0.0;
      for (std::size_t p : s) {
        const multiprice::Product& prod = model.products()[p];
        use[prod.item] += probs[p];
        rev += probs[p] * setup.items[prod.item].prices[prod.price_index];
      }
      std::vector<multiprice::RevisedSimplex::Entry> col;
      for (std::size_t i = 0; i < n; ++i) {
        if (use[i] > 0.0) col.push_back({static_cast<Eigen::Index>(i), counts[a] * use[i]});
      }
      col.push_back({static_cast<Eigen::Index>(n + a), 1.0});
      lp.add_column(counts[a] * rev, col);
    }
  }
  lp.solve();
  FullLp out;
  out.objective = lp.objective();
  for (std::size_t i = 0; i < n; ++i) out.y.push_back(lp.duals()[static_cast<Eigen::Index>(i)]);
  return out;
}

// Random strictly increasing price set starting at 1 with top ratio <= max_ratio.
inline std::vector<double> random_prices(std::mt19937_64& g, std::size_t m, double max_ratio) {
  std::uniform_real_distribution<double> u(0.0, std::log(max_ratio));
  std::vector<double> logs = {0.0};
  while (logs.size() < m) {
    const double x = u(g);
    if (std::none_of(logs.begin(), logs.end(),
                     [x](double y) { return std::abs(x - y) < 1e-3; })) {
      logs.push_back(x);
    }
  }
  std::sort(logs.begin(), logs.end());
  std::vector<double> r;
  for (double x : logs) r.push_back(std::exp(x));
  return r;
}

}  // namespace oracle
