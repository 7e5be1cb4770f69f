#include "multiprice/lp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "multiprice/errors.hpp"

namespace multiprice {

namespace {

// Dense basis inverse is rows^2 doubles.
constexpr std::size_t kMaxRows = 6000;

struct OfferKey {
  std::size_t t, item, price_index;
};

}  // namespace

LpSolution solve_primal(const Setup& setup, const ArrivalSequence& arrivals,
                        const LpOptions& options) {
  setup.validate();
  if (arrivals.kind == ArrivalKind::assortment) {
    throw ValidationError("hindsight LP needs single_offer, deterministic or fractional arrivals");
  }
  arrivals.validate(setup);
  const std::size_t n = setup.size();
  const std::size_t T = arrivals.size();
  const std::size_t rows = n + T;
  if (rows > kMaxRows) {
    throw SolverLimit("hindsight LP has " + std::to_string(rows) +
                      " rows; the dense solver is limited to " +
                      std::to_string(kMaxRows));
  }

  Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows));
  for (std::size_t i = 0; i < n; ++i) {
    rhs[static_cast<Eigen::Index>(i)] = static_cast<double>(setup.items[i].inventory);
  }
  for (std::size_t t = 0; t < T; ++t) rhs[static_cast<Eigen::Index>(n + t)] = 1.0;
  RevisedSimplex lp(rhs, options.simplex);

  std::vector<OfferKey> keys;
  std::size_t nonzeros = 0;
  auto add = [&](std::size_t t, std::size_t i, std::size_t j, double p) {
    nonzeros += 2;
    if (nonzeros > options.max_nonzeros) {
      throw SolverLimit("hindsight LP exceeds " +
                        std::to_string(options.max_nonzeros) + " nonzeros");
    }
    lp.add_column(p * setup.items[i].prices[j],
                  {{static_cast<Eigen::Index>(i), p},
                   {static_cast<Eigen::Index>(n + t), 1.0}});
    keys.push_back({t, i, j});
  };
  for (std::size_t t = 0; t < T; ++t) {
    const Arrival& a = arrivals.arrivals[t];
    if (arrivals.kind == ArrivalKind::deterministic) {
      for (const Interest& in : a.interests) {
        for (int j = 0; j < in.willingness; ++j) {
          add(t, in.item, static_cast<std::size_t>(j), 1.0);
        }
      }
    } else {
      for (std::size_t i = 0; i < a.probs.size(); ++i) {
        for (std::size_t j = 0; j < a.probs[i].size(); ++j) {
          if (a.probs[i][j] > 0.0) add(t, i, j, a.probs[i][j]);
        }
      }
    }
  }

  lp.solve();
  LpSolution sol;
  sol.objective = lp.objective();
  sol.iterations = lp.iterations();
  const std::vector<double> x = lp.primal();
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] > 1e-12) {
      sol.offers.push_back({keys[v].t, keys[v].item, keys[v].price_index, x[v]});
    }
  }
  const Eigen::VectorXd& d = lp.duals();
  sol.y.resize(n);
  sol.z.resize(T);
  for (std::size_t i = 0; i < n; ++i) {
    sol.y[i] = d[static_cast<Eigen::Index>(i)];
    sol.dual_objective += rhs[static_cast<Eigen::Index>(i)] * sol.y[i];
  }
  for (std::size_t t = 0; t < T; ++t) {
    sol.z[t] = d[static_cast<Eigen::Index>(n + t)];
    sol.dual_objective += sol.z[t];
  }
  return sol;
}

std::vector<double> product_prices(const Setup& setup, const MnlModel& model) {
  std::vector<double> out;
  out.reserve(model.product_count());
  for (const Product& p : model.products()) {
    if (p.item >= setup.size() || p.price_index >= setup.items[p.item].prices.size()) {
      throw ValidationError("product '" + p.name + "' does not match the setup");
    }
    out.push_back(setup.items[p.item].prices[p.price_index]);
  }
  return out;
}

LpSolution solve_choice_lp(const Setup& setup, std::span<const double> type_counts,
                           const MnlModel& model, const ChoiceLpOptions& options) {
  setup.validate();
  const std::size_t n = setup.size();
  const std::size_t A = model.type_count();
  if (type_counts.size() != A) {
    throw ValidationError("type count vector does not match the choice model");
  }
  for (double c : type_counts) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw ValidationError("type counts must be finite and nonnegative");
    }
  }
  std::vector<double> capacity(n);
  if (options.capacities.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      capacity[i] = static_cast<double>(setup.items[i].inventory);
    }
  } else {
    if (options.capacities.size() != n) {
      throw ValidationError("capacity override does not match the setup");
    }
    for (std::size_t i = 0; i < n; ++i) capacity[i] = std::max(0.0, options.capacities[i]);
  }
  const std::vector<double> prices = product_prices(setup, model);
  const std::size_t P = model.product_count();

  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n + A));
  for (std::size_t i = 0; i < n; ++i) rhs[static_cast<Eigen::Index>(i)] = capacity[i];
  for (std::size_t a = 0; a < A; ++a) rhs[static_cast<Eigen::Index>(n + a)] = 1.0;
  RevisedSimplex master(rhs, options.simplex);

  std::vector<std::pair<std::size_t, Assortment>> column_keys;
  std::set<std::pair<std::size_t, Assortment>> seen;
  auto add_column = [&](std::size_t a, const Assortment& s) {
    const ChoiceProbs probs = choice_probs(model, a, s);
    std::vector<double> use(n, 0.0);
    double revenue = 0.0;
    for (std::size_t p : s) {
      use[model.products()[p].item] += probs.product[p];
      revenue += probs.product[p] * prices[p];
    }
    std::vector<RevisedSimplex::Entry> entries;
    for (std::size_t i = 0; i < n; ++i) {
      if (use[i] > 0.0) {
        entries.push_back({static_cast<Eigen::Index>(i), type_counts[a] * use[i]});
      }
    }
    entries.push_back({static_cast<Eigen::Index>(n + a), 1.0});
    master.add_column(type_counts[a] * revenue, std::move(entries));
    column_keys.emplace_back(a, s);
    seen.emplace(a, s);
  };

  LpSolution sol;
  std::vector<double> adjusted(P);
  std::vector<double> best_value(A, 0.0);
  double lagrangian = 0.0;
  while (true) {
    master.solve();
    const double obj = master.objective();
    sol.objective_history.push_back(obj);
    const Eigen::VectorXd& d = master.duals();

    lagrangian = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lagrangian += capacity[i] * std::max(0.0, d[static_cast<Eigen::Index>(i)]);
    }
    for (std::size_t p = 0; p < P; ++p) {
      adjusted[p] = prices[p] - std::max(0.0, d[static_cast<Eigen::Index>(model.products()[p].item)]);
    }
    std::size_t added = 0;
    for (std::size_t a = 0; a < A; ++a) {
      if (type_counts[a] == 0.0) continue;
      const AssortmentChoice best =
          optimize_assortment(model, a, adjusted, options.family);
      best_value[a] = best.value;
      lagrangian += type_counts[a] * std::max(0.0, best.value);
      const double z = d[static_cast<Eigen::Index>(n + a)];
      const double reduced = type_counts[a] * best.value - z;
      if (reduced > options.reduced_cost_tol * (1.0 + std::abs(z)) &&
          !best.products.empty() && !seen.contains({a, best.products})) {
        if (master.columns() >= options.max_columns) {
          sol.column_limit_hit = true;
          break;
        }
        add_column(a, best.products);
        ++added;
      }
    }
    if (added == 0 || sol.column_limit_hit) break;
  }

  sol.objective = master.objective();
  sol.iterations = master.iterations();
  sol.columns_generated = master.columns();
  sol.bound_gap = std::max(0.0, lagrangian - sol.objective);
  const std::vector<double> x = master.primal();
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (x[c] > 1e-12) {
      sol.columns.push_back({column_keys[c].first, column_keys[c].second, x[c]});
    }
  }
  const Eigen::VectorXd& d = master.duals();
  sol.y.resize(n);
  sol.z.resize(A);
  for (std::size_t i = 0; i < n; ++i) {
    sol.y[i] = d[static_cast<Eigen::Index>(i)];
    sol.dual_objective += capacity[i] * sol.y[i];
  }
  for (std::size_t a = 0; a < A; ++a) {
    sol.z[a] = type_counts[a] == 0.0 ? 0.0 : d[static_cast<Eigen::Index>(n + a)];
    sol.dual_objective += sol.z[a];
  }
  return sol;
}

std::vector<double> bid_prices(const LpSolution& sol) {
  std::vector<double> out(sol.y.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(0.0, sol.y[i]);
  return out;
}

}  // namespace multiprice
