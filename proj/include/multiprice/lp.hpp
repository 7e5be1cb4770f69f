#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "multiprice/choice.hpp"
#include "multiprice/instance.hpp"
#include "multiprice/simplex.hpp"

namespace multiprice {

/// Nonzero primal value of the hindsight LP: fraction of customer t offered
/// item at price_index.
struct OfferValue {
  std::size_t t = 0;
  std::size_t item = 0;
  std::size_t price_index = 0;
  double value = 0.0;
};

/// Fraction of a customer type offered one assortment in the choice LP.
struct AssortmentColumn {
  std::size_t type = 0;
  Assortment products;
  double value = 0.0;
};

struct LpSolution {
  double objective = 0.0;
  double dual_objective = 0.0;
  std::vector<OfferValue> offers;          // hindsight LP
  std::vector<AssortmentColumn> columns;   // choice LP, positive columns only
  std::vector<double> y;                   // per item
  std::vector<double> z;                   // per customer (hindsight) or type (choice)
  std::size_t iterations = 0;
  // Column generation bookkeeping.
  std::size_t columns_generated = 0;
  std::vector<double> objective_history;
  bool column_limit_hit = false;
  double bound_gap = 0.0;  // Lagrangian upper bound minus objective
};

struct LpOptions {
  std::size_t max_nonzeros = 100000;
  SimplexOptions simplex;
};

/// Hindsight LP over single_offer, deterministic or fractional arrivals. Throws
/// SolverLimit when the constraint matrix would exceed max_nonzeros.
LpSolution solve_primal(const Setup& setup, const ArrivalSequence& arrivals,
                        const LpOptions& options = {});

struct ChoiceLpOptions {
  AssortmentFamily family;
  std::size_t max_columns = 10000;
  double reduced_cost_tol = 1e-7;
  std::vector<double> capacities;  // overrides item inventories when nonempty
  SimplexOptions simplex;
};

/// Choice-based LP with type_counts[a] expected customers of type a, solved
/// by column generation. Product prices come from the setup.
LpSolution solve_choice_lp(const Setup& setup, std::span<const double> type_counts,
                           const MnlModel& model,
                           const ChoiceLpOptions& options = {});

/// Item bid prices y*, clamped at zero.
std::vector<double> bid_prices(const LpSolution& sol);

/// Price of each catalog product under the setup.
std::vector<double> product_prices(const Setup& setup, const MnlModel& model);

}  // namespace multiprice
