#pragma once

#include <cstddef>
#include <vector>

#include "multiprice/valuefn.hpp"

namespace multiprice {

/// Value function restricted to the grid {0, 1/k, ..., 1} with borders
/// rounded onto that grid by one shared seed.
struct PerturbedValueFunction {
  long k = 1;
  double seed = 0.0;
  std::vector<long> border_units;  // L~ * k, size m+1, front 0, back k
  std::vector<double> grid;        // Phi~(n / k), n = 0..k

  double at_units(long n) const { return grid[static_cast<std::size_t>(n)]; }
  /// Phi~ at border j (0..m).
  double at_border(std::size_t j) const { return at_units(border_units[j]); }
  double tilde_border(std::size_t j) const {
    return static_cast<double>(border_units[j]) / static_cast<double>(k);
  }
};

/// Rounded borders as grid units; throws DomainError for k < 1 or a seed
/// outside [0,1).
std::vector<long> round_border_units(const ValueFunction& vf, long k,
                                     double w_seed);
/// Same rounding expressed as fractions of inventory.
std::vector<double> round_borders(const ValueFunction& vf, long k,
                                  double w_seed);

PerturbedValueFunction build_perturbed(const ValueFunction& vf, long k,
                                       double w_seed);

/// Fractional parts of L^(j) k after snapping near-integers to 0.
std::vector<double> border_fractions(const ValueFunction& vf, long k);

struct Configuration {
  double probability = 0.0;
  PerturbedValueFunction phi;
};

/// A finite distribution over grid value functions of one price set.
struct RandomizedProcedure {
  long k = 1;
  std::vector<Configuration> configurations;
};

/// Exact support of the seed-driven rounding: one configuration per seed
/// interval between consecutive distinct border fractions.
RandomizedProcedure rounding_procedure(const ValueFunction& vf, long k);

/// Unit-inventory procedure: configuration d jumps at border d with
/// Phi~(1) = r_d / sigma_1 and probability sigma_d.
RandomizedProcedure single_unit_procedure(const PriceSet& prices);

struct ConditionReport {
  bool holds = false;
  bool optimality_holds = false;   // per-configuration marginal condition
  bool feasibility_holds = false;  // expected border values reach prices
  double optimality_slack = 0.0;   // min over (d, j, N) of (r_j/c - lhs) / r_j
  double feasibility_slack = 0.0;  // min over j of (E[Phi~(L~_j)] - r_j) / r_j
  double max_c = 0.0;              // largest c the marginal condition allows
  std::size_t worst_configuration = 0;
  std::size_t worst_price = 0;
  long worst_units = 0;
};

/// Checks both conditions for ratio c. Throws DomainError unless the
/// configuration probabilities sum to one within 1e-12.
ConditionReport verify_conditions(const RandomizedProcedure& proc,
                                  const PriceSet& prices, double c);

/// F / ((1+k)(e^{1/k} - 1)).
double rounding_bound(double F, long k);
/// (1 - 1/e) / ((1+k)(1 - e^{-1/k})), valid for a single price.
double single_price_bound(long k);
/// G / 2, valid for k = 1.
double single_unit_bound(double G);
/// Best certified ratio of an item with inventory k.
double certified_ratio(const ValueFunction& vf, long k);

}  // namespace multiprice
