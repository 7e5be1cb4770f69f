#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "multiprice/valuefn.hpp"

namespace multiprice {

struct Item {
  long inventory = 1;
  PriceSet prices;
};

struct Setup {
  std::vector<Item> items;

  std::size_t size() const { return items.size(); }
  /// Throws ValidationError unless there is at least one item and every
  /// inventory is positive.
  void validate() const;
};

enum class ArrivalKind { single_offer, deterministic, fractional, assortment };

std::string to_string(ArrivalKind kind);
ArrivalKind parse_arrival_kind(const std::string& text);

/// A deterministic customer's highest acceptable price for one item:
/// buys at price index j (0-based) iff j < willingness.
struct Interest {
  std::size_t item = 0;
  int willingness = 0;
};

struct Arrival {
  // single_offer / fractional: probs[i][j] purchase probability of item i at
  // price j. Items absent from the vector (short outer vector) are never
  // bought.
  std::vector<std::vector<double>> probs;
  // deterministic: items with positive willingness.
  std::vector<Interest> interests;
  // assortment: MNL customer type.
  std::size_t customer_type = 0;
  double days_before = 0.0;

  /// Purchase probability of (item, price index) for single_offer,
  /// deterministic or fractional arrivals.
  double probability(std::size_t item, std::size_t price_index) const;
};

struct ArrivalSequence {
  ArrivalKind kind = ArrivalKind::single_offer;
  std::vector<Arrival> arrivals;

  std::size_t size() const { return arrivals.size(); }
  /// Checks probabilities lie in [0,1] and indices fit the setup.
  void validate(const Setup& setup) const;
};

/// Sale record of one customer.
struct Sale {
  std::size_t t = 0;
  std::size_t item = 0;
  std::size_t price_index = 0;
  double price = 0.0;         // revenue received (p * r in fractional mode)
  double pseudorevenue = 0.0; // Z_t
};

/// Dual increments of one sale: k_i times the rise in the item's bid price,
/// and the sale's pseudorevenue, against the revenue earned.
struct DualStep {
  std::size_t t = 0;
  double bid_price_gain = 0.0;
  double z = 0.0;
  double revenue = 0.0;
};

struct RunResult {
  double revenue = 0.0;
  std::vector<Sale> sales;
  std::vector<double> sold;  // units per item (fractional in fractional mode)
  std::vector<DualStep> duals;
  std::size_t decisions = 0;  // customers considered
  std::size_t offers = 0;     // customers offered something
  std::size_t overrides = 0;  // hybrid decisions that deferred to the value function
  std::size_t lp_solves = 0;
  std::size_t truncations = 0;
  std::size_t invariant_violations = 0;
  double certified_ratio = 0.0;  // smallest per-item certified c (Balance)
  std::vector<std::string> warnings;

  double override_fraction() const {
    return decisions == 0 ? 0.0
                          : static_cast<double>(overrides) /
                                static_cast<double>(decisions);
  }
};

}  // namespace multiprice
