#pragma once

#include <cstdint>

#include "multiprice/choice.hpp"
#include "multiprice/forecast.hpp"
#include "multiprice/instance.hpp"

namespace multiprice {

enum class PhiMode {
  perturbed,  // grid value function with seed-rounded borders
  fixed,      // the continuous value function itself
};

enum class Initialization {
  rounding,  // seed-rounded borders for every item
  best,      // unit-inventory items use the sigma-weighted procedure when it certifies more
};

struct BalanceOptions {
  PhiMode phi = PhiMode::perturbed;
  Initialization init = Initialization::rounding;
  bool trace_duals = false;
};

/// Choice model and assortment family for assortment arrivals.
struct ChoiceContext {
  const MnlModel* model = nullptr;
  AssortmentFamily family;
};

/// Inventory-balancing discount (e - e^w) / (e - 1).
double balancing_discount(double w);

/// Single-offer, deterministic or assortment arrivals (assortment needs
/// `choice`). With trace_duals set, every sale records its dual increments
/// and RunResult::invariant_violations counts sales breaking the marginal
/// condition at the certified ratio.
RunResult run_balance(const Setup& setup, const ArrivalSequence& arrivals,
                      std::uint64_t seed, const BalanceOptions& options = {},
                      const ChoiceContext& choice = {});

/// Deterministic arrivals only; multi-unit items are split into unit items
/// with their own seeds. Counts violations of the per-sale dual bound in
/// RunResult::invariant_violations.
RunResult run_ranking(const Setup& setup, const ArrivalSequence& arrivals,
                      std::uint64_t seed);

RunResult run_myopic(const Setup& setup, const ArrivalSequence& arrivals,
                     std::uint64_t seed, const ChoiceContext& choice = {});
RunResult run_gnr(const Setup& setup, const ArrivalSequence& arrivals,
                  std::uint64_t seed, const ChoiceContext& choice = {});
/// Top prices only, chosen between items by the balancing discount.
RunResult run_conservative(const Setup& setup, const ArrivalSequence& arrivals,
                           std::uint64_t seed, const ChoiceContext& choice = {});

/// Fixed value function with fractional inventory use p / k_i per accepted
/// bid and revenue p * r; bids that would overshoot capacity are truncated.
RunResult run_balance_fractional(const Setup& setup, const ArrivalSequence& arrivals,
                                 std::uint64_t seed);

RunResult run_balance_assortment(const Setup& setup, const ArrivalSequence& arrivals,
                                 const MnlModel& model, const AssortmentFamily& family,
                                 std::uint64_t seed, PhiMode phi = PhiMode::perturbed);

struct BidPriceOptions {
  ForecastMode mode = ForecastMode::resolving;
  std::size_t resolve_every = 100;
};

/// Assortment arrivals; offers the assortment maximizing revenue net of LP
/// bid prices, re-solving the choice LP on remaining capacity.
RunResult run_bidprice(const Setup& setup, const ArrivalSequence& arrivals,
                       const ChoiceContext& choice, const Forecast& forecast,
                       const BidPriceOptions& options, std::uint64_t seed);

/// Follows the bid-price assortment unless its value-function pseudorevenue
/// falls below 1/gamma of the best available; gamma must exceed 1.
RunResult run_hybrid(const Setup& setup, const ArrivalSequence& arrivals,
                     const ChoiceContext& choice, const Forecast& forecast,
                     const BidPriceOptions& base, double gamma, std::uint64_t seed);

}  // namespace multiprice
