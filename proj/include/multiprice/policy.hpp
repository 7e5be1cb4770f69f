#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multiprice/engine.hpp"

namespace multiprice {

/// A policy by name. Known names: balance, balance_fixed, ranking, myopic,
/// conservative, gnr, balance_fractional, one_shot, resolve, learn,
/// clairvoyant and the hybrids one_shot_hybrid, resolve_hybrid,
/// learn_hybrid, clairvoyant_hybrid.
struct PolicySpec {
  std::string name;
  double gamma = 1.5;
  std::size_t resolve_every = 100;
};

struct PolicyContext {
  ChoiceContext choice;
  const Forecast* forecast = nullptr;  // forecasting policies only
};

const std::vector<std::string>& policy_names();

/// Accepts "name" or "name:gamma" (hybrids). Throws ValidationError for an
/// unknown name.
PolicySpec parse_policy(const std::string& text);

/// Short column label, e.g. "OurAlg" or "Resolve-1.5".
std::string policy_label(const PolicySpec& spec);

bool needs_forecast(const PolicySpec& spec);

RunResult run_policy(const PolicySpec& spec, const Setup& setup,
                     const ArrivalSequence& arrivals, std::uint64_t seed,
                     const PolicyContext& context = {});

/// The ten policies compared on hotel instances.
std::vector<PolicySpec> hotel_policies();

}  // namespace multiprice
