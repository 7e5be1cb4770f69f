#include "multiprice/policy.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

#include "multiprice/errors.hpp"

namespace multiprice {

namespace {

std::optional<ForecastMode> forecast_mode(const std::string& base) {
  if (base == "one_shot") return ForecastMode::one_shot;
  if (base == "resolve") return ForecastMode::resolving;
  if (base == "learn") return ForecastMode::learning;
  if (base == "clairvoyant") return ForecastMode::clairvoyant;
  return std::nullopt;
}

std::string strip_hybrid(const std::string& name) {
  const std::string suffix = "_hybrid";
  if (name.size() > suffix.size() &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return name.substr(0, name.size() - suffix.size());
  }
  return {};
}

}  // namespace

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names = {
      "balance",     "balance_fixed",   "ranking",        "myopic",
      "conservative", "gnr",            "balance_fractional", "one_shot",
      "resolve",     "learn",           "clairvoyant",    "one_shot_hybrid",
      "resolve_hybrid", "learn_hybrid", "clairvoyant_hybrid"};
  return names;
}

PolicySpec parse_policy(const std::string& text) {
  PolicySpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (colon != std::string::npos) {
    try {
      spec.gamma = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("bad gamma in policy '" + text + "'");
    }
  }
  const auto& names = policy_names();
  if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
    throw ValidationError("unknown policy '" + spec.name + "'");
  }
  if (colon != std::string::npos && strip_hybrid(spec.name).empty()) {
    throw ValidationError("only hybrid policies take a gamma: '" + text + "'");
  }
  return spec;
}

std::string policy_label(const PolicySpec& spec) {
  if (spec.name == "balance_fixed") return "OurAlg";
  if (spec.name == "balance") return "Balance";
  if (spec.name == "ranking") return "Ranking";
  if (spec.name == "myopic") return "Myopic";
  if (spec.name == "conservative") return "Conservative";
  if (spec.name == "gnr") return "GNR";
  if (spec.name == "balance_fractional") return "FractionalBalance";
  if (spec.name == "one_shot") return "One-shot";
  if (spec.name == "resolve") return "Resolve";
  if (spec.name == "learn") return "Learn";
  if (spec.name == "clairvoyant") return "Clairvoyant";
  const std::string base = strip_hybrid(spec.name);
  if (!base.empty()) {
    char g[32];
    std::snprintf(g, sizeof g, "%g", spec.gamma);
    return policy_label({base, spec.gamma, spec.resolve_every}) + "-" + g;
  }
  return spec.name;
}

bool needs_forecast(const PolicySpec& spec) {
  return forecast_mode(spec.name).has_value() ||
         forecast_mode(strip_hybrid(spec.name)).has_value();
}

RunResult run_policy(const PolicySpec& spec, const Setup& setup,
                     const ArrivalSequence& arrivals, std::uint64_t seed,
                     const PolicyContext& context) {
  const std::string& n = spec.name;
  if (n == "balance") return run_balance(setup, arrivals, seed, {}, context.choice);
  if (n == "balance_fixed") {
    BalanceOptions opts;
    opts.phi = PhiMode::fixed;
    return run_balance(setup, arrivals, seed, opts, context.choice);
  }
  if (n == "ranking") return run_ranking(setup, arrivals, seed);
  if (n == "myopic") return run_myopic(setup, arrivals, seed, context.choice);
  if (n == "conservative") return run_conservative(setup, arrivals, seed, context.choice);
  if (n == "gnr") return run_gnr(setup, arrivals, seed, context.choice);
  if (n == "balance_fractional") return run_balance_fractional(setup, arrivals, seed);

  const bool hybrid = !strip_hybrid(n).empty();
  const std::optional<ForecastMode> mode = forecast_mode(hybrid ? strip_hybrid(n) : n);
  if (!mode) throw ValidationError("unknown policy '" + n + "'");
  if (context.forecast == nullptr) {
    throw ValidationError("policy '" + n + "' needs a forecast");
  }
  BidPriceOptions opts{*mode, spec.resolve_every};
  if (hybrid) {
    return run_hybrid(setup, arrivals, context.choice, *context.forecast, opts,
                      spec.gamma, seed);
  }
  return run_bidprice(setup, arrivals, context.choice, *context.forecast, opts, seed);
}

std::vector<PolicySpec> hotel_policies() {
  std::vector<PolicySpec> out;
  for (const char* name : {"myopic", "conservative", "gnr", "balance_fixed", "one_shot",
                           "resolve", "learn", "clairvoyant", "resolve_hybrid",
                           "learn_hybrid"}) {
    out.push_back({name});
  }
  return out;
}

}  // namespace multiprice
