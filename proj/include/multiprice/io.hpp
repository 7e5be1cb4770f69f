#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "multiprice/choice.hpp"
#include "multiprice/forecast.hpp"
#include "multiprice/instance.hpp"
#include "multiprice/lp.hpp"
#include "multiprice/perturb.hpp"
#include "multiprice/valuefn.hpp"

namespace multiprice {

struct InstanceFile {
  Setup setup;
  ArrivalSequence arrivals;
  std::optional<MnlModel> model;
  std::optional<Forecast> forecast;
};

/// Instance layout:
///   {"items": [{"inventory": k, "prices": [...]}, ...],
///    "arrivals": {"kind": "single_offer|deterministic|fractional|assortment",
///                 "sequence": [...]},
///    "model": <model object> | "hotel" | "hotel_fare_diff",   (assortment)
///    "forecast": {"expected_total": x, "shares": [...], "curve": [[d, f], ...]}}
/// Sequence entries are {"probs": [[p_i1, ...], ...]} for single_offer and
/// fractional, {"willingness": [j_1, ..., j_n]} for deterministic, and
/// {"type": a, "days_before": d} for assortment arrivals. Throws
/// ValidationError (or InvalidPriceSet) on malformed input.
InstanceFile parse_instance(const nlohmann::json& j);
InstanceFile load_instance(const std::string& path);

/// {"products": [{"item", "price_index", "name"}], "types": [{"name", "share",
/// "utilities": [... null for never ...], "no_purchase"}]}
MnlModel parse_model(const nlohmann::json& j);
MnlModel load_model(const std::string& path);
nlohmann::json model_to_json(const MnlModel& model);

/// Path of the bundled hotel model file.
std::string bundled_model_path();

nlohmann::json to_json(const ValueFunction& vf);
nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const LpSolution& sol);

nlohmann::json read_json_file(const std::string& path);

}  // namespace multiprice
