#include "multiprice/io.hpp"

#include <fstream>
#include <limits>

#include "multiprice/errors.hpp"
#include "multiprice/hotel.hpp"

namespace multiprice {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(where + ": missing '" + key + "'");
  }
  return j.at(key);
}

template <class T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

Forecast parse_forecast(const json& j) {
  Forecast f;
  f.expected_total = get_as<double>(field(j, "expected_total", "forecast"), "forecast.expected_total");
  f.shares = get_as<std::vector<double>>(field(j, "shares", "forecast"), "forecast.shares");
  if (j.contains("curve")) {
    f.curve = BookingCurve(
        get_as<std::vector<std::pair<double, double>>>(j.at("curve"), "forecast.curve"));
  }
  if (j.contains("scale_threshold")) {
    f.scale_threshold = get_as<double>(j.at("scale_threshold"), "forecast.scale_threshold");
  }
  return f;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

MnlModel parse_model(const json& j) {
  std::vector<Product> products;
  const json& prods = field(j, "products", "model");
  for (std::size_t p = 0; p < prods.size(); ++p) {
    const std::string where = "model.products[" + std::to_string(p) + "]";
    Product pr;
    pr.item = get_as<std::size_t>(field(prods[p], "item", where), where);
    pr.price_index = get_as<std::size_t>(field(prods[p], "price_index", where), where);
    pr.name = prods[p].value("name", "p" + std::to_string(p));
    products.push_back(std::move(pr));
  }
  std::vector<CustomerType> types;
  const json& ts = field(j, "types", "model");
  for (std::size_t a = 0; a < ts.size(); ++a) {
    const std::string where = "model.types[" + std::to_string(a) + "]";
    CustomerType t;
    t.name = ts[a].value("name", "type" + std::to_string(a));
    t.share = get_as<double>(field(ts[a], "share", where), where);
    t.no_purchase = ts[a].contains("no_purchase")
                        ? get_as<double>(ts[a].at("no_purchase"), where)
                        : 0.0;
    for (const json& u : field(ts[a], "utilities", where)) {
      t.utilities.push_back(u.is_null() ? -std::numeric_limits<double>::infinity()
                                        : get_as<double>(u, where));
    }
    types.push_back(std::move(t));
  }
  return MnlModel(std::move(products), std::move(types));
}

MnlModel load_model(const std::string& path) { return parse_model(read_json_file(path)); }

json model_to_json(const MnlModel& model) {
  json j;
  j["products"] = json::array();
  for (const Product& p : model.products()) {
    j["products"].push_back({{"item", p.item}, {"price_index", p.price_index}, {"name", p.name}});
  }
  j["types"] = json::array();
  for (const CustomerType& t : model.types()) {
    json u = json::array();
    for (double x : t.utilities) {
      if (x == -std::numeric_limits<double>::infinity()) {
        u.push_back(nullptr);
      } else {
        u.push_back(x);
      }
    }
    j["types"].push_back(
        {{"name", t.name}, {"share", t.share}, {"utilities", u}, {"no_purchase", t.no_purchase}});
  }
  return j;
}

std::string bundled_model_path() { return std::string(MULTIPRICE_DATA_DIR) + "/hotel_mnl.json"; }

InstanceFile parse_instance(const json& j) {
  InstanceFile inst;
  const json& items = field(j, "items", "instance");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string where = "items[" + std::to_string(i) + "]";
    const long k = get_as<long>(field(items[i], "inventory", where), where);
    const auto prices = get_as<std::vector<double>>(field(items[i], "prices", where), where);
    inst.setup.items.push_back({k, PriceSet(prices)});
  }
  inst.setup.validate();

  const json& arr = field(j, "arrivals", "instance");
  inst.arrivals.kind = parse_arrival_kind(get_as<std::string>(field(arr, "kind", "arrivals"), "arrivals.kind"));
  const json& seq = field(arr, "sequence", "arrivals");
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const std::string where = "arrivals.sequence[" + std::to_string(t) + "]";
    Arrival a;
    switch (inst.arrivals.kind) {
      case ArrivalKind::single_offer:
      case ArrivalKind::fractional:
        a.probs = get_as<std::vector<std::vector<double>>>(field(seq[t], "probs", where), where);
        break;
      case ArrivalKind::deterministic: {
        const auto w = get_as<std::vector<int>>(field(seq[t], "willingness", where), where);
        if (w.size() > inst.setup.size()) throw ValidationError(where + ": too many items");
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (w[i] != 0) a.interests.push_back({i, w[i]});
        }
        break;
      }
      case ArrivalKind::assortment:
        a.customer_type = get_as<std::size_t>(field(seq[t], "type", where), where);
        a.days_before = seq[t].contains("days_before")
                            ? get_as<double>(seq[t].at("days_before"), where)
                            : 0.0;
        break;
    }
    inst.arrivals.arrivals.push_back(std::move(a));
  }
  inst.arrivals.validate(inst.setup);

  if (j.contains("model")) {
    const json& m = j.at("model");
    if (m.is_string()) {
      const std::string name = m.get<std::string>();
      if (name == "hotel") {
        inst.model = hotel_model(false);
      } else if (name == "hotel_fare_diff") {
        inst.model = hotel_model(true);
      } else {
        inst.model = load_model(name);
      }
    } else {
      inst.model = parse_model(m);
    }
  }
  if (inst.arrivals.kind == ArrivalKind::assortment) {
    if (!inst.model) throw ValidationError("assortment arrivals need a 'model'");
    for (const Arrival& a : inst.arrivals.arrivals) {
      if (a.customer_type >= inst.model->type_count()) {
        throw ValidationError("arrival references unknown customer type");
      }
    }
  }
  if (j.contains("forecast")) inst.forecast = parse_forecast(j.at("forecast"));
  return inst;
}

InstanceFile load_instance(const std::string& path) { return parse_instance(read_json_file(path)); }

json to_json(const ValueFunction& vf) {
  return {{"prices", std::vector<double>(vf.prices.prices().begin(), vf.prices.prices().end())},
          {"alphas", vf.alphas},
          {"borders", vf.borders},
          {"sigmas", vf.sigmas},
          {"F", vf.F},
          {"G", vf.G}};
}

json to_json(const ConditionReport& r) {
  return {{"holds", r.holds},
          {"optimality_holds", r.optimality_holds},
          {"feasibility_holds", r.feasibility_holds},
          {"optimality_slack", r.optimality_slack},
          {"feasibility_slack", r.feasibility_slack},
          {"max_c", r.max_c},
          {"worst", {{"configuration", r.worst_configuration},
                     {"price_index", r.worst_price},
                     {"units_sold", r.worst_units}}}};
}

json to_json(const LpSolution& sol) {
  json j = {{"objective", sol.objective},
            {"dual_objective", sol.dual_objective},
            {"y", sol.y},
            {"z", sol.z},
            {"iterations", sol.iterations}};
  if (!sol.offers.empty()) {
    j["primal"] = json::array();
    for (const OfferValue& o : sol.offers) {
      j["primal"].push_back(
          {{"t", o.t}, {"item", o.item}, {"price_index", o.price_index}, {"value", o.value}});
    }
  }
  if (!sol.columns.empty()) {
    j["columns"] = json::array();
    for (const AssortmentColumn& c : sol.columns) {
      j["columns"].push_back({{"type", c.type}, {"products", c.products}, {"value", c.value}});
    }
    j["columns_generated"] = sol.columns_generated;
    j["bound_gap"] = sol.bound_gap;
  }
  return j;
}

}  // namespace multiprice
