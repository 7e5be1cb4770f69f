#include "multiprice/instance.hpp"

#include "multiprice/errors.hpp"

namespace multiprice {

void Setup::validate() const {
  if (items.empty()) throw ValidationError("setup has no items");
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].inventory < 1) {
      throw ValidationError("item " + std::to_string(i) +
                            " needs a positive inventory");
    }
  }
}

std::string to_string(ArrivalKind kind) {
  switch (kind) {
    case ArrivalKind::single_offer: return "single_offer";
    case ArrivalKind::deterministic: return "deterministic";
    case ArrivalKind::fractional: return "fractional";
    case ArrivalKind::assortment: return "assortment";
  }
  return "unknown";
}

ArrivalKind parse_arrival_kind(const std::string& text) {
  if (text == "single_offer") return ArrivalKind::single_offer;
  if (text == "deterministic") return ArrivalKind::deterministic;
  if (text == "fractional") return ArrivalKind::fractional;
  if (text == "assortment") return ArrivalKind::assortment;
  throw ValidationError("unknown arrival kind '" + text + "'");
}

double Arrival::probability(std::size_t item, std::size_t price_index) const {
  if (!interests.empty()) {
    for (const Interest& in : interests) {
      if (in.item == item) {
        return static_cast<int>(price_index) < in.willingness ? 1.0 : 0.0;
      }
    }
    return 0.0;
  }
  if (item >= probs.size() || price_index >= probs[item].size()) return 0.0;
  return probs[item][price_index];
}

void ArrivalSequence::validate(const Setup& setup) const {
  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    const Arrival& a = arrivals[t];
    const std::string where = "arrival " + std::to_string(t);
    switch (kind) {
      case ArrivalKind::single_offer:
      case ArrivalKind::fractional:
        if (a.probs.size() > setup.size()) {
          throw ValidationError(where + " lists more items than the setup");
        }
        for (std::size_t i = 0; i < a.probs.size(); ++i) {
          if (a.probs[i].size() > setup.items[i].prices.size()) {
            throw ValidationError(where + " lists more prices than item " +
                                  std::to_string(i) + " has");
          }
          for (double p : a.probs[i]) {
            if (!(p >= 0.0 && p <= 1.0)) {
              throw ValidationError(where + " has a probability outside [0,1]");
            }
          }
        }
        break;
      case ArrivalKind::deterministic:
        for (const Interest& in : a.interests) {
          if (in.item >= setup.size()) {
            throw ValidationError(where + " references unknown item");
          }
          if (in.willingness < 0 ||
              static_cast<std::size_t>(in.willingness) >
                  setup.items[in.item].prices.size()) {
            throw ValidationError(where + " has willingness outside 0..m");
          }
        }
        break;
      case ArrivalKind::assortment:
        break;
    }
  }
}

}  // namespace multiprice
