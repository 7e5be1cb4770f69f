#include "multiprice/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "multiprice/errors.hpp"
#include "multiprice/lp.hpp"
#include "multiprice/perturb.hpp"
#include "multiprice/rng.hpp"

namespace multiprice {

namespace {

constexpr double kPositive = 1e-12;
constexpr double kNotOffered = -std::numeric_limits<double>::infinity();

void check_kind(const ArrivalSequence& arrivals, std::initializer_list<ArrivalKind> ok,
                const char* policy) {
  for (ArrivalKind k : ok) {
    if (arrivals.kind == k) return;
  }
  throw ValidationError(std::string(policy) + " does not support " +
                        to_string(arrivals.kind) + " arrivals");
}

void prepare(const Setup& setup, const ArrivalSequence& arrivals, RunResult& res) {
  setup.validate();
  arrivals.validate(setup);
  res.sold.assign(setup.size(), 0.0);
}

const MnlModel& require_model(const ChoiceContext& choice) {
  if (choice.model == nullptr) {
    throw ValidationError("assortment arrivals need a choice model");
  }
  return *choice.model;
}

bool available(const Setup& setup, const RunResult& res, std::size_t i) {
  return res.sold[i] < static_cast<double>(setup.items[i].inventory);
}

// Best (item, price) candidate with ties to the lowest item, then the
// highest price.
struct Candidate {
  bool found = false;
  std::size_t item = 0;
  std::size_t price_index = 0;
  double value = kPositive;
  double probability = 0.0;

  void consider(std::size_t i, std::size_t j, double p, double v) {
    if (v > value || (found && v == value &&
                      (i < item || (i == item && j > price_index)))) {
      found = true;
      item = i;
      price_index = j;
      value = v;
      probability = p;
    }
  }
};

// Runs an index policy: score(i, j) is the per-unit value of selling item i
// at price j now (kNotOffered to exclude), on_sale(t, i, j) updates state
// before the sale is recorded.
template <class Score, class OnSale>
void run_index_policy(const Setup& setup, const ArrivalSequence& arrivals,
                      std::uint64_t seed, const ChoiceContext& choice, RunResult& res,
                      Score&& score, OnSale&& on_sale) {
  Rng customers(seed, Stream::customer);
  const std::size_t n = setup.size();

  if (arrivals.kind == ArrivalKind::assortment) {
    const MnlModel& model = require_model(choice);
    const std::size_t P = model.product_count();
    std::vector<double> values(P);
    std::vector<char> mask(P);
    for (std::size_t t = 0; t < arrivals.size(); ++t) {
      const Arrival& a = arrivals.arrivals[t];
      const double u = customers.uniform();
      ++res.decisions;
      for (std::size_t p = 0; p < P; ++p) {
        const Product& prod = model.products()[p];
        mask[p] = available(setup, res, prod.item) ? 1 : 0;
        values[p] = mask[p] ? score(prod.item, prod.price_index) : kNotOffered;
        if (!(values[p] > kPositive)) mask[p] = 0;
      }
      const AssortmentChoice best =
          optimize_assortment(model, a.customer_type, values, choice.family, mask);
      if (best.products.empty()) continue;
      ++res.offers;
      const std::optional<std::size_t> bought =
          sample_choice(model, a.customer_type, best.products, u);
      if (!bought) continue;
      const Product& prod = model.products()[*bought];
      const double z = values[*bought];
      on_sale(t, prod.item, prod.price_index);
      const double r = setup.items[prod.item].prices[prod.price_index];
      res.revenue += r;
      res.sold[prod.item] += 1.0;
      res.sales.push_back({t, prod.item, prod.price_index, r, z});
    }
    return;
  }

  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    const Arrival& a = arrivals.arrivals[t];
    const double u = customers.uniform();
    ++res.decisions;
    Candidate best;
    if (arrivals.kind == ArrivalKind::deterministic) {
      for (const Interest& in : a.interests) {
        if (!available(setup, res, in.item)) continue;
        for (int j = in.willingness - 1; j >= 0; --j) {
          const double v = score(in.item, static_cast<std::size_t>(j));
          best.consider(in.item, static_cast<std::size_t>(j), 1.0, v);
        }
      }
    } else {
      for (std::size_t i = 0; i < std::min(n, a.probs.size()); ++i) {
        if (!available(setup, res, i)) continue;
        for (std::size_t j = a.probs[i].size(); j-- > 0;) {
          const double p = a.probs[i][j];
          if (!(p > 0.0)) continue;
          const double v = score(i, j);
          if (v == kNotOffered) continue;
          best.consider(i, j, p, p * v);
        }
      }
    }
    if (!best.found) continue;
    ++res.offers;
    if (!(u < best.probability)) continue;
    const double z = best.value / best.probability;
    on_sale(t, best.item, best.price_index);
    const double r = setup.items[best.item].prices[best.price_index];
    res.revenue += r;
    res.sold[best.item] += 1.0;
    res.sales.push_back({t, best.item, best.price_index, r, z});
  }
}

struct BalanceItem {
  ValueFunction vf;
  PerturbedValueFunction grid;
  double certified = 0.0;
};

std::vector<BalanceItem> init_balance(const Setup& setup, std::uint64_t seed,
                                      const BalanceOptions& options) {
  std::vector<BalanceItem> items;
  items.reserve(setup.size());
  for (std::size_t i = 0; i < setup.size(); ++i) {
    const Item& it = setup.items[i];
    BalanceItem b{build_value_function(it.prices), {}, 0.0};
    if (options.phi == PhiMode::perturbed) {
      Rng init(seed, Stream::item_init, i);
      const double w = init.uniform();
      b.grid = build_perturbed(b.vf, it.inventory, w);
      b.certified = rounding_bound(b.vf.F, it.inventory);
      if (b.vf.alphas.size() == 1) {
        b.certified = std::max(b.certified, single_price_bound(it.inventory));
      }
      if (options.init == Initialization::best && it.inventory == 1 &&
          single_unit_bound(b.vf.G) > b.certified) {
        const RandomizedProcedure proc = single_unit_procedure(it.prices);
        double acc = 0.0;
        std::size_t pick = proc.configurations.size() - 1;
        for (std::size_t d = 0; d < proc.configurations.size(); ++d) {
          acc += proc.configurations[d].probability;
          if (w < acc) {
            pick = d;
            break;
          }
        }
        b.grid = proc.configurations[pick].phi;
        b.certified = single_unit_bound(b.vf.G);
      }
    }
    items.push_back(std::move(b));
  }
  return items;
}

}  // namespace

double balancing_discount(double w) {
  const double e = std::numbers::e;
  return (e - std::exp(w)) / (e - 1.0);
}

RunResult run_balance(const Setup& setup, const ArrivalSequence& arrivals,
                      std::uint64_t seed, const BalanceOptions& options,
                      const ChoiceContext& choice) {
  check_kind(arrivals,
             {ArrivalKind::single_offer, ArrivalKind::deterministic,
              ArrivalKind::assortment},
             "balance");
  RunResult res;
  prepare(setup, arrivals, res);
  std::vector<BalanceItem> items = init_balance(setup, seed, options);
  const bool perturbed = options.phi == PhiMode::perturbed;
  std::vector<long> sold_units(setup.size(), 0);
  std::vector<double> bid(setup.size(), 0.0);
  res.certified_ratio = std::numeric_limits<double>::infinity();
  for (const BalanceItem& b : items) {
    res.certified_ratio = std::min(res.certified_ratio, b.certified);
  }

  auto bid_at = [&](std::size_t i, long units) {
    if (perturbed) return items[i].grid.at_units(units);
    const double k = static_cast<double>(setup.items[i].inventory);
    return items[i].vf(std::min(1.0, static_cast<double>(units) / k));
  };
  auto target = [&](std::size_t i, std::size_t j) {
    return perturbed ? items[i].grid.at_border(j + 1) : setup.items[i].prices[j];
  };
  auto score = [&](std::size_t i, std::size_t j) { return target(i, j) - bid[i]; };
  auto on_sale = [&](std::size_t t, std::size_t i, std::size_t j) {
    const long k = setup.items[i].inventory;
    const long n = sold_units[i];
    if (n >= k) throw Error("balance offered a stocked-out item");
    const double z = target(i, j) - bid[i];
    const double next = bid_at(i, n + 1);
    const double gain = static_cast<double>(k) * (next - bid[i]);
    const double r = setup.items[i].prices[j];
    if (options.trace_duals) {
      res.duals.push_back({t, gain, z, r});
      const double c = items[i].certified;
      if (c > 0.0 && gain + z > r / c * (1.0 + 1e-9)) ++res.invariant_violations;
    }
    sold_units[i] = n + 1;
    bid[i] = next;
  };
  run_index_policy(setup, arrivals, seed, choice, res, score, on_sale);
  return res;
}

RunResult run_ranking(const Setup& setup, const ArrivalSequence& arrivals,
                      std::uint64_t seed) {
  check_kind(arrivals, {ArrivalKind::deterministic}, "ranking");
  RunResult res;
  prepare(setup, arrivals, res);
  const std::size_t n = setup.size();

  struct Units {
    ValueFunction vf;
    std::vector<double> seeds;  // ascending; the lowest available seed is best
    std::vector<double> phi;
    std::size_t next = 0;
  };
  std::vector<Units> units;
  units.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Units u{build_value_function(setup.items[i].prices), {}, {}, 0};
    Rng init(seed, Stream::item_init, i);
    for (long c = 0; c < setup.items[i].inventory; ++c) u.seeds.push_back(init.uniform());
    std::sort(u.seeds.begin(), u.seeds.end());
    for (double w : u.seeds) u.phi.push_back(u.vf(w));
    units.push_back(std::move(u));
  }
  res.certified_ratio = std::numeric_limits<double>::infinity();
  for (const Units& u : units) res.certified_ratio = std::min(res.certified_ratio, u.vf.F);

  Rng customers(seed, Stream::customer);
  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    customers.uniform();  // keeps the customer stream aligned with other policies
    ++res.decisions;
    Candidate best;
    for (const Interest& in : arrivals.arrivals[t].interests) {
      const Units& u = units[in.item];
      if (in.willingness == 0 || u.next == u.seeds.size()) continue;
      const auto j = static_cast<std::size_t>(in.willingness - 1);
      best.consider(in.item, j, 1.0, setup.items[in.item].prices[j] - u.phi[u.next]);
    }
    if (!best.found) continue;
    ++res.offers;
    Units& u = units[best.item];
    const double w = u.seeds[u.next];
    const double r = setup.items[best.item].prices[best.price_index];
    const double y = u.vf.derivative(w);
    const double z = best.value;
    res.duals.push_back({t, y, z, r});
    if (u.vf.F * (y + z) > r * (1.0 + 1e-9)) ++res.invariant_violations;
    ++u.next;
    res.revenue += r;
    res.sold[best.item] += 1.0;
    res.sales.push_back({t, best.item, best.price_index, r, z});
  }
  return res;
}

RunResult run_myopic(const Setup& setup, const ArrivalSequence& arrivals,
                     std::uint64_t seed, const ChoiceContext& choice) {
  check_kind(arrivals,
             {ArrivalKind::single_offer, ArrivalKind::deterministic,
              ArrivalKind::assortment},
             "myopic");
  RunResult res;
  prepare(setup, arrivals, res);
  auto score = [&](std::size_t i, std::size_t j) { return setup.items[i].prices[j]; };
  run_index_policy(setup, arrivals, seed, choice, res, score,
                   [](std::size_t, std::size_t, std::size_t) {});
  return res;
}

RunResult run_gnr(const Setup& setup, const ArrivalSequence& arrivals,
                  std::uint64_t seed, const ChoiceContext& choice) {
  check_kind(arrivals,
             {ArrivalKind::single_offer, ArrivalKind::deterministic,
              ArrivalKind::assortment},
             "gnr");
  RunResult res;
  prepare(setup, arrivals, res);
  auto score = [&](std::size_t i, std::size_t j) {
    const double w = res.sold[i] / static_cast<double>(setup.items[i].inventory);
    return setup.items[i].prices[j] * balancing_discount(w);
  };
  run_index_policy(setup, arrivals, seed, choice, res, score,
                   [](std::size_t, std::size_t, std::size_t) {});
  return res;
}

RunResult run_conservative(const Setup& setup, const ArrivalSequence& arrivals,
                           std::uint64_t seed, const ChoiceContext& choice) {
  check_kind(arrivals,
             {ArrivalKind::single_offer, ArrivalKind::deterministic,
              ArrivalKind::assortment},
             "conservative");
  RunResult res;
  prepare(setup, arrivals, res);
  auto score = [&](std::size_t i, std::size_t j) {
    const PriceSet& ps = setup.items[i].prices;
    if (j + 1 != ps.size()) return kNotOffered;
    const double w = res.sold[i] / static_cast<double>(setup.items[i].inventory);
    return ps[j] * balancing_discount(w);
  };
  run_index_policy(setup, arrivals, seed, choice, res, score,
                   [](std::size_t, std::size_t, std::size_t) {});
  return res;
}

RunResult run_balance_fractional(const Setup& setup, const ArrivalSequence& arrivals,
                                 std::uint64_t seed) {
  check_kind(arrivals, {ArrivalKind::fractional}, "fractional balance");
  RunResult res;
  prepare(setup, arrivals, res);
  const std::size_t n = setup.size();
  std::vector<ValueFunction> vfs;
  for (const Item& it : setup.items) vfs.push_back(build_value_function(it.prices));
  std::vector<double> w(n, 0.0);
  Rng customers(seed, Stream::customer);

  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    const Arrival& a = arrivals.arrivals[t];
    customers.uniform();
    ++res.decisions;
    Candidate best;
    for (std::size_t i = 0; i < std::min(n, a.probs.size()); ++i) {
      if (w[i] >= 1.0) continue;
      const double bid = vfs[i](w[i]);
      for (std::size_t j = a.probs[i].size(); j-- > 0;) {
        const double p = a.probs[i][j];
        if (p > 0.0) best.consider(i, j, p, p * (setup.items[i].prices[j] - bid));
      }
    }
    if (!best.found) continue;
    ++res.offers;
    const std::size_t i = best.item;
    const double k = static_cast<double>(setup.items[i].inventory);
    double p = best.probability;
    if (w[i] + p / k > 1.0) {
      p = (1.0 - w[i]) * k;
      ++res.truncations;
      w[i] = 1.0;
    } else {
      w[i] += p / k;
    }
    const double paid = p * setup.items[i].prices[best.price_index];
    res.revenue += paid;
    res.sold[i] = w[i] * k;
    res.sales.push_back({t, i, best.price_index, paid, best.value / best.probability});
  }
  if (res.truncations > 0) {
    res.warnings.push_back(std::to_string(res.truncations) +
                           " bids truncated at capacity");
  }
  return res;
}

RunResult run_balance_assortment(const Setup& setup, const ArrivalSequence& arrivals,
                                 const MnlModel& model, const AssortmentFamily& family,
                                 std::uint64_t seed, PhiMode phi) {
  check_kind(arrivals, {ArrivalKind::assortment}, "assortment balance");
  BalanceOptions opts;
  opts.phi = phi;
  return run_balance(setup, arrivals, seed, opts, ChoiceContext{&model, family});
}

namespace {

constexpr double kBidTieBreak = 1e-9;

// Shared driver of the bid-price policy and its hybrid (gamma > 0).
RunResult run_forecasting(const Setup& setup, const ArrivalSequence& arrivals,
                          const ChoiceContext& choice, const Forecast& forecast,
                          const BidPriceOptions& options, double gamma,
                          std::uint64_t seed) {
  check_kind(arrivals, {ArrivalKind::assortment}, "bid-price");
  const MnlModel& model = require_model(choice);
  if (forecast.shares.size() != model.type_count()) {
    throw ValidationError("forecast shares do not match the choice model");
  }
  if (options.resolve_every == 0) throw ValidationError("resolve_every must be positive");
  RunResult res;
  prepare(setup, arrivals, res);
  const std::size_t n = setup.size();
  const std::size_t P = model.product_count();
  const std::vector<double> prices = product_prices(setup, model);

  std::vector<ValueFunction> vfs;
  if (gamma > 0.0) {
    for (const Item& it : setup.items) vfs.push_back(build_value_function(it.prices));
  }

  std::vector<double> y(n, 0.0);
  std::vector<double> seen(model.type_count(), 0.0);
  std::vector<double> net(P), pseudo(P);
  std::vector<char> mask(P);
  Rng customers(seed, Stream::customer);
  bool clamp_warned = false;

  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    const Arrival& a = arrivals.arrivals[t];
    const double u = customers.uniform();
    ++res.decisions;

    const bool resolve = options.mode == ForecastMode::one_shot
                             ? t == 0
                             : t % options.resolve_every == 0;
    if (resolve) {
      const RemainingEstimate est =
          forecast_remaining(options.mode, forecast, arrivals, t, seen);
      if (est.clamped && !clamp_warned) {
        res.warnings.push_back("negative remaining-customer forecast clamped to 0");
        clamp_warned = true;
      }
      ChoiceLpOptions lp_opts;
      lp_opts.family = choice.family;
      lp_opts.capacities.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        lp_opts.capacities[i] = static_cast<double>(setup.items[i].inventory) - res.sold[i];
      }
      y = bid_prices(solve_choice_lp(setup, est.counts, model, lp_opts));
      ++res.lp_solves;
    }
    seen[a.customer_type] += 1.0;

    for (std::size_t p = 0; p < P; ++p) {
      const std::size_t i = model.products()[p].item;
      mask[p] = available(setup, res, i) ? 1 : 0;
      // Fares equal to the bid price still sell; the dual of a binding row
      // often sits exactly on a fare.
      net[p] = prices[p] - y[i] + kBidTieBreak * prices[p];
    }
    AssortmentChoice offer =
        optimize_assortment(model, a.customer_type, net, choice.family, mask);
    if (gamma > 0.0) {
      for (std::size_t p = 0; p < P; ++p) {
        const std::size_t i = model.products()[p].item;
        const double w = res.sold[i] / static_cast<double>(setup.items[i].inventory);
        pseudo[p] = prices[p] - vfs[i](std::min(1.0, w));
      }
      const AssortmentChoice ours =
          optimize_assortment(model, a.customer_type, pseudo, choice.family, mask);
      const double fcst = assortment_value(model, a.customer_type, offer.products, pseudo);
      if (fcst < ours.value / gamma) {
        offer = ours;
        ++res.overrides;
      }
    }
    if (offer.products.empty()) continue;
    ++res.offers;
    const std::optional<std::size_t> bought =
        sample_choice(model, a.customer_type, offer.products, u);
    if (!bought) continue;
    const Product& prod = model.products()[*bought];
    res.revenue += prices[*bought];
    res.sold[prod.item] += 1.0;
    res.sales.push_back({t, prod.item, prod.price_index, prices[*bought], net[*bought]});
  }
  return res;
}

}  // namespace

RunResult run_bidprice(const Setup& setup, const ArrivalSequence& arrivals,
                       const ChoiceContext& choice, const Forecast& forecast,
                       const BidPriceOptions& options, std::uint64_t seed) {
  return run_forecasting(setup, arrivals, choice, forecast, options, 0.0, seed);
}

RunResult run_hybrid(const Setup& setup, const ArrivalSequence& arrivals,
                     const ChoiceContext& choice, const Forecast& forecast,
                     const BidPriceOptions& base, double gamma, std::uint64_t seed) {
  if (!(gamma > 1.0)) throw ValidationError("hybrid gamma must exceed 1");
  return run_forecasting(setup, arrivals, choice, forecast, base, gamma, seed);
}

}  // namespace multiprice
