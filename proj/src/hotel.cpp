#include "multiprice/hotel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "multiprice/errors.hpp"
#include "multiprice/rng.hpp"

namespace multiprice {

namespace {

constexpr double kNever = -std::numeric_limits<double>::infinity();

constexpr std::array<const char*, 4> kRoomNames = {"King", "Queen", "Suite", "TwoDouble"};

// Rows follow the type index; columns KingL QueenL SuiteL 2DoubleL KingH
// QueenH SuiteH 2DoubleH.
const std::array<std::array<double, 8>, 8> kUtilities = {{
    {-0.36, -1.22, -2.56, -1.04, 0.0, -0.23, -2.25, -1.80},
    {-0.82, -1.98, -2.16, -2.09, 0.0, -1.02, -1.45, -1.82},
    {-1.67, kNever, -3.78, -2.71, 0.0, -1.33, -1.80, -1.58},
    {-2.13, kNever, -3.38, -3.76, 0.0, -2.12, -1.00, -1.59},
    {-0.54, -0.97, -2.26, 0.0, -0.91, -1.47, -2.78, -1.41},
    {-0.09, -0.82, -0.95, -0.14, 0.0, -1.35, -1.07, -0.51},
    {-0.93, kNever, -2.56, -0.76, 0.0, -1.66, -1.41, -0.27},
    {-1.39, kNever, -2.16, -1.80, 0.0, -2.45, -0.61, -0.28},
}};

}  // namespace

MnlModel hotel_model(bool fare_differentiation) {
  std::vector<Product> products;
  for (std::size_t fare = 0; fare < 2; ++fare) {
    for (std::size_t room = 0; room < 4; ++room) {
      products.push_back({room, fare, std::string(kRoomNames[room]) + (fare == 0 ? "L" : "H")});
    }
  }
  std::vector<CustomerType> types;
  for (std::size_t a = 0; a < 8; ++a) {
    CustomerType t;
    t.name = std::string(a & 4 ? "group" : "single") + (a & 2 ? "-cro" : "-web") +
             (a & 1 ? "-vip" : "");
    t.share = kHotelTypeShares[a];
    t.utilities.assign(kUtilities[a].begin(), kUtilities[a].end());
    t.no_purchase = fare_differentiation ? 2.0 : 0.0;
    types.push_back(std::move(t));
  }
  return MnlModel(std::move(products), std::move(types));
}

Setup hotel_setup(double total_rooms, bool fare_differentiation) {
  if (!(total_rooms > 0.0)) throw ValidationError("hotel needs a positive room count");
  Setup s;
  for (std::size_t room = 0; room < 4; ++room) {
    const double low = kHotelLowFares[room];
    const double high = fare_differentiation ? 2.0 * low : kHotelHighFares[room];
    const long inv = std::max(1L, static_cast<long>(std::nearbyint(
                                      total_rooms * kHotelInventoryShares[room])));
    s.items.push_back({inv, PriceSet({low, high})});
  }
  return s;
}

Forecast HotelEnsemble::forecast(std::size_t d) const {
  Forecast f;
  f.curve = curve;
  f.expected_total = days.at(d).expected_arrivals;
  for (const CustomerType& t : model.types()) f.shares.push_back(t.share);
  return f;
}

HotelEnsemble generate_hotel_ensemble(const HotelConfig& config) {
  if (!(config.loading_factor > 0.0)) {
    throw ValidationError("loading factor must be positive");
  }
  if (!(config.mean_daily_arrivals > 0.0)) {
    throw ValidationError("mean daily arrivals must be positive");
  }
  std::array<double, 7> weekday = config.weekday_factors;
  const double mean_factor = std::accumulate(weekday.begin(), weekday.end(), 0.0) / 7.0;
  for (double& f : weekday) {
    if (!(f > 0.0)) throw ValidationError("weekday factors must be positive");
    f /= mean_factor;
  }

  HotelEnsemble ens{hotel_setup(config.mean_daily_arrivals / config.loading_factor,
                                config.fare_differentiation),
                    hotel_model(config.fare_differentiation),
                    {},
                    config.curve};
  const std::size_t A = ens.model.type_count();

  for (std::size_t d = 0; d < config.days; ++d) {
    Rng rng(config.seed, Stream::instance, d);
    HotelDay day;
    day.weekday = d % 7;
    day.expected_arrivals = config.mean_daily_arrivals * weekday[day.weekday];

    std::normal_distribution<double> shock(0.0, 1.0);
    const double sigma = config.day_noise;
    const double mean =
        day.expected_arrivals * std::exp(sigma * shock(rng) - 0.5 * sigma * sigma);
    const auto count = std::poisson_distribution<long>(mean)(rng);

    std::vector<double> mix(ens.model.types().size());
    for (std::size_t a = 0; a < A; ++a) mix[a] = ens.model.types()[a].share;
    if (config.mix_concentration > 0.0) {
      double total = 0.0;
      for (std::size_t a = 0; a < A; ++a) {
        mix[a] = std::gamma_distribution<double>(config.mix_concentration * mix[a], 1.0)(rng);
        total += mix[a];
      }
      for (double& x : mix) x /= total;
    }
    // Some days book earlier than the curve, some later.
    const double timing = std::exp(config.timing_noise * shock(rng));
    std::vector<double> cdf(A);
    std::partial_sum(mix.begin(), mix.end(), cdf.begin());

    day.arrivals.kind = ArrivalKind::assortment;
    day.type_counts.assign(A, 0.0);
    for (long c = 0; c < count; ++c) {
      Arrival a;
      const double u = rng.uniform() * cdf.back();
      a.customer_type = static_cast<std::size_t>(
          std::min<std::ptrdiff_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(),
                                   static_cast<std::ptrdiff_t>(A - 1)));
      a.days_before =
          std::min(config.curve.horizon(), timing * config.curve.days_at(rng.uniform()));
      day.type_counts[a.customer_type] += 1.0;
      day.arrivals.arrivals.push_back(std::move(a));
    }
    std::stable_sort(day.arrivals.arrivals.begin(), day.arrivals.arrivals.end(),
                     [](const Arrival& x, const Arrival& y) {
                       return x.days_before > y.days_before;
                     });
    ens.days.push_back(std::move(day));
  }
  return ens;
}

}  // namespace multiprice
