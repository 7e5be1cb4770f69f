#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "multiprice/choice.hpp"
#include "multiprice/forecast.hpp"
#include "multiprice/instance.hpp"

namespace multiprice {

/// Room categories in catalog order.
enum HotelRoom : std::size_t { king = 0, queen = 1, suite = 2, two_double = 3 };

inline constexpr std::array<double, 4> kHotelLowFares = {307.0, 304.0, 384.0, 306.0};
inline constexpr std::array<double, 4> kHotelHighFares = {361.0, 361.0, 496.0, 342.0};
inline constexpr std::array<double, 4> kHotelInventoryShares = {0.52, 0.15, 0.13, 0.20};
inline constexpr std::array<double, 8> kHotelTypeShares = {0.16, 0.03, 0.28, 0.09,
                                                           0.19, 0.04, 0.18, 0.03};

/// Eight products (four rooms at low fare, then the same four at high fare)
/// and eight customer types indexed 4*group + 2*cro + vip. The fare
/// differentiation variant raises every no-purchase utility by 2.
MnlModel hotel_model(bool fare_differentiation = false);

/// Four rooms splitting `total_rooms` by the inventory shares; high fares
/// are doubled low fares in the fare differentiation variant.
Setup hotel_setup(double total_rooms, bool fare_differentiation = false);

struct HotelConfig {
  double loading_factor = 1.4;
  double mean_daily_arrivals = 1340.0;
  std::size_t days = 35;
  bool fare_differentiation = false;
  // Relative demand Sunday..Saturday; rescaled to mean 1.
  std::array<double, 7> weekday_factors = {1.2, 1.2, 1.0, 0.95, 0.9, 0.85, 0.9};
  double day_noise = 0.15;          // sd of the log demand shock
  double mix_concentration = 60.0;  // Dirichlet type mix; 0 uses the shares as is
  double timing_noise = 0.3;        // sd of the log scale applied to a day's lead times
  BookingCurve curve;
  std::uint64_t seed = 1;
};

struct HotelDay {
  std::size_t weekday = 0;  // 0 = Sunday
  double expected_arrivals = 0.0;
  ArrivalSequence arrivals;  // assortment arrivals by descending lead time
  std::vector<double> type_counts;
};

struct HotelEnsemble {
  Setup setup;
  MnlModel model;
  std::vector<HotelDay> days;
  BookingCurve curve;

  /// Information available to forecasting policies for day d.
  Forecast forecast(std::size_t d) const;
};

/// Throws ValidationError for a nonpositive loading factor or arrival mean.
HotelEnsemble generate_hotel_ensemble(const HotelConfig& config);

}  // namespace multiprice
