#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "multiprice/instance.hpp"

namespace multiprice {

/// Cumulative share of bookings made by the time `days_before` days remain,
/// linear between points. Points need not be sorted; the curve is 0 at and
/// beyond the earliest point and 1 at day 0.
class BookingCurve {
 public:
  BookingCurve();  // (120, 0), (25, 0.5), (0, 1)
  explicit BookingCurve(std::vector<std::pair<double, double>> points);

  double fraction_booked(double days_before) const;
  /// Days before occupancy at which the cumulative share reaches u in [0,1].
  double days_at(double u) const;
  double horizon() const { return points_.front().first; }
  const std::vector<std::pair<double, double>>& points() const { return points_; }

 private:
  std::vector<std::pair<double, double>> points_;  // days descending
};

enum class ForecastMode { one_shot, resolving, learning, clairvoyant };

std::string to_string(ForecastMode mode);

/// What a forecaster knows before the booking horizon opens.
struct Forecast {
  BookingCurve curve;
  double expected_total = 0.0;
  std::vector<double> shares;  // aggregate type shares
  // Below this booked share the observed count is too noisy to scale up.
  double scale_threshold = 0.2;
};

struct RemainingEstimate {
  std::vector<double> counts;
  bool clamped = false;  // a negative estimate was raised to zero
};

/// Expected remaining customers of each type from arrival t onward.
/// `seen` holds the type counts of arrivals before t.
RemainingEstimate forecast_remaining(ForecastMode mode, const Forecast& forecast,
                                     const ArrivalSequence& arrivals, std::size_t t,
                                     const std::vector<double>& seen);

/// Type counts of arrivals t.. end.
std::vector<double> true_remaining(const ArrivalSequence& arrivals, std::size_t t,
                                   std::size_t type_count);

}  // namespace multiprice
