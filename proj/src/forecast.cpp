#include "multiprice/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multiprice/errors.hpp"

namespace multiprice {

BookingCurve::BookingCurve() : BookingCurve({{120.0, 0.0}, {25.0, 0.5}, {0.0, 1.0}}) {}

BookingCurve::BookingCurve(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  if (points_.size() < 2) throw ValidationError("booking curve needs two points");
  if (points_.back().first != 0.0 || points_.back().second != 1.0) {
    throw ValidationError("booking curve must reach 1 at day 0");
  }
  if (points_.front().second != 0.0) {
    throw ValidationError("booking curve must start at 0");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].first == points_[i - 1].first ||
        points_[i].second < points_[i - 1].second) {
      throw ValidationError("booking curve must be strictly dated and nondecreasing");
    }
  }
}

double BookingCurve::fraction_booked(double days_before) const {
  if (days_before >= points_.front().first) return 0.0;
  if (days_before <= 0.0) return 1.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto& [d1, f1] = points_[i];
    if (days_before >= d1) {
      const auto& [d0, f0] = points_[i - 1];
      return f0 + (f1 - f0) * (d0 - days_before) / (d0 - d1);
    }
  }
  return 1.0;
}

double BookingCurve::days_at(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto& [d0, f0] = points_[i - 1];
    const auto& [d1, f1] = points_[i];
    if (u <= f1 && f1 > f0) return d0 - (u - f0) / (f1 - f0) * (d0 - d1);
  }
  return 0.0;
}

std::string to_string(ForecastMode mode) {
  switch (mode) {
    case ForecastMode::one_shot: return "one_shot";
    case ForecastMode::resolving: return "resolving";
    case ForecastMode::learning: return "learning";
    case ForecastMode::clairvoyant: return "clairvoyant";
  }
  return "unknown";
}

std::vector<double> true_remaining(const ArrivalSequence& arrivals, std::size_t t,
                                   std::size_t type_count) {
  std::vector<double> counts(type_count, 0.0);
  for (std::size_t s = t; s < arrivals.size(); ++s) {
    counts.at(arrivals.arrivals[s].customer_type) += 1.0;
  }
  return counts;
}

RemainingEstimate forecast_remaining(ForecastMode mode, const Forecast& forecast,
                                     const ArrivalSequence& arrivals, std::size_t t,
                                     const std::vector<double>& seen) {
  const std::size_t types = forecast.shares.size();
  RemainingEstimate est;
  if (mode == ForecastMode::clairvoyant) {
    est.counts = true_remaining(arrivals, t, types);
    return est;
  }
  const double s = std::accumulate(seen.begin(), seen.end(), 0.0);
  const double days =
      t < arrivals.size() ? arrivals.arrivals[t].days_before : 0.0;
  const double booked = forecast.curve.fraction_booked(days);

  double total = 0.0;
  if (s == 0.0) {
    total = forecast.expected_total * (1.0 - booked);
  } else if (booked >= forecast.scale_threshold) {
    total = s / booked - s;
  } else {
    total = forecast.expected_total - s;
  }
  if (total < 0.0) {
    total = 0.0;
    est.clamped = true;
  }

  est.counts.resize(types);
  const bool empirical = mode == ForecastMode::learning && s > 0.0;
  for (std::size_t a = 0; a < types; ++a) {
    const double share = empirical ? seen[a] / s : forecast.shares[a];
    est.counts[a] = total * share;
  }
  return est;
}

}  // namespace multiprice
