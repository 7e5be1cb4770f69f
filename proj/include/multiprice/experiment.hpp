#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "multiprice/hotel.hpp"
#include "multiprice/policy.hpp"
#include "multiprice/transactions.hpp"

namespace multiprice {

/// Header comment written first in every CSV this library emits.
inline constexpr const char* kCsvVersion = "# multiprice-csv v1";

struct HotelExperimentConfig {
  HotelConfig hotel;  // loading_factor and fare_differentiation are overridden per row
  std::vector<double> loading_factors = {1.4, 1.6, 1.8};
  bool fare_differentiation = false;
  std::vector<PolicySpec> policies = hotel_policies();
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 uses the hardware concurrency
  // When set, these nights replace the synthetic days.
  std::optional<std::vector<DatedArrivals>> transactions;
};

struct PolicySummary {
  std::string label;
  double mean = 0.0;      // mean over days of the per-day mean ratio
  double stdev = 0.0;     // sample standard deviation over days
  double override_fraction = 0.0;
  double max_ratio = 0.0;
  std::size_t failures = 0;
  std::vector<std::string> errors;
};

struct LoadingResult {
  double loading_factor = 0.0;
  bool fare_differentiation = false;
  std::size_t days = 0;
  std::vector<PolicySummary> policies;
};

struct HotelReport {
  std::vector<LoadingResult> rows;
  const PolicySummary& find(std::size_t row, const std::string& label) const;
};

/// Runs every policy on every day and trial with common random numbers and
/// reports revenue as a fraction of the day's choice-LP bound. The result
/// does not depend on the thread count.
HotelReport run_hotel_experiment(const HotelExperimentConfig& config);

/// One row per (loading factor, policy) with mean and stdev.
void write_table_csv(std::ostream& out, const HotelReport& report);
/// One row per loading factor, one column per policy mean.
void write_figure_csv(std::ostream& out, const HotelReport& report);

double mean_of(const std::vector<double>& xs);
double stdev_of(const std::vector<double>& xs);

}  // namespace multiprice
