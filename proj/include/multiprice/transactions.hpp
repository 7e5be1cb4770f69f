#pragma once

#include <chrono>
#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "multiprice/instance.hpp"

namespace multiprice {

/// One booking. Dates are ISO (YYYY-MM-DD) in the CSV.
struct TransactionRecord {
  std::chrono::sys_days occupancy_date;  // first night
  std::chrono::sys_days booking_date;
  int nights = 1;
  std::size_t room = 0;  // King, Queen, Suite, TwoDouble
  std::size_t fare = 0;  // 0 low, 1 high
  bool group = false;
  bool cro = false;
  bool vip = false;

  std::size_t customer_type() const {
    return 4 * static_cast<std::size_t>(group) + 2 * static_cast<std::size_t>(cro) +
           static_cast<std::size_t>(vip);
  }
};

/// Reads the CSV (header: occupancy_date,booking_date,nights,room_category,
/// fare_class,party_size_gt1,channel_cro,vip). Throws ValidationError naming
/// the offending line.
std::vector<TransactionRecord> parse_transactions(std::istream& in);

struct DatedArrivals {
  std::string date;
  ArrivalSequence arrivals;
};

/// One assortment arrival sequence per occupied night, sorted by date. A
/// stay of several nights contributes one arrival to each night. Arrivals
/// are ordered by booking date and each is repeated `replication` times.
std::vector<DatedArrivals> ingest_transactions(const std::vector<TransactionRecord>& records,
                                               std::size_t replication = 1);
std::vector<DatedArrivals> ingest_transactions(std::istream& in,
                                               std::size_t replication = 1);

std::string format_date(std::chrono::sys_days day);

}  // namespace multiprice
