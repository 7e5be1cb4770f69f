#include "multiprice/transactions.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <sstream>

#include "multiprice/errors.hpp"

namespace multiprice {

namespace {

const std::array<std::string, 8> kColumns = {
    "occupancy_date", "booking_date", "nights",      "room_category",
    "fare_class",     "party_size_gt1", "channel_cro", "vip"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ValidationError("transactions line " + std::to_string(line) + ": " + what);
}

std::chrono::sys_days parse_date(const std::string& s, std::size_t line) {
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) {
    fail(line, "bad date '" + s + "'");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) fail(line, "invalid date '" + s + "'");
  return std::chrono::sys_days{ymd};
}

bool parse_flag(const std::string& s, std::size_t line, const char* column) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  fail(line, std::string(column) + " must be 0 or 1");
}

std::size_t parse_room(const std::string& s, std::size_t line) {
  static const std::array<std::string, 4> names = {"King", "Queen", "Suite", "TwoDouble"};
  for (std::size_t r = 0; r < names.size(); ++r) {
    if (s == names[r]) return r;
  }
  if (s == "2Double") return 3;
  fail(line, "unknown room category '" + s + "'");
}

std::size_t parse_fare(const std::string& s, std::size_t line) {
  if (s == "L" || s == "low") return 0;
  if (s == "H" || s == "high") return 1;
  fail(line, "fare class must be L or H");
}

}  // namespace

std::string format_date(std::chrono::sys_days day) {
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::vector<TransactionRecord> parse_transactions(std::istream& in) {
  std::vector<TransactionRecord> out;
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const std::vector<std::string> cells = split(text);
    if (!header) {
      if (cells.size() != kColumns.size() ||
          !std::equal(cells.begin(), cells.end(), kColumns.begin())) {
        fail(line, "expected header " + [] {
          std::string h;
          for (const auto& c : kColumns) h += (h.empty() ? "" : ",") + c;
          return h;
        }());
      }
      header = true;
      continue;
    }
    if (cells.size() != kColumns.size()) {
      fail(line, "expected 8 fields, got " + std::to_string(cells.size()));
    }
    TransactionRecord r;
    r.occupancy_date = parse_date(cells[0], line);
    r.booking_date = parse_date(cells[1], line);
    if (r.booking_date > r.occupancy_date) fail(line, "booking date after occupancy date");
    try {
      std::size_t used = 0;
      r.nights = std::stoi(cells[2], &used);
      if (used != cells[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail(line, "nights must be an integer");
    }
    if (r.nights < 1) fail(line, "nights must be at least 1");
    r.room = parse_room(cells[3], line);
    r.fare = parse_fare(cells[4], line);
    r.group = parse_flag(cells[5], line, "party_size_gt1");
    r.cro = parse_flag(cells[6], line, "channel_cro");
    r.vip = parse_flag(cells[7], line, "vip");
    out.push_back(r);
  }
  return out;
}

std::vector<DatedArrivals> ingest_transactions(const std::vector<TransactionRecord>& records,
                                               std::size_t replication) {
  if (replication < 1) throw ValidationError("replication must be at least 1");
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].booking_date < records[b].booking_date;
  });

  std::map<std::chrono::sys_days, ArrivalSequence> nights;
  for (std::size_t idx : order) {
    const TransactionRecord& r = records[idx];
    for (int night = 0; night < r.nights; ++night) {
      const std::chrono::sys_days date = r.occupancy_date + std::chrono::days{night};
      ArrivalSequence& seq = nights[date];
      seq.kind = ArrivalKind::assortment;
      Arrival a;
      a.customer_type = r.customer_type();
      a.days_before = static_cast<double>((date - r.booking_date).count());
      for (std::size_t c = 0; c < replication; ++c) seq.arrivals.push_back(a);
    }
  }
  std::vector<DatedArrivals> out;
  for (auto& [date, seq] : nights) out.push_back({format_date(date), std::move(seq)});
  return out;
}

std::vector<DatedArrivals> ingest_transactions(std::istream& in, std::size_t replication) {
  return ingest_transactions(parse_transactions(in), replication);
}

}  // namespace multiprice
