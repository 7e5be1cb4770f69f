#include "multiprice/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <thread>

#include "multiprice/errors.hpp"
#include "multiprice/lp.hpp"
#include "multiprice/rng.hpp"

namespace multiprice {

namespace {

struct DayOutcome {
  bool usable = false;
  std::vector<double> ratio;     // per policy, mean over trials
  std::vector<double> override;  // per policy, mean over trials
  std::vector<std::size_t> failures;
  std::vector<std::string> errors;  // "policy: message"
};

struct DayInput {
  const ArrivalSequence* arrivals;
  std::vector<double> type_counts;
  Forecast forecast;
};

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stdev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

const PolicySummary& HotelReport::find(std::size_t row, const std::string& label) const {
  for (const PolicySummary& p : rows.at(row).policies) {
    if (p.label == label) return p;
  }
  throw ValidationError("report has no policy '" + label + "'");
}

HotelReport run_hotel_experiment(const HotelExperimentConfig& config) {
  if (config.trials < 1) throw ValidationError("trials must be at least 1");
  if (config.policies.empty()) throw ValidationError("no policies to run");
  HotelReport report;
  const std::size_t P = config.policies.size();

  for (double lf : config.loading_factors) {
    if (!(lf > 0.0)) throw ValidationError("loading factor must be positive");
    HotelConfig hc = config.hotel;
    hc.loading_factor = lf;
    hc.fare_differentiation = config.fare_differentiation;
    hc.seed = config.seed;

    HotelEnsemble ens;
    std::vector<DayInput> inputs;
    if (config.transactions) {
      const auto& nights = *config.transactions;
      double total = 0.0;
      for (const DatedArrivals& d : nights) total += static_cast<double>(d.arrivals.size());
      const double mean = nights.empty() ? 0.0 : total / static_cast<double>(nights.size());
      if (nights.empty() || mean <= 0.0) throw ValidationError("transactions contain no arrivals");
      ens.setup = hotel_setup(mean / lf, config.fare_differentiation);
      ens.model = hotel_model(config.fare_differentiation);
      ens.curve = hc.curve;
      for (const DatedArrivals& d : nights) {
        Forecast f;
        f.curve = hc.curve;
        f.expected_total = mean;
        for (const CustomerType& t : ens.model.types()) f.shares.push_back(t.share);
        inputs.push_back({&d.arrivals, true_remaining(d.arrivals, 0, ens.model.type_count()),
                          std::move(f)});
      }
    } else {
      ens = generate_hotel_ensemble(hc);
      for (std::size_t d = 0; d < ens.days.size(); ++d) {
        inputs.push_back({&ens.days[d].arrivals, ens.days[d].type_counts, ens.forecast(d)});
      }
    }

    std::vector<DayOutcome> outcomes(inputs.size());
    parallel_for(inputs.size(), config.threads, [&](std::size_t d) {
      DayOutcome& out = outcomes[d];
      out.ratio.assign(P, 0.0);
      out.override.assign(P, 0.0);
      out.failures.assign(P, 0);
      const DayInput& in = inputs[d];
      const double opt = solve_choice_lp(ens.setup, in.type_counts, ens.model).objective;
      if (!(opt > 0.0)) return;
      out.usable = true;
      PolicyContext ctx{{&ens.model, AssortmentFamily::unconstrained()}, &in.forecast};
      for (std::size_t p = 0; p < P; ++p) {
        double sum = 0.0, overrides = 0.0;
        std::size_t ok = 0;
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
          const std::uint64_t seed =
              derive_seed(config.seed, Stream::customer, d * config.trials + trial);
          try {
            const RunResult r = run_policy(config.policies[p], ens.setup, *in.arrivals, seed, ctx);
            sum += r.revenue / opt;
            overrides += r.override_fraction();
            ++ok;
          } catch (const Error& e) {
            ++out.failures[p];
            out.errors.push_back(policy_label(config.policies[p]) + ": " + e.what());
          }
        }
        if (ok > 0) {
          out.ratio[p] = sum / static_cast<double>(ok);
          out.override[p] = overrides / static_cast<double>(ok);
        }
      }
    });

    LoadingResult row;
    row.loading_factor = lf;
    row.fare_differentiation = config.fare_differentiation;
    for (std::size_t p = 0; p < P; ++p) {
      PolicySummary s;
      s.label = policy_label(config.policies[p]);
      std::vector<double> ratios, overrides;
      for (const DayOutcome& o : outcomes) {
        if (!o.usable) continue;
        s.failures += o.failures[p];
        if (o.failures[p] == config.trials) continue;
        ratios.push_back(o.ratio[p]);
        overrides.push_back(o.override[p]);
      }
      for (const DayOutcome& o : outcomes) {
        for (const std::string& e : o.errors) {
          if (e.rfind(s.label + ": ", 0) == 0) s.errors.push_back(e);
        }
      }
      s.mean = mean_of(ratios);
      s.stdev = stdev_of(ratios);
      s.override_fraction = mean_of(overrides);
      s.max_ratio = ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
      row.policies.push_back(std::move(s));
    }
    row.days = static_cast<std::size_t>(
        std::count_if(outcomes.begin(), outcomes.end(), [](const DayOutcome& o) { return o.usable; }));
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_table_csv(std::ostream& out, const HotelReport& report) {
  out << kCsvVersion << "\n";
  out << "loading_factor,variant,policy,mean,stdev,override_fraction,days,failures\n";
  out << std::setprecision(6) << std::fixed;
  for (const LoadingResult& row : report.rows) {
    for (const PolicySummary& p : row.policies) {
      out << std::setprecision(2) << row.loading_factor << std::setprecision(6) << ","
          << (row.fare_differentiation ? "fare_diff" : "base") << "," << p.label << ","
          << p.mean << "," << p.stdev << "," << p.override_fraction << "," << row.days
          << "," << p.failures << "\n";
    }
  }
}

void write_figure_csv(std::ostream& out, const HotelReport& report) {
  out << kCsvVersion << "\n";
  out << "loading_factor";
  if (!report.rows.empty()) {
    for (const PolicySummary& p : report.rows.front().policies) out << "," << p.label;
  }
  out << "\n" << std::fixed;
  for (const LoadingResult& row : report.rows) {
    out << std::setprecision(2) << row.loading_factor << std::setprecision(6);
    for (const PolicySummary& p : row.policies) out << "," << p.mean;
    out << "\n";
  }
}

}  // namespace multiprice
