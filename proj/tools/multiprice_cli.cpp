// Command-line front end. Exit codes: 0 ok, 2 invalid input, 3 solver limit.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "multiprice/adversary.hpp"
#include "multiprice/errors.hpp"
#include "multiprice/experiment.hpp"
#include "multiprice/io.hpp"
#include "multiprice/lp.hpp"
#include "multiprice/perturb.hpp"
#include "multiprice/policy.hpp"
#include "multiprice/rng.hpp"

using namespace multiprice;
using nlohmann::json;

namespace {

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ValidationError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

double lp_bound(const InstanceFile& inst) {
  if (inst.arrivals.kind == ArrivalKind::assortment) {
    const auto counts = true_remaining(inst.arrivals, 0, inst.model->type_count());
    return solve_choice_lp(inst.setup, counts, *inst.model).objective;
  }
  return solve_primal(inst.setup, inst.arrivals).objective;
}

int run_valuefn(const std::vector<double>& prices, std::size_t grid, const std::string& out) {
  const ValueFunction vf = build_value_function(canonicalize_prices(prices));
  std::cout << to_json(vf).dump(2) << "\n";
  if (grid > 0) {
    Output o(out);
    std::ostream& s = o.stream();
    s << kCsvVersion << "\nw,phi\n" << std::setprecision(12);
    for (std::size_t g = 0; g <= grid; ++g) {
      const double w = static_cast<double>(g) / static_cast<double>(grid);
      s << w << "," << vf(w) << "\n";
    }
  }
  return 0;
}

int run_perturb_verify(const std::vector<double>& prices, long k, double c,
                       const std::string& procedure) {
  const PriceSet ps = canonicalize_prices(prices);
  const ValueFunction vf = build_value_function(ps);
  RandomizedProcedure proc;
  double certified = 0.0;
  if (procedure == "single_unit") {
    if (k != 1) throw ValidationError("the single_unit procedure needs k = 1");
    proc = single_unit_procedure(ps);
    certified = single_unit_bound(vf.G);
  } else {
    proc = rounding_procedure(vf, k);
    certified = ps.size() == 1 ? single_price_bound(k) : rounding_bound(vf.F, k);
  }
  if (!(c > 0.0)) c = certified;
  json j = to_json(verify_conditions(proc, ps, c));
  j["c"] = c;
  j["certified_c"] = certified;
  j["k"] = k;
  j["procedure"] = procedure;
  j["configurations"] = proc.configurations.size();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_simulate(const std::string& config_path, std::uint64_t seed_flag, bool seed_set,
                 std::size_t trials_flag, bool trials_set, const std::string& out) {
  const json cfg = read_json_file(config_path);
  InstanceFile inst = cfg.contains("instance_file")
                          ? load_instance(cfg.at("instance_file").get<std::string>())
                          : parse_instance(cfg.at("instance"));
  std::vector<PolicySpec> policies;
  for (const json& p : cfg.value("policies", json::array({"balance"}))) {
    PolicySpec spec = parse_policy(p.get<std::string>());
    if (cfg.contains("resolve_every")) spec.resolve_every = cfg.at("resolve_every").get<std::size_t>();
    policies.push_back(spec);
  }
  const std::size_t trials = trials_set ? trials_flag : cfg.value("trials", std::size_t{1});
  const std::uint64_t seed = seed_set ? seed_flag : cfg.value("seed", std::uint64_t{1});
  if (trials < 1) throw ValidationError("trials must be at least 1");

  const double bound = lp_bound(inst);
  PolicyContext ctx;
  if (inst.model) ctx.choice = {&*inst.model, AssortmentFamily::unconstrained()};
  if (cfg.value("family", std::string("unconstrained")) == "one_price_per_item") {
    ctx.choice.family = AssortmentFamily::one_price_per_item();
  }
  if (inst.forecast) ctx.forecast = &*inst.forecast;

  Output o(out);
  std::ostream& s = o.stream();
  s << kCsvVersion << "\npolicy,trial,revenue,ratio_vs_lp,override_fraction,runtime_ms\n";
  s << std::setprecision(10);
  for (const PolicySpec& spec : policies) {
    for (std::size_t t = 0; t < trials; ++t) {
      const auto start = std::chrono::steady_clock::now();
      const RunResult r = run_policy(spec, inst.setup, inst.arrivals,
                                     derive_seed(seed, Stream::customer, t), ctx);
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start).count();
      s << spec.name << "," << t << "," << r.revenue << ","
        << (bound > 0.0 ? r.revenue / bound : 0.0) << "," << r.override_fraction() << ","
        << std::setprecision(4) << ms << std::setprecision(10) << "\n";
    }
  }
  return 0;
}

int run_lp_bound(const std::string& path) {
  const InstanceFile inst = load_instance(path);
  LpSolution sol;
  if (inst.arrivals.kind == ArrivalKind::assortment) {
    sol = solve_choice_lp(inst.setup, true_remaining(inst.arrivals, 0, inst.model->type_count()),
                          *inst.model);
  } else {
    sol = solve_primal(inst.setup, inst.arrivals);
  }
  std::cout << to_json(sol).dump(2) << "\n";
  return 0;
}

int run_adversary(const std::vector<double>& prices, std::size_t n, long k, std::size_t trials,
                  std::uint64_t seed, const std::vector<std::string>& policy_text,
                  const std::string& out) {
  const PriceSet ps = canonicalize_prices(prices);
  std::vector<PolicySpec> policies;
  for (const std::string& p : policy_text) policies.push_back(parse_policy(p));
  const AnalyticBounds ab = analytic_bounds(ps, n, k);

  Output o(out);
  std::ostream& s = o.stream();
  s << kCsvVersion << "\npolicy,trial,revenue,opt,ratio\n" << std::setprecision(10);
  for (std::size_t t = 0; t < trials; ++t) {
    const AdversarialInstance inst =
        build_instance(ps, n, k, derive_seed(seed, Stream::permutation, t));
    for (const PolicySpec& spec : policies) {
      const RunResult r = run_policy(spec, inst.setup, inst.arrivals,
                                     derive_seed(seed, Stream::customer, t));
      s << spec.name << "," << t << "," << r.revenue << "," << inst.opt << ","
        << r.revenue / inst.opt << "\n";
    }
  }
  s << "analytic_bound,-," << ab.online_ub << "," << ab.opt << "," << ab.ratio << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-price online allocation: value functions, policies and bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  std::size_t trials = 1;
  std::string out;
  auto* seed_opt = app.add_option("--seed", seed, "Base random seed");
  auto* trials_opt = app.add_option("--trials", trials, "Number of trials");
  app.add_option("--out", out, "Output file (default stdout)");

  std::vector<double> prices;
  std::size_t grid = 0;
  auto* valuefn = app.add_subcommand("valuefn", "Booking limits, F, G and an optional grid of Phi");
  valuefn->add_option("prices", prices, "Prices")->required()->delimiter(',');
  valuefn->add_option("--grid", grid, "Sample Phi on N+1 points as CSV");

  auto* perturb = app.add_subcommand("perturb", "Perturbed value functions");
  perturb->require_subcommand(1);
  perturb->fallthrough();
  auto* verify = perturb->add_subcommand("verify", "Check the marginal and feasibility conditions");
  long k = 1;
  double c = 0.0;
  std::string procedure = "rounding";
  verify->add_option("prices", prices, "Prices")->required()->delimiter(',');
  verify->add_option("--k", k, "Inventory")->required();
  verify->add_option("--c", c, "Ratio to check (default: certified bound)");
  verify->add_option("--procedure", procedure, "rounding or single_unit")
      ->check(CLI::IsMember({"rounding", "single_unit"}));

  std::string config;
  auto* simulate = app.add_subcommand("simulate", "Run policies on an instance file");
  simulate->add_option("config", config, "Simulation config JSON")->required();

  std::string instance;
  auto* lpb = app.add_subcommand("lp-bound", "Hindsight or choice LP bound of an instance");
  lpb->add_option("instance", instance, "Instance JSON")->required();

  std::size_t n = 200;
  std::vector<std::string> policies = {"ranking", "balance", "gnr", "myopic"};
  auto* adv = app.add_subcommand("adversary", "Hard randomized instance");
  adv->add_option("prices", prices, "Prices")->required()->delimiter(',');
  adv->add_option("--n", n, "Items");
  adv->add_option("--k", k, "Inventory per item");
  adv->add_option("--policies", policies, "Policies")->delimiter(',');

  std::vector<double> loading = {1.4, 1.6, 1.8};
  bool fare_diff = false;
  std::size_t days = 35;
  double arrivals = 1340.0;
  std::string table_out, figure_out, transactions;
  std::size_t replicate = 1;
  std::vector<std::string> hotel_policy_text;
  auto* hotel = app.add_subcommand("hotel-sim", "Hotel experiment (table and figure CSVs)");
  hotel->add_option("--loading-factors", loading, "Loading factors")->delimiter(',');
  hotel->add_flag("--fare-diff", fare_diff, "High fares at twice the low fares");
  hotel->add_option("--days", days, "Synthetic days");
  hotel->add_option("--arrivals", arrivals, "Mean daily arrivals");
  hotel->add_option("--table", table_out, "Table CSV path (default: --out or stdout)");
  hotel->add_option("--figure", figure_out, "Figure CSV path");
  hotel->add_option("--transactions", transactions, "Transaction CSV replacing synthetic days");
  hotel->add_option("--replicate", replicate, "Repeat each transaction this many times");
  hotel->add_option("--policies", hotel_policy_text, "Policies (default: the ten hotel policies)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*valuefn) return run_valuefn(prices, grid, out);
    if (*verify) return run_perturb_verify(prices, k, c, procedure);
    if (*simulate) {
      return run_simulate(config, seed, seed_opt->count() > 0, trials, trials_opt->count() > 0, out);
    }
    if (*lpb) return run_lp_bound(instance);
    if (*adv) {
      return run_adversary(prices, n, k, trials_opt->count() > 0 ? trials : 100, seed, policies, out);
    }
    if (*hotel) {
      HotelExperimentConfig cfg;
      cfg.loading_factors = loading;
      cfg.fare_differentiation = fare_diff;
      cfg.hotel.days = days;
      cfg.hotel.mean_daily_arrivals = arrivals;
      cfg.trials = trials_opt->count() > 0 ? trials : 10;
      cfg.seed = seed;
      if (!hotel_policy_text.empty()) {
        cfg.policies.clear();
        for (const std::string& p : hotel_policy_text) cfg.policies.push_back(parse_policy(p));
      }
      if (!transactions.empty()) {
        std::ifstream in(transactions);
        if (!in) throw ValidationError("cannot open '" + transactions + "'");
        cfg.transactions = ingest_transactions(in, replicate);
      }
      const HotelReport report = run_hotel_experiment(cfg);
      Output table(table_out.empty() ? out : table_out);
      write_table_csv(table.stream(), report);
      if (!figure_out.empty()) {
        Output figure(figure_out);
        write_figure_csv(figure.stream(), report);
      }
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverLimit& e) {
    std::cerr << "solver limit: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
