#include "multiprice/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "multiprice/errors.hpp"

namespace multiprice {

namespace {

constexpr double kIntegerSnap = 1e-10;

void check_k(long k) {
  if (k < 1) throw DomainError("inventory k must be at least 1");
}

struct ScaledBorder {
  long floor_units;
  double fraction;
};

ScaledBorder scale_border(double border, long k) {
  const double scaled = border * static_cast<double>(k);
  const double nearest = std::nearbyint(scaled);
  if (std::abs(scaled - nearest) <= kIntegerSnap * std::max(1.0, scaled)) {
    return {static_cast<long>(nearest), 0.0};
  }
  const double fl = std::floor(scaled);
  return {static_cast<long>(fl), scaled - fl};
}

// Phi~ on the grid for a fixed set of border units.
std::vector<double> grid_values(const ValueFunction& vf, long k,
                                const std::vector<long>& units) {
  const std::size_t m = vf.alphas.size();
  const double dk = static_cast<double>(k);
  std::vector<double> grid(static_cast<std::size_t>(k) + 1, 0.0);
  double base = 0.0;
  for (std::size_t s = 0; s < m; ++s) {
    const double step = vf.prices[s] - vf.prices.below(s);
    const double denom = std::expm1(vf.alphas[s]);
    for (long n = units[s]; n < units[s + 1]; ++n) {
      grid[static_cast<std::size_t>(n)] =
          base + step * std::expm1(static_cast<double>(n - units[s]) / dk) / denom;
    }
    base += step * std::expm1(static_cast<double>(units[s + 1] - units[s]) / dk) /
            denom;
  }
  grid[static_cast<std::size_t>(k)] = base;
  return grid;
}

}  // namespace

std::vector<long> round_border_units(const ValueFunction& vf, long k,
                                     double w_seed) {
  check_k(k);
  if (!(w_seed >= 0.0 && w_seed < 1.0)) {
    throw DomainError("rounding seed must lie in [0,1)");
  }
  std::vector<long> units(vf.borders.size());
  for (std::size_t j = 0; j < vf.borders.size(); ++j) {
    const ScaledBorder sb = scale_border(vf.borders[j], k);
    units[j] = sb.floor_units + (w_seed < sb.fraction ? 1 : 0);
  }
  units.front() = 0;
  units.back() = k;
  return units;
}

std::vector<double> round_borders(const ValueFunction& vf, long k,
                                  double w_seed) {
  const std::vector<long> units = round_border_units(vf, k, w_seed);
  std::vector<double> out(units.size());
  for (std::size_t j = 0; j < units.size(); ++j) {
    out[j] = static_cast<double>(units[j]) / static_cast<double>(k);
  }
  return out;
}

PerturbedValueFunction build_perturbed(const ValueFunction& vf, long k,
                                       double w_seed) {
  PerturbedValueFunction p;
  p.k = k;
  p.seed = w_seed;
  p.border_units = round_border_units(vf, k, w_seed);
  p.grid = grid_values(vf, k, p.border_units);
  return p;
}

std::vector<double> border_fractions(const ValueFunction& vf, long k) {
  check_k(k);
  std::vector<double> out(vf.borders.size());
  for (std::size_t j = 0; j < vf.borders.size(); ++j) {
    out[j] = scale_border(vf.borders[j], k).fraction;
  }
  return out;
}

RandomizedProcedure rounding_procedure(const ValueFunction& vf, long k) {
  std::vector<double> cuts = border_fractions(vf, k);
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(1.0);

  RandomizedProcedure proc;
  proc.k = k;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    // The rounding is constant on [cuts[s], cuts[s+1]); use the left end.
    proc.configurations.push_back(
        {cuts[s + 1] - cuts[s], build_perturbed(vf, k, cuts[s])});
  }
  return proc;
}

RandomizedProcedure single_unit_procedure(const PriceSet& prices) {
  const std::vector<double> sigmas = solve_sigmas(prices);
  const std::size_t m = prices.size();
  RandomizedProcedure proc;
  proc.k = 1;
  for (std::size_t d = 0; d < m; ++d) {
    PerturbedValueFunction p;
    p.k = 1;
    p.border_units.assign(m + 1, 1);
    for (std::size_t j = 0; j <= d; ++j) p.border_units[j] = 0;
    p.grid = {0.0, prices[d] / sigmas[0]};
    proc.configurations.push_back({sigmas[d], std::move(p)});
  }
  return proc;
}

ConditionReport verify_conditions(const RandomizedProcedure& proc,
                                  const PriceSet& prices, double c) {
  if (!(c > 0.0)) throw DomainError("ratio c must be positive");
  double total = 0.0;
  for (const Configuration& cfg : proc.configurations) {
    if (cfg.probability < 0.0) {
      throw DomainError("configuration probabilities must be nonnegative");
    }
    total += cfg.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("configuration probabilities sum to " +
                      std::to_string(total) + ", not 1");
  }

  const std::size_t m = prices.size();
  const double dk = static_cast<double>(proc.k);
  ConditionReport rep;
  rep.optimality_slack = std::numeric_limits<double>::infinity();
  rep.max_c = std::numeric_limits<double>::infinity();
  std::vector<double> expected(m, 0.0);

  for (std::size_t d = 0; d < proc.configurations.size(); ++d) {
    const Configuration& cfg = proc.configurations[d];
    const PerturbedValueFunction& p = cfg.phi;
    for (std::size_t j = 0; j < m; ++j) {
      const long top = p.border_units[j + 1];
      const double at_top = p.at_units(top);
      expected[j] += cfg.probability * at_top;
      for (long n = 0; n < top; ++n) {
        const double lhs =
            dk * (p.at_units(n + 1) - p.at_units(n)) + at_top - p.at_units(n);
        const double slack = (prices[j] / c - lhs) / prices[j];
        if (slack < rep.optimality_slack) {
          rep.optimality_slack = slack;
          rep.worst_configuration = d;
          rep.worst_price = j;
          rep.worst_units = n;
        }
        if (lhs > 0.0) rep.max_c = std::min(rep.max_c, prices[j] / lhs);
      }
    }
  }

  rep.feasibility_slack = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    rep.feasibility_slack =
        std::min(rep.feasibility_slack, (expected[j] - prices[j]) / prices[j]);
  }
  rep.optimality_holds = rep.optimality_slack >= -1e-9;
  rep.feasibility_holds = rep.feasibility_slack >= -1e-9;
  rep.holds = rep.optimality_holds && rep.feasibility_holds;
  return rep;
}

double rounding_bound(double F, long k) {
  check_k(k);
  const double dk = static_cast<double>(k);
  return F / ((1.0 + dk) * std::expm1(1.0 / dk));
}

double single_price_bound(long k) {
  check_k(k);
  const double dk = static_cast<double>(k);
  return -std::expm1(-1.0) / ((1.0 + dk) * -std::expm1(-1.0 / dk));
}

double single_unit_bound(double G) { return G / 2.0; }

double certified_ratio(const ValueFunction& vf, long k) {
  double best = rounding_bound(vf.F, k);
  if (vf.alphas.size() == 1) best = std::max(best, single_price_bound(k));
  if (k == 1) best = std::max(best, single_unit_bound(vf.G));
  return best;
}

}  // namespace multiprice
