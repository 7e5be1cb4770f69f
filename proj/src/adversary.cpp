#include "multiprice/adversary.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "multiprice/errors.hpp"
#include "multiprice/rng.hpp"

namespace multiprice {

PhaseWeights solve_betas(const PriceSet& prices) {
  const std::vector<double> alphas = solve_alphas(prices);
  const std::size_t m = prices.size();
  PhaseWeights w;
  w.B.assign(m + 1, 0.0);
  w.B[0] = 1.0;
  for (std::size_t j = 1; j < m; ++j) {
    w.B[j] = prices[j - 1] * std::exp(-alphas[j - 1]) /
             (prices[j] * std::exp(-alphas[j])) * w.B[j - 1];
  }
  w.betas.resize(m);
  for (std::size_t j = 0; j < m; ++j) w.betas[j] = w.B[j] - w.B[j + 1];
  return w;
}

std::vector<std::size_t> phase_sizes(const PhaseWeights& w, std::size_t n) {
  const std::size_t m = w.betas.size();
  std::vector<std::size_t> sizes(m);
  std::size_t start = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const auto end = j + 1 == m ? n
                                : static_cast<std::size_t>(std::nearbyint(
                                      static_cast<double>(n) * (1.0 - w.B[j + 1])));
    if (end <= start) {
      throw ValidationError("n = " + std::to_string(n) + " leaves phase " +
                            std::to_string(j + 1) + " without groups");
    }
    sizes[j] = end - start;
    start = end;
  }
  return sizes;
}

AdversarialInstance build_instance(const PriceSet& prices, std::size_t n, long k,
                                   std::uint64_t seed) {
  if (n < 1) throw ValidationError("adversarial instance needs n >= 1");
  if (k < 1) throw ValidationError("adversarial instance needs k >= 1");
  const PhaseWeights w = solve_betas(prices);
  const std::vector<std::size_t> sizes = phase_sizes(w, n);

  AdversarialInstance inst;
  for (std::size_t i = 0; i < n; ++i) inst.setup.items.push_back({k, prices});

  inst.permutation.resize(n);
  std::iota(inst.permutation.begin(), inst.permutation.end(), std::size_t{0});
  Rng rng(seed, Stream::permutation);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(inst.permutation[i - 1], inst.permutation[std::min(j, i - 1)]);
  }

  inst.arrivals.kind = ArrivalKind::deterministic;
  inst.arrivals.arrivals.reserve(n * static_cast<std::size_t>(k));
  std::size_t g = 0;
  for (std::size_t phase = 0; phase < sizes.size(); ++phase) {
    for (std::size_t c = 0; c < sizes[phase]; ++c, ++g) {
      inst.group_phase.push_back(phase);
      Arrival a;
      for (std::size_t s = g; s < n; ++s) {
        a.interests.push_back({inst.permutation[s], static_cast<int>(phase + 1)});
      }
      for (long copy = 0; copy < k; ++copy) inst.arrivals.arrivals.push_back(a);
      inst.opt += static_cast<double>(k) * prices[phase];
    }
  }
  return inst;
}

AnalyticBounds analytic_bounds(const PriceSet& prices, std::size_t n, long k) {
  const PhaseWeights w = solve_betas(prices);
  const std::vector<double> alphas = solve_alphas(prices);
  const double scale = static_cast<double>(n) * static_cast<double>(k);
  AnalyticBounds b;
  for (std::size_t j = 0; j < prices.size(); ++j) {
    b.opt += (prices[j] - prices.below(j)) * w.B[j] * scale;
    b.online_ub += prices[j] * w.B[j] * -std::expm1(-alphas[j]) * scale;
  }
  b.ratio = b.online_ub / b.opt;
  return b;
}

}  // namespace multiprice
