#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "multiprice/instance.hpp"
#include "multiprice/valuefn.hpp"

namespace multiprice {

/// Phase fractions of the hard instance: B[j] is the tail sum of betas from
/// phase j on (B[0] == 1), betas[j] = B[j] - B[j+1].
struct PhaseWeights {
  std::vector<double> B;
  std::vector<double> betas;
};

PhaseWeights solve_betas(const PriceSet& prices);

struct AdversarialInstance {
  Setup setup;
  ArrivalSequence arrivals;         // deterministic, n*k customers
  std::vector<std::size_t> permutation;
  std::vector<std::size_t> group_phase;  // 0-based phase of each group
  double opt = 0.0;                 // hindsight optimum, exact
};

/// Number of groups in each phase after rounding the phase boundaries to the
/// nearest group (ties to even). Throws ValidationError when a phase would be
/// empty.
std::vector<std::size_t> phase_sizes(const PhaseWeights& w, std::size_t n);

/// n identical items with inventory k; group g (k customers) wants items
/// permutation[g..n-1] at its phase's price.
AdversarialInstance build_instance(const PriceSet& prices, std::size_t n, long k,
                                   std::uint64_t seed);

struct AnalyticBounds {
  double opt = 0.0;
  double online_ub = 0.0;
  double ratio = 0.0;
};

/// Large-n optimum and online upper bound for unrounded phase fractions.
AnalyticBounds analytic_bounds(const PriceSet& prices, std::size_t n, long k);

}  // namespace multiprice
