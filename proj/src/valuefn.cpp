#include "multiprice/valuefn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "multiprice/errors.hpp"

namespace multiprice {

namespace {

constexpr double kBorderSnap = 1e-15;
constexpr int kMaxBisectionIterations = 200;

// r_{j-1} / r_j for j >= 1; unused slot 0 is 0 (r_{-1} == 0).
std::vector<double> adjacent_ratios(const PriceSet& prices) {
  std::vector<double> ratios(prices.size(), 0.0);
  for (std::size_t j = 1; j < prices.size(); ++j) {
    ratios[j] = prices[j - 1] / prices[j];
  }
  return ratios;
}

void check_fraction(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw DomainError("fraction sold must lie in [0,1], got " +
                      std::to_string(w));
  }
}

}  // namespace

PriceSet::PriceSet(std::vector<double> prices) : prices_(std::move(prices)) {
  if (prices_.empty()) throw InvalidPriceSet("price set is empty");
  for (std::size_t j = 0; j < prices_.size(); ++j) {
    if (!std::isfinite(prices_[j]) || prices_[j] <= 0.0) {
      throw InvalidPriceSet("prices must be finite and positive (index " +
                            std::to_string(j) + ")");
    }
    if (j > 0 && !(prices_[j] > prices_[j - 1])) {
      throw InvalidPriceSet(
          "prices must be strictly increasing (index " + std::to_string(j) +
          "); use canonicalize_prices for unsorted input");
    }
  }
}

PriceSet canonicalize_prices(std::vector<double> prices) {
  std::sort(prices.begin(), prices.end());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());
  return PriceSet(std::move(prices));
}

std::vector<double> solve_alphas(const PriceSet& prices, double tol) {
  return solve_alphas(prices, tol, Bracket{std::exp(-1.0), 1.0});
}

std::vector<double> solve_alphas(const PriceSet& prices, double tol,
                                 Bracket bracket) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const std::size_t m = prices.size();
  if (m == 1) return {1.0};

  const std::vector<double> ratios = adjacent_ratios(prices);
  // gamma_j = exp(-alpha_j) is affine in gamma_1; the product of all gamma_j
  // must equal 1/e and is strictly increasing in gamma_1.
  auto product = [&](double g1) {
    double p = g1;
    for (std::size_t j = 1; j < m; ++j) p *= (1.0 - ratios[j]) * g1 + ratios[j];
    return p;
  };
  const double target = std::exp(-1.0);
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo < hi) || product(lo) > target || product(hi) < target) {
    throw DomainError("bisection bracket does not enclose the root");
  }
  for (int it = 0; it < kMaxBisectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (product(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol * 1e-4) break;
  }
  const double g1 = 0.5 * (lo + hi);

  std::vector<double> alphas(m);
  alphas[0] = -std::log(g1);
  for (std::size_t j = 1; j < m; ++j) {
    alphas[j] = -std::log1p((1.0 - ratios[j]) * (g1 - 1.0));
  }
  return alphas;
}

double alpha_residual(const PriceSet& prices, std::span<const double> alphas) {
  const std::vector<double> ratios = adjacent_ratios(prices);
  const double first = -std::expm1(-alphas[0]);
  double worst = 0.0;
  for (std::size_t j = 1; j < alphas.size(); ++j) {
    const double value = -std::expm1(-alphas[j]) / (1.0 - ratios[j]);
    worst = std::max(worst, std::abs(value - first));
  }
  return worst;
}

std::vector<double> solve_sigmas(const PriceSet& prices) {
  const std::vector<double> ratios = adjacent_ratios(prices);
  std::vector<double> sigmas(prices.size());
  double total = 0.0;
  for (std::size_t j = 0; j < prices.size(); ++j) {
    sigmas[j] = 1.0 - ratios[j];
    total += sigmas[j];
  }
  for (double& s : sigmas) s /= total;
  return sigmas;
}

ValueFunction build_value_function(const PriceSet& prices) {
  ValueFunction vf{prices, solve_alphas(prices), {}, solve_sigmas(prices)};
  const std::size_t m = prices.size();
  vf.borders.assign(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    vf.borders[j + 1] = vf.borders[j] + vf.alphas[j];
  }
  vf.borders[m] = 1.0;
  vf.F = -std::expm1(-vf.alphas[0]);
  vf.G = vf.sigmas[0];
  return vf;
}

std::size_t ValueFunction::segment(double w) const {
  check_fraction(w);
  const std::size_t m = alphas.size();
  // First border strictly above w (after snapping) closes w's segment.
  for (std::size_t j = 1; j < m; ++j) {
    if (w < borders[j] - kBorderSnap) return j - 1;
  }
  return m - 1;
}

double ValueFunction::operator()(double w) const {
  const std::size_t s = segment(w);
  double offset = w - borders[s];
  if (std::abs(offset) <= kBorderSnap) offset = 0.0;
  return prices.below(s) +
         (prices[s] - prices.below(s)) * std::expm1(offset) /
             std::expm1(alphas[s]);
}

double ValueFunction::derivative(double w) const {
  const std::size_t s = segment(w);
  return (prices[s] - prices.below(s)) * std::exp(w - borders[s]) /
         std::expm1(alphas[s]);
}

double two_price_F(double xi) {
  if (!(xi > 1.0) || !std::isfinite(xi)) {
    throw DomainError("price ratio must be finite and exceed 1");
  }
  // Rationalized form of 1 - (sqrt(1 + 4 xi (xi-1)/e) - 1) / (2 (xi-1)),
  // which stays accurate as xi -> 1.
  const double e = std::numbers::e;
  return 1.0 - 2.0 * xi / (e * (1.0 + std::sqrt(1.0 + 4.0 * xi * (xi - 1.0) / e)));
}

double lambert_w0(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("lambert_w0 is implemented for finite x >= 0");
  }
  if (x == 0.0) return 0.0;
  double w = std::log1p(x);
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double step =
        f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

ContinuumValueFunction build_continuum(double r_min, double r_max) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw InvalidRange("continuum price range needs 0 < r_min < r_max");
  }
  ContinuumValueFunction c;
  c.r_min = r_min;
  c.r_max = r_max;
  c.log_ratio = std::log(r_max / r_min);
  const double R = c.log_ratio;
  c.alpha = lambert_w0(R * std::exp(R - 1.0)) - R + 1.0;
  c.F = -std::expm1(-c.alpha);
  return c;
}

double ContinuumValueFunction::operator()(double w) const {
  check_fraction(w);
  if (w <= alpha) return r_min * std::expm1(w) / std::expm1(alpha);
  return r_min * std::exp(log_ratio * (w - alpha) / (1.0 - alpha));
}

double ContinuumValueFunction::derivative(double w) const {
  check_fraction(w);
  if (w < alpha) return r_min * std::exp(w) / std::expm1(alpha);
  const double slope = log_ratio / (1.0 - alpha);
  return r_min * slope * std::exp(slope * (w - alpha));
}

}  // namespace multiprice
