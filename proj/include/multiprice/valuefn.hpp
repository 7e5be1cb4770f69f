#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace multiprice {

/// Strictly increasing, strictly positive prices of one item.
///
/// Index 0 holds the lowest price. The implicit zero price below the
/// lowest one is available through below().
class PriceSet {
 public:
  /// Throws InvalidPriceSet unless prices are nonempty, finite, positive and
  /// strictly increasing. Use canonicalize_prices() for unsorted input.
  explicit PriceSet(std::vector<double> prices);

  std::size_t size() const { return prices_.size(); }
  double operator[](std::size_t j) const { return prices_[j]; }
  /// Price strictly below index j; 0 for j == 0.
  double below(std::size_t j) const { return j == 0 ? 0.0 : prices_[j - 1]; }
  double lowest() const { return prices_.front(); }
  double highest() const { return prices_.back(); }
  std::span<const double> prices() const { return prices_; }

  bool operator==(const PriceSet&) const = default;

 private:
  std::vector<double> prices_;
};

/// Sorts and removes exact duplicates before validating.
PriceSet canonicalize_prices(std::vector<double> prices);

/// Piecewise-exponential bid-price curve of one price set.
///
/// Segment j (0-based) spans [borders[j], borders[j+1]) and has length
/// alphas[j]; the curve reaches price j at borders[j+1].
struct ValueFunction {
  PriceSet prices;
  std::vector<double> alphas;
  std::vector<double> borders;  // size m+1, borders.front() == 0, back() == 1
  std::vector<double> sigmas;
  double F = 0.0;  // 1 - exp(-alphas[0])
  double G = 0.0;  // sigmas[0]

  /// 0-based segment containing w; half-open segments, w == 1 maps to m-1.
  std::size_t segment(double w) const;
  /// Bid price at fraction sold w in [0,1]; throws DomainError outside.
  double operator()(double w) const;
  /// One-sided (right) derivative; at w == 1 the left derivative.
  double derivative(double w) const;
};

struct Bracket {
  double lo;
  double hi;
};

/// Booking limits: positive, summing to one, with
/// (1 - exp(-a_j)) / (1 - r_{j-1}/r_j) equal across j.
///
/// Bisection on g = exp(-a_1) inside `bracket` (default [1/e, 1]).
std::vector<double> solve_alphas(const PriceSet& prices, double tol = 1e-12);
std::vector<double> solve_alphas(const PriceSet& prices, double tol,
                                 Bracket bracket);

/// Largest deviation of (1 - exp(-a_j)) / (1 - r_{j-1}/r_j) from its j = 0
/// value.
double alpha_residual(const PriceSet& prices, std::span<const double> alphas);

/// Single-item booking limits proportional to 1 - r_{j-1}/r_j.
std::vector<double> solve_sigmas(const PriceSet& prices);

ValueFunction build_value_function(const PriceSet& prices);

inline double eval_phi(const ValueFunction& vf, double w) { return vf(w); }

/// F of the two-price set {1, xi}, in closed form.
double two_price_F(double xi);

/// Principal branch of Lambert W for x >= 0 (Halley iteration).
double lambert_w0(double x);

/// Value function over the price interval [r_min, r_max].
struct ContinuumValueFunction {
  double r_min = 0.0;
  double r_max = 0.0;
  double log_ratio = 0.0;  // ln(r_max / r_min)
  double alpha = 0.0;      // booking limit of r_min
  double F = 0.0;

  double operator()(double w) const;
  double derivative(double w) const;
};

/// alpha from the Lambert-W closed form; throws InvalidRange unless
/// 0 < r_min < r_max.
ContinuumValueFunction build_continuum(double r_min, double r_max);

}  // namespace multiprice
