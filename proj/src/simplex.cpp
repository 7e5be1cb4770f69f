#include "multiprice/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "multiprice/errors.hpp"

namespace multiprice {

namespace {
constexpr double kRatioTie = 1e-12;
constexpr double kDegenerateStep = 1e-12;
}  // namespace

RevisedSimplex::RevisedSimplex(Eigen::VectorXd rhs, SimplexOptions options)
    : rhs_(std::move(rhs)), options_(options) {
  for (Eigen::Index i = 0; i < rhs_.size(); ++i) {
    if (!(rhs_[i] >= 0.0) || !std::isfinite(rhs_[i])) {
      throw ValidationError("simplex needs a finite nonnegative right-hand side");
    }
  }
  const auto m = static_cast<std::size_t>(rhs_.size());
  basis_.resize(m);
  in_basis_.assign(m, 1);
  for (std::size_t i = 0; i < m; ++i) basis_[i] = i;
  binv_ = Eigen::MatrixXd::Identity(rhs_.size(), rhs_.size());
  xb_ = rhs_;
  duals_ = Eigen::VectorXd::Zero(rhs_.size());
}

std::size_t RevisedSimplex::add_column(double cost, std::vector<Entry> entries) {
  for (const Entry& e : entries) {
    if (e.first < 0 || e.first >= rhs_.size()) {
      throw ValidationError("column entry outside the constraint rows");
    }
  }
  costs_.push_back(cost);
  cols_.push_back(std::move(entries));
  in_basis_.push_back(0);
  return costs_.size() - 1;
}

double RevisedSimplex::cost_of(std::size_t var) const {
  return is_slack(var) ? 0.0 : costs_[var - slack_count()];
}

Eigen::VectorXd RevisedSimplex::column_of(std::size_t var) const {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(rhs_.size());
  if (is_slack(var)) {
    a[static_cast<Eigen::Index>(var)] = 1.0;
  } else {
    for (const Entry& e : cols_[var - slack_count()]) a[e.first] += e.second;
  }
  return a;
}

double RevisedSimplex::reduced_cost(std::size_t var) const {
  if (is_slack(var)) return -duals_[static_cast<Eigen::Index>(var)];
  double d = costs_[var - slack_count()];
  for (const Entry& e : cols_[var - slack_count()]) d -= duals_[e.first] * e.second;
  return d;
}

void RevisedSimplex::update_duals() {
  Eigen::VectorXd cb(rhs_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    cb[static_cast<Eigen::Index>(i)] = cost_of(basis_[i]);
  }
  duals_ = binv_.transpose() * cb;
}

void RevisedSimplex::refactor() {
  const Eigen::Index m = rhs_.size();
  Eigen::MatrixXd b(m, m);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    b.col(static_cast<Eigen::Index>(i)) = column_of(basis_[i]);
  }
  binv_ = b.partialPivLu().inverse();
  xb_ = binv_ * rhs_;
  update_duals();
  since_refactor_ = 0;
}

void RevisedSimplex::solve() {
  const std::size_t total_vars = slack_count() + columns();
  const std::size_t cap = options_.max_iterations != 0
                              ? options_.max_iterations
                              : 50 * total_vars + 1000;
  std::size_t degenerate_run = 0;
  std::size_t budget = 0;
  // Reduced costs carry rounding error proportional to the cost scale.
  double cost_scale = 1.0;
  for (double c : costs_) cost_scale = std::max(cost_scale, std::abs(c));
  const double opt_tol = options_.optimality_tol * cost_scale;
  update_duals();

  bool verified = false;
  while (true) {
    if (budget++ >= cap) {
      throw SolverLimit("simplex iteration limit (" + std::to_string(cap) +
                        ") reached");
    }
    std::size_t entering = total_vars;
    double best = opt_tol;
    for (std::size_t var = 0; var < total_vars; ++var) {
      if (in_basis_[var]) continue;
      const double d = reduced_cost(var);
      if (bland_) {
        if (d > opt_tol) {
          entering = var;
          break;
        }
      } else if (d > best) {
        best = d;
        entering = var;
      }
    }
    if (entering == total_vars) {
      // Confirm optimality against a fresh factorization once.
      if (verified || since_refactor_ == 0) break;
      refactor();
      verified = true;
      continue;
    }
    verified = false;

    const Eigen::VectorXd u = binv_ * column_of(entering);
    Eigen::Index leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (u[i] <= options_.pivot_tol) continue;
      const double ratio = std::max(0.0, xb_[i]) / u[i];
      if (ratio < theta - kRatioTie ||
          (ratio <= theta + kRatioTie && leave >= 0 &&
           basis_[static_cast<std::size_t>(i)] <
               basis_[static_cast<std::size_t>(leave)])) {
        theta = std::min(theta, ratio);
        leave = i;
      }
    }
    if (leave < 0) throw SolverLimit("linear program is unbounded");

    const double d_entering = reduced_cost(entering);
    const double pivot = u[leave];
    xb_ -= theta * u;
    xb_[leave] = theta;
    binv_.row(leave) /= pivot;
    for (Eigen::Index i = 0; i < binv_.rows(); ++i) {
      if (i != leave && u[i] != 0.0) binv_.row(i) -= u[i] * binv_.row(leave);
    }
    duals_ += d_entering * binv_.row(leave).transpose();

    in_basis_[basis_[static_cast<std::size_t>(leave)]] = 0;
    in_basis_[entering] = 1;
    basis_[static_cast<std::size_t>(leave)] = entering;
    ++iterations_;
    ++since_refactor_;

    if (theta <= kDegenerateStep) {
      if (++degenerate_run >= options_.degenerate_switch) bland_ = true;
    } else {
      degenerate_run = 0;
    }
    if (since_refactor_ >= options_.refactor_every) refactor();
  }
}

double RevisedSimplex::objective() const {
  double obj = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    obj += cost_of(basis_[i]) * xb_[static_cast<Eigen::Index>(i)];
  }
  return obj;
}

std::vector<double> RevisedSimplex::primal() const {
  std::vector<double> x(columns(), 0.0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (!is_slack(basis_[i])) {
      x[basis_[i] - slack_count()] = xb_[static_cast<Eigen::Index>(i)];
    }
  }
  return x;
}

}  // namespace multiprice
