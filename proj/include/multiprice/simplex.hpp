#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace multiprice {

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-9;
  std::size_t refactor_every = 100;
  std::size_t degenerate_switch = 50;  // consecutive degenerate pivots before Bland
  std::size_t max_iterations = 0;      // 0 picks a size-based default
};

/// Dense revised simplex for max c'x subject to Ax <= b, x >= 0 with b >= 0,
/// started from the all-slack basis. Columns are stored sparse and can be
/// appended between solves; the previous basis stays feasible, so later
/// solves warm-start.
class RevisedSimplex {
 public:
  using Entry = std::pair<Eigen::Index, double>;  // (row, coefficient)

  explicit RevisedSimplex(Eigen::VectorXd rhs, SimplexOptions options = {});

  /// Returns the new column's index.
  std::size_t add_column(double cost, std::vector<Entry> entries);

  /// Runs to optimality. Throws SolverLimit on unboundedness or when the
  /// iteration cap is hit.
  void solve();

  Eigen::Index rows() const { return rhs_.size(); }
  std::size_t columns() const { return costs_.size(); }
  double objective() const;
  /// Structural variable values.
  std::vector<double> primal() const;
  /// Row prices c_B' B^{-1}.
  const Eigen::VectorXd& duals() const { return duals_; }
  std::size_t iterations() const { return iterations_; }
  bool used_bland() const { return bland_; }

 private:
  std::size_t slack_count() const { return static_cast<std::size_t>(rhs_.size()); }
  bool is_slack(std::size_t var) const { return var < slack_count(); }
  double cost_of(std::size_t var) const;
  Eigen::VectorXd column_of(std::size_t var) const;
  double reduced_cost(std::size_t var) const;
  void refactor();
  void update_duals();

  Eigen::VectorXd rhs_;
  SimplexOptions options_;
  std::vector<double> costs_;
  std::vector<std::vector<Entry>> cols_;
  // Variables are numbered slacks first (one per row), then structurals.
  std::vector<std::size_t> basis_;  // variable basic in each row
  std::vector<char> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd duals_;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
  bool bland_ = false;
};

}  // namespace multiprice
