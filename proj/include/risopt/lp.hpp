#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace risopt::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

/// coefficients . x  (sense)  rhs
struct LinearConstraint {
  Eigen::VectorXd coefficients;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  std::string label;

  double lhs(const Eigen::VectorXd& x) const { return coefficients.dot(x); }
  /// Signed violation (<= 0 when satisfied).
  double violation(const Eigen::VectorXd& x) const;
};

/// min objective . x + objective_constant  over a box with linear side constraints.
struct SubproblemLP {
  std::vector<std::string> names;
  Eigen::VectorXd objective;
  double objective_constant = 0.0;
  std::vector<LinearConstraint> constraints;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<bool> integer;

  explicit SubproblemLP(std::vector<std::string> variable_names = {});
  int size() const { return static_cast<int>(names.size()); }
  int index(const std::string& name) const;

  LinearConstraint& add(Eigen::VectorXd coefficients, Sense sense, double rhs, std::string label);
  const LinearConstraint* find(const std::string& label) const;
  double value(const Eigen::VectorXd& x) const { return objective.dot(x) + objective_constant; }
  bool feasible(const Eigen::VectorXd& x, double rel_tol = 1e-9) const;
};

struct LpSolution {
  Eigen::VectorXd x;
  double objective = 0.0;
  int pivots = 0;
};

/// Two-phase dense simplex with Bland's rule. Among optimal vertices the
/// lexicographically smallest (in variable order) is returned.
/// Throws Infeasible or Unbounded.
LpSolution solve_lp(const SubproblemLP& problem);

}  // namespace risopt::lp
