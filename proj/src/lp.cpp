#include "risopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risopt/errors.hpp"

namespace risopt::lp {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;
constexpr double kFeasTol = 1e-9;

struct Standardized {
  Eigen::MatrixXd a;  // rows x columns, rhs >= 0
  Eigen::VectorXd b;
  int n_struct = 0;   // structural columns (shifted variables y = x - lower)
};

// Builds  A y (+/- slack) = b  with y = x - lower >= 0 and the box as extra rows.
Standardized standardize(const SubproblemLP& lp) {
  const int n = lp.size();
  int n_slack = n;  // one per upper-bound row
  for (const auto& c : lp.constraints)
    if (c.sense != Sense::Equal) ++n_slack;
  const int rows = static_cast<int>(lp.constraints.size()) + n;
  Standardized s;
  s.n_struct = n;
  s.a = Eigen::MatrixXd::Zero(rows, n + n_slack);
  s.b = Eigen::VectorXd::Zero(rows);
  int slack = n;
  int row = 0;
  for (const auto& c : lp.constraints) {
    double scale = c.coefficients.cwiseAbs().maxCoeff();
    if (scale == 0.0) scale = 1.0;
    s.a.row(row).head(n) = c.coefficients.transpose() / scale;
    s.b(row) = (c.rhs - c.coefficients.dot(lp.lower)) / scale;
    if (c.sense == Sense::LessEqual) s.a(row, slack++) = 1.0;
    if (c.sense == Sense::GreaterEqual) s.a(row, slack++) = -1.0;
    ++row;
  }
  for (int i = 0; i < n; ++i, ++row) {
    s.a(row, i) = 1.0;
    s.a(row, slack++) = 1.0;
    s.b(row) = lp.upper(i) - lp.lower(i);
  }
  for (int r = 0; r < rows; ++r) {
    if (s.b(r) < 0.0) {
      s.a.row(r) *= -1.0;
      s.b(r) *= -1.0;
    }
  }
  return s;
}

class Tableau {
 public:
  Tableau(const Standardized& s) : rows_(static_cast<int>(s.a.rows())), cols_(static_cast<int>(s.a.cols())) {
    // Columns: [original | artificials | rhs]; last row holds the reduced costs.
    t_ = Eigen::MatrixXd::Zero(rows_ + 1, cols_ + rows_ + 1);
    t_.topLeftCorner(rows_, cols_) = s.a;
    t_.block(0, cols_, rows_, rows_) = Eigen::MatrixXd::Identity(rows_, rows_);
    t_.topRightCorner(rows_, 1) = s.b;
    basis_.resize(rows_);
    for (int r = 0; r < rows_; ++r) basis_[r] = cols_ + r;
    active_.assign(rows_, true);
  }

  int pivots() const { return pivots_; }

  // Phase I: minimize the sum of artificials. Returns the residual infeasibility.
  double phase_one() {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols_ + rows_);
    cost.segment(cols_, rows_).setOnes();
    set_cost(cost);
    iterate(cols_ + rows_);
    return -t_(rows_, rhs());
  }

  // Removes artificials from the basis; rows where that is impossible are redundant.
  void purge_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) continue;
      int col = -1;
      for (int j = 0; j < cols_; ++j)
        if (std::abs(t_(r, j)) > 1e-9) { col = j; break; }
      if (col >= 0) pivot(r, col);
      else active_[r] = false;
    }
  }

  void phase_two(const Eigen::VectorXd& structural_cost) {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols_ + rows_);
    cost.head(structural_cost.size()) = structural_cost;
    set_cost(cost);
    iterate(cols_);
  }

  Eigen::VectorXd solution(int n) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < rows_; ++r)
      if (active_[r] && basis_[r] < n) y(basis_[r]) = t_(r, rhs());
    return y;
  }

 private:
  int rhs() const { return cols_ + rows_; }

  void set_cost(const Eigen::VectorXd& cost) {
    t_.row(rows_).setZero();
    t_.row(rows_).head(cols_ + rows_) = cost.transpose();
    for (int r = 0; r < rows_; ++r) {
      if (!active_[r]) continue;
      const double cb = cost(basis_[r]);
      if (cb != 0.0) t_.row(rows_) -= cb * t_.row(r);
    }
  }

  // Bland's rule over columns [0, allowed).
  void iterate(int allowed) {
    const int limit = 50000;
    for (int it = 0; it < limit; ++it) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j)
        if (t_(rows_, j) < -kCostTol) { enter = j; break; }
      if (enter < 0) return;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        if (!active_[r] || t_(r, enter) <= kPivotTol) continue;
        const double ratio = t_(r, rhs()) / t_(r, enter);
        if (ratio < best - 1e-12 ||
            (std::abs(ratio - best) <= 1e-12 && leave >= 0 && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) throw Unbounded("LP objective unbounded below");
      pivot(leave, enter);
    }
    throw Error("simplex iteration limit reached");
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
    ++pivots_;
  }

  int rows_;
  int cols_;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  std::vector<bool> active_;
  int pivots_ = 0;
};

struct CoreResult {
  Eigen::VectorXd x;
  int pivots = 0;
};

CoreResult solve_core(const SubproblemLP& lp, const Eigen::VectorXd& cost) {
  const Standardized s = standardize(lp);
  Tableau tab(s);
  const double residual = tab.phase_one();
  if (residual > kFeasTol * std::max(1.0, s.b.cwiseAbs().maxCoeff()))
    throw Infeasible("LP has no feasible point");
  tab.purge_artificials();
  // Scale the cost so the reduced-cost tolerance is meaningful.
  const double scale = cost.cwiseAbs().maxCoeff();
  tab.phase_two(scale > 0.0 ? Eigen::VectorXd(cost / scale) : cost);
  CoreResult out;
  out.x = tab.solution(lp.size()) + lp.lower;
  out.x = out.x.cwiseMax(lp.lower).cwiseMin(lp.upper);
  out.pivots = tab.pivots();
  return out;
}

}  // namespace

double LinearConstraint::violation(const Eigen::VectorXd& x) const {
  const double v = lhs(x);
  switch (sense) {
    case Sense::LessEqual: return v - rhs;
    case Sense::GreaterEqual: return rhs - v;
    case Sense::Equal: return std::abs(v - rhs);
  }
  return 0.0;
}

SubproblemLP::SubproblemLP(std::vector<std::string> variable_names)
    : names(std::move(variable_names)) {
  const auto n = static_cast<Eigen::Index>(names.size());
  objective = Eigen::VectorXd::Zero(n);
  lower = Eigen::VectorXd::Zero(n);
  upper = Eigen::VectorXd::Zero(n);
  integer.assign(names.size(), false);
}

int SubproblemLP::index(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error("unknown LP variable '" + name + "'");
  return static_cast<int>(it - names.begin());
}

LinearConstraint& SubproblemLP::add(Eigen::VectorXd coefficients, Sense sense, double rhs,
                                    std::string label) {
  constraints.push_back({std::move(coefficients), sense, rhs, std::move(label)});
  return constraints.back();
}

const LinearConstraint* SubproblemLP::find(const std::string& label) const {
  for (const auto& c : constraints)
    if (c.label == label) return &c;
  return nullptr;
}

bool SubproblemLP::feasible(const Eigen::VectorXd& x, double rel_tol) const {
  for (int i = 0; i < size(); ++i) {
    const double span = std::max(1.0, std::abs(upper(i)) + std::abs(lower(i)));
    if (x(i) < lower(i) - rel_tol * span || x(i) > upper(i) + rel_tol * span) return false;
  }
  for (const auto& c : constraints) {
    const double scale =
        std::max({std::abs(c.rhs), c.coefficients.cwiseAbs().dot(x.cwiseAbs()), 1e-300});
    if (c.violation(x) > rel_tol * scale) return false;
  }
  return true;
}

LpSolution solve_lp(const SubproblemLP& lp) {
  if (lp.lower.size() != lp.size() || lp.upper.size() != lp.size() ||
      lp.objective.size() != lp.size())
    throw Error("LP dimension mismatch");
  for (int i = 0; i < lp.size(); ++i) {
    if (!std::isfinite(lp.lower(i)) || !std::isfinite(lp.upper(i)))
      throw Error("LP requires finite box bounds");
    if (lp.lower(i) > lp.upper(i)) throw Infeasible("empty box for '" + lp.names[i] + "'");
  }

  CoreResult best = solve_core(lp, lp.objective);
  int pivots = best.pivots;
  const double z = lp.objective.dot(best.x);

  // Lexicographic tie-break: pin the optimal value, then minimise x_0, x_1, ... in turn.
  const Eigen::VectorXd span = (lp.upper - lp.lower).cwiseAbs();
  const double z_tol = 1e-9 * std::max(std::abs(z), lp.objective.cwiseAbs().dot(span)) + 1e-300;
  SubproblemLP pinned = lp;
  if (lp.objective.cwiseAbs().maxCoeff() > 0.0)
    pinned.add(lp.objective, Sense::LessEqual, z + z_tol, "__optimal_value");
  Eigen::VectorXd lexmin = lp.upper;
  for (int i = 0; i < lp.size(); ++i) {
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(lp.size());
    unit(i) = 1.0;
    CoreResult r = solve_core(pinned, unit);
    pivots += r.pivots;
    const double xi = r.x(i);
    const double tol = 1e-12 * std::max(1.0, span(i));
    pinned.upper(i) = std::min(pinned.upper(i), std::max(pinned.lower(i), xi + tol));
    lexmin(i) = xi;
    best.x = r.x;
  }
  best.x = best.x.cwiseMin(lexmin);

  LpSolution out;
  out.x = best.x;
  out.objective = lp.value(out.x);
  out.pivots = pivots;
  return out;
}

}  // namespace risopt::lp
