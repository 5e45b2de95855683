#pragma once

#include <array>
#include <functional>
#include <optional>

#include "risopt/lp.hpp"
#include "risopt/problem.hpp"

namespace risopt::sca {

/// Linearization anchor (the superscript-f iterate).
struct FeasiblePoint {
  Counts counts;
  double t_eh = 0.0;
  double p_b = 0.0;
};

/// Variable order of every count LP.
inline constexpr std::array<const char*, 6> kElementNames{"m", "k", "m_eh", "k_eh", "m_d2d", "k_d2d"};
inline constexpr std::array<const char*, 6> kModuleNames{"Ma", "Kp", "Ma_eh", "Kp_eh", "Ma_d2d", "Kp_d2d"};

Eigen::VectorXd to_vector(const Counts& c);
Counts to_counts(const Eigen::VectorXd& x);  // rounds to nearest

/// Right-hand side of the harvest constraint written as (h_bs + G h1)^2 >= f1:
/// sigma1^2 (y2 - ln(Y T'/e_m - 1)/y1) / (zeta p_b). Returns -inf when the threshold is
/// met by the sigmoid floor alone; +inf when zeta p_b = 0 and a positive input is needed.
double harvest_rhs(const SystemParams& params, double t_eh, double p_b);

/// Same constant in the (y1 y2 - ln(.)) / (y1 zeta p_b) arrangement used for modules.
double harvest_rhs_module_form(const SystemParams& params, double t_eh, double p_b);

/// One expanded term of e_nl (h_sd + G'' h2)^2, linearized at the anchor:
/// t(x) = value + gradient . (x - anchor).
struct ItemTerm {
  double value = 0.0;
  Eigen::VectorXd gradient;

  double at(const Eigen::VectorXd& x, const Eigen::VectorXd& anchor) const {
    return value + gradient.dot(x - anchor);
  }
};

/// The six rate items (direct, two cross terms, two squares and the bilinear term).
std::array<ItemTerm, 6> rate_items(const Scenario& scenario, const ProblemSpec& spec,
                                   const Counts& anchor, double t_eh, double p_b);

/// Exact value of the six items at `counts`.
std::array<double, 6> rate_items_exact(const Scenario& scenario, const ProblemSpec& spec,
                                       const Counts& counts, double t_eh, double p_b);

/// Lower bound on L(i'') implied by causality with L(i'), e_nl and noise frozen at the anchor.
double causality_bound(const Scenario& scenario, const ProblemSpec& spec, const Counts& anchor,
                       const Schedule& schedule, double p_b);

/// Lower bound on L(i') implied by R_b >= R_b^t W_2 with noise frozen at the anchor.
double bs_rate_bound(const Scenario& scenario, const ProblemSpec& spec, const Counts& anchor,
                     double p_b);

/// Count subproblem for any constraint set. Constraint labels: "capacity",
/// "couple_*", "harvest", "d2d_rate", "causality", "bs_rate".
lp::SubproblemLP build_count_lp(const Scenario& scenario, const ProblemSpec& spec,
                                const FeasiblePoint& point, const Schedule& schedule, double p_b);

/// P.1A: element counts at fixed schedule and BS power.
lp::SubproblemLP build_p1a_constraints(const Scenario& scenario, const FeasiblePoint& point,
                                       const Schedule& schedule, double p_b);

/// P.2A: module counts for module sizes `sizes`.
lp::SubproblemLP build_p2a_constraints(const Scenario& scenario, const FeasiblePoint& point,
                                       const Schedule& schedule, double p_b, UnitSizes sizes);

/// Slot-split subproblem in t = T(i'); T(i'') = T(i) - t.
struct SplitProgram {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double t_frame = 0.0;
  double harvest_t_min = 0.0;  // from the harvest constraint (linear in t)
  // Objective slope / intercept in t.
  double slope = 0.0;
  double intercept = 0.0;
  // LSE causality surrogate  (T - t) log2(1 + f14/(T - t)) >= t f15.
  bool has_lse = false;
  double f14 = 0.0;
  double f15 = 0.0;
};

/// P.1B as a two-variable LP over (T(i'), T(i'')).
lp::SubproblemLP build_p1b(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                           double p_b);

/// P.2B with e_nl frozen at the anchor split `t_anchor`.
SplitProgram build_p2b(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                       double p_b, double t_anchor);

/// Left side minus right side of the LSE surrogate.
double lse_margin(const SplitProgram& program, double t);

/// Optimal split of a P.2B program by bisection on the LSE boundary (tolerance 1e-6 T).
/// Throws Infeasible when the feasible interval is empty.
double solve_split(const SplitProgram& program);

/// Closed-form BS power subproblem.
struct PowerProgram {
  double lower = 0.0;
  double upper = 0.0;  // min(p_b_max, causality cap)
  double causality_cap = 0.0;
  double f17 = 0.0;
  double f18 = 0.0;
  double slope = 0.0;  // objective is increasing in p_b
};

/// P.1C: lower bound from harvest and rate inversion, upper bound p_b_max.
PowerProgram build_p1c(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                       const Schedule& schedule);

/// P.2C: adds the causality cap (2^f18 - 1)/f17 with e_nl frozen at `p_b_anchor`.
PowerProgram build_p2c(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                       const Schedule& schedule, double p_b_anchor);

/// Optimal p_b of a power program (its lower bound). Throws Infeasible if bounds cross.
double solve_power(const PowerProgram& program);

/// Exact evaluation of an integer point; used to verify rounded candidates.
using Checker = std::function<Evaluation(const Counts&)>;

/// Ceil the relaxed solution, then repair against the exact constraints by
/// greedy unit increments (passive first on ties). Throws RoundingFailed.
Counts relax_and_round(const Eigen::VectorXd& relaxed, const Scenario& scenario,
                       const ProblemSpec& spec, const Checker& checker);

struct OracleGrid {
  int time_points = 200;
  int power_points = 200;
};

struct OracleResult {
  Counts counts;
  Schedule schedule;
  double p_b = 0.0;
  Evaluation evaluation;
  long candidates = 0;
};

/// Exhaustive search over all integer unit counts and the (time x power) grid of the
/// exact problem. Throws NoFeasiblePoint.
OracleResult brute_force_oracle(const Scenario& scenario, const ProblemSpec& spec,
                                OracleGrid grid = {});

}  // namespace risopt::sca
