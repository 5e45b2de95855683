#pragma once

#include <vector>

#include "risopt/problem.hpp"
#include "risopt/sca.hpp"

namespace risopt {

struct IterateRecord {
  Counts counts;
  Schedule schedule;
  double p_b = 0.0;
  double energy = 0.0;
  bool feasible = false;
};

/// Result of one alternating-optimization run.
struct SolveReport {
  UnitSizes units;
  Counts counts;
  Schedule schedule;
  double p_b = 0.0;
  double harvested_energy = 0.0;
  double ris_energy = 0.0;
  double rate_bs = 0.0;
  double rate_d2d = 0.0;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;  // trace non-increasing (reported only)
  std::vector<double> trace;
  std::vector<IterateRecord> history;
  Evaluation evaluation;
};

/// Exact operating point for fixed counts.
struct OperatingPoint {
  Counts counts;
  Schedule schedule;
  double p_b = 0.0;
  Evaluation evaluation;
};

/// Smallest exact-feasible p_b for fixed counts and split; false when none <= p_b_max.
bool min_feasible_power(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                        const Schedule& schedule, double& p_b);

/// Joint split / power refinement: minimizes the exact energy over T(i') with p_b set
/// to its smallest feasible value at each split. False when no split is feasible.
bool best_schedule_power(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                         OperatingPoint& out);

/// Pattern search over the slot counts (unit steps, swaps) with the joint split / power
/// refinement at every candidate. Returns the improved point.
OperatingPoint polish(const Scenario& scenario, const ProblemSpec& spec, OperatingPoint start);

/// Full-panel configurations on a coarse grid of active/passive splits, with the
/// harvesting slot either empty or fully used; polishes every exact-feasible one and
/// keeps the cheapest. False when none is feasible.
bool restore_feasibility(const Scenario& scenario, const ProblemSpec& spec, OperatingPoint& out);

/// Per-variable relative change |a - b| <= eps * max(|a|, |b|).
bool relative_close(double a, double b, double eps);

/// Runs (count LP -> split -> BS power) until every decision variable changes by less
/// than params.epsilon or params.max_iters is reached. When no iterate is exact-feasible
/// the run falls back to restore_feasibility (converged = false) and throws Infeasible
/// if that fails too.
SolveReport run_alternating(const Scenario& scenario, const ProblemSpec& spec,
                            const sca::FeasiblePoint& init);

/// Exact-feasible split for fixed counts and p_b closest in objective to `t_guess`.
/// Returns false when no split on a fine grid is feasible.
bool repair_split(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                  double p_b, double& t_eh);

/// Smallest exact-feasible p_b >= `p_lo` for fixed counts and split.
bool repair_power(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                  const Schedule& schedule, double p_lo, double& p_b);

}  // namespace risopt
