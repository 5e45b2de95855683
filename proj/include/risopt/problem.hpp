#pragma once

#include "risopt/link_rates.hpp"
#include "risopt/ris_power.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Elements per active / passive unit. Unit sizes of one give the element scenario;
/// larger sizes are the module sizes m*, k*.
struct UnitSizes {
  int active = 1;
  int passive = 1;
};

/// Integer configuration. In the element scenario these are element counts
/// (m, k, m(i'), k(i'), m(i''), k(i'')); in the module scenario module counts
/// (M_a, K_p, M_a(i'), ...).
struct Counts {
  long active = 0;
  long passive = 0;
  long active_eh = 0;
  long passive_eh = 0;
  long active_d2d = 0;
  long passive_d2d = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Schedule {
  double t_eh = 0.0;
  double t_d2d = 0.0;
};

struct ConstraintSet {
  bool harvest = true;
  bool d2d_rate = true;   // R_d >= R_d^t W_1
  bool causality = false; // T' R_b <= T'' R_d
  bool bs_rate = false;   // R_b >= R_b^t W_2
};

/// Which optimization problem is being evaluated.
struct ProblemSpec {
  UnitSizes units;
  ConstraintSet constraints;
  // Module form: effective RIS noise scales with L(j) and rates use W_2 / W_3.
  bool module_form = false;

  static ProblemSpec elements();
  static ProblemSpec modules(UnitSizes sizes, bool enforce_bs_rate);
};

/// Exact, non-linear quantities of one operating point.
struct Evaluation {
  double gain_eh = 0.0;    // (a_m m(i') + k(i')) h1  or  L(i') h3
  double gain_d2d = 0.0;   // (a_m m(i'') + k(i'')) h2  or  L(i'') h4
  double p_linear = 0.0;
  double harvested = 0.0;
  rates::RateResult rates;
  power::PowerBreakdown power;
  double energy = 0.0;

  double harvest_slack = 0.0;    // e_nl - e_m  [J]
  double d2d_rate_slack = 0.0;   // R_d - R_d^t W  [bit/s]
  double bs_rate_slack = 0.0;    // R_b - R_b^t W  [bit/s]
  double causality_slack = 0.0;  // T'' R_d - T' R_b  [bit]

  bool capacity_ok = false;
  bool harvest_ok = false;
  bool d2d_rate_ok = false;
  bool bs_rate_ok = false;
  bool causality_ok = false;
  bool feasible = false;
};

/// Aligned gain multiplier of the active / passive units: a_m * m*  and  k*.
double active_unit_gain(const SystemParams& params, const UnitSizes& units);
double passive_unit_gain(const UnitSizes& units);

/// L(j)-style weighted count  a_m s_a A + s_p P.
double weighted_count(const SystemParams& params, const UnitSizes& units, double active,
                      double passive);

/// Multiplier of sigma2^2 rho in the effective noise of a slot using (active, passive) units.
double noise_weight(const SystemParams& params, const ProblemSpec& spec, double active,
                    double passive);

/// Per-element mean squared magnitude ||h||^2 / N (zero for an empty panel).
double per_element(double norm_sq, int n_elements);

/// Evaluates every exact constraint and the energy objective.
Evaluation evaluate(const Scenario& scenario, const ProblemSpec& spec, const Counts& counts,
                    const Schedule& schedule, double p_b);

/// Bounds [t_lo, t_hi] admissible for the harvesting slot.
std::pair<double, double> slot_bounds(const SystemParams& params);

}  // namespace risopt
