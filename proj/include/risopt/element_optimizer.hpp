#pragma once

#include "risopt/alternating.hpp"

namespace risopt {

struct ElementAllocation {
  long m = 0;
  long k = 0;
  long m_eh = 0;
  long k_eh = 0;
  long m_d2d = 0;
  long k_d2d = 0;
};

struct ElementSolution : SolveReport {
  ElementAllocation allocation() const {
    return {counts.active, counts.passive, counts.active_eh,
            counts.passive_eh, counts.active_d2d, counts.passive_d2d};
  }
};

/// Initial anchor of Algorithm 1: ceil(N/4) elements of each kind in each slot,
/// T(i') = 0.6 T(i), p_b = 0.5 p_b_max.
sca::FeasiblePoint element_initial_point(const SystemParams& params);

/// Algorithm 1 on problem P.1.
ElementSolution run_algorithm1(const Scenario& scenario);

/// Algorithm 1 with an explicit constraint set (e.g. causality added).
ElementSolution run_algorithm1(const Scenario& scenario, const ConstraintSet& constraints);

}  // namespace risopt
