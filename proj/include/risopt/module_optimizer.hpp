#pragma once

#include <utility>

#include "risopt/element_optimizer.hpp"

namespace risopt {

struct ModuleAllocation {
  long m_star = 0;
  long k_star = 0;
  long ma = 0;
  long kp = 0;
  long ma_eh = 0;
  long kp_eh = 0;
  long ma_d2d = 0;
  long kp_d2d = 0;
};

struct ModuleSolution : SolveReport {
  long microcontrollers = 0;

  ModuleAllocation allocation() const {
    return {units.active, units.passive, counts.active, counts.passive,
            counts.active_eh, counts.passive_eh, counts.active_d2d, counts.passive_d2d};
  }
};

/// Module sizes handed from Algorithm 1: m* = m, k* = k. A zero count takes the
/// other kind's size; both zero gives unit modules.
UnitSizes module_sizes(const ElementSolution& elements);

sca::FeasiblePoint module_initial_point(const SystemParams& params, UnitSizes sizes);

/// Algorithm 2 on problem P.2. Throws InvalidParam unless both sizes are >= 1.
ModuleSolution run_algorithm2(const Scenario& scenario, UnitSizes sizes);

/// Algorithm 1 followed by Algorithm 2 on its module sizes.
std::pair<ElementSolution, ModuleSolution> pipeline(const Scenario& scenario);

}  // namespace risopt
