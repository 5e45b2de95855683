#include "risopt/module_optimizer.hpp"

#include <algorithm>

#include "risopt/errors.hpp"

namespace risopt {

UnitSizes module_sizes(const ElementSolution& e) {
  // A kind absent from the element solution borrows the other kind's size.
  long m = e.counts.active, k = e.counts.passive;
  if (m == 0) m = k;
  if (k == 0) k = m;
  return {static_cast<int>(std::max(1L, m)), static_cast<int>(std::max(1L, k))};
}

sca::FeasiblePoint module_initial_point(const SystemParams& p, UnitSizes u) {
  const long a = (p.n_total + 4L * u.active - 1) / (4L * u.active);
  const long b = (p.n_total + 4L * u.passive - 1) / (4L * u.passive);
  return {{a, b, a, b, a, b}, 0.6 * p.t_frame, 0.5 * p.p_b_max};
}

ModuleSolution run_algorithm2(const Scenario& sc, UnitSizes sizes) {
  if (sizes.active < 1) throw InvalidParam("m_star", "module size must be at least 1");
  if (sizes.passive < 1) throw InvalidParam("k_star", "module size must be at least 1");
  const auto spec = ProblemSpec::modules(sizes, sc.params.enforce_bs_rate);
  ModuleSolution out;
  static_cast<SolveReport&>(out) = run_alternating(sc, spec, module_initial_point(sc.params, sizes));
  out.microcontrollers = out.counts.active + out.counts.passive;
  return out;
}

std::pair<ElementSolution, ModuleSolution> pipeline(const Scenario& sc) {
  ElementSolution e = run_algorithm1(sc);
  ModuleSolution m = run_algorithm2(sc, module_sizes(e));
  return {std::move(e), std::move(m)};
}

}  // namespace risopt
