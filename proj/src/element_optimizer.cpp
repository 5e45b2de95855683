#include "risopt/element_optimizer.hpp"

namespace risopt {

sca::FeasiblePoint element_initial_point(const SystemParams& p) {
  const long q = (p.n_total + 3) / 4;
  return {{q, q, q, q, q, q}, 0.6 * p.t_frame, 0.5 * p.p_b_max};
}

ElementSolution run_algorithm1(const Scenario& sc) {
  return run_algorithm1(sc, ProblemSpec::elements().constraints);
}

ElementSolution run_algorithm1(const Scenario& sc, const ConstraintSet& constraints) {
  ProblemSpec spec = ProblemSpec::elements();
  spec.constraints = constraints;
  ElementSolution out;
  static_cast<SolveReport&>(out) = run_alternating(sc, spec, element_initial_point(sc.params));
  return out;
}

}  // namespace risopt
