#include "doctest.h"
#include "fixtures.hpp"
#include "risopt/errors.hpp"
#include "risopt/module_optimizer.hpp"

using namespace risopt;

TEST_CASE("module sizes come from the element counts") {
  ElementSolution e;
  e.counts = {3, 40, 0, 0, 3, 40};
  CHECK(module_sizes(e).active == 3);
  CHECK(module_sizes(e).passive == 40);
  e.counts = {0, 40, 0, 0, 0, 40};
  CHECK(module_sizes(e).active == 40);
  e.counts = {};
  CHECK(module_sizes(e).active == 1);
  CHECK(module_sizes(e).passive == 1);
}

TEST_CASE("module sizes must be positive") {
  const auto sc = fixtures::defaults(1);
  CHECK_THROWS_AS(run_algorithm2(sc, {0, 5}), InvalidParam);
  CHECK_THROWS_AS(run_algorithm2(sc, {5, 0}), InvalidParam);
}

TEST_CASE("pipeline satisfies the exact module constraints") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto sc = fixtures::defaults(seed, 450);
    const auto [el, mod] = pipeline(sc);
    CHECK(mod.evaluation.feasible);
    CHECK(mod.evaluation.harvest_ok);
    CHECK(mod.evaluation.causality_slack >= -1e-9 * mod.schedule.t_eh * mod.rate_bs);
    CHECK(mod.microcontrollers == mod.counts.active + mod.counts.passive);
    CHECK(mod.units.active * mod.counts.active + mod.units.passive * mod.counts.passive <=
          sc.params.n_total);
    CHECK(mod.units.passive == module_sizes(el).passive);
  }
}

TEST_CASE("unit modules agree with Algorithm 1 under causality") {
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto sc = fixtures::defaults(seed);
    sc.params.enforce_bs_rate = false;
    ModuleSolution mod;
    ElementSolution el;
    try {
      mod = run_algorithm2(sc, {1, 1});
      el = run_algorithm1(sc, ConstraintSet{true, false, true, false});
    } catch (const Infeasible&) {
      continue;
    }
    ++compared;
    CHECK(mod.ris_energy <= 1.1 * el.ris_energy);
    CHECK(el.ris_energy <= 1.1 * mod.ris_energy);
  }
  CHECK(compared > 0);
}

TEST_CASE("within 10% of the module oracle") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto sc = fixtures::small_panel(seed);
    ModuleSolution mod;
    try {
      mod = run_algorithm2(sc, {2, 2});
    } catch (const Infeasible&) {
      CHECK_THROWS_AS(sca::brute_force_oracle(sc, ProblemSpec::modules({2, 2}, sc.params.enforce_bs_rate)),
                      NoFeasiblePoint);
      continue;
    }
    const auto oracle = sca::brute_force_oracle(sc, ProblemSpec::modules({2, 2}, sc.params.enforce_bs_rate));
    CHECK(mod.ris_energy <= 1.1 * oracle.evaluation.energy);
  }
}

TEST_CASE("vacuous thresholds need no microcontrollers") {
  SystemParams p;
  p.rate_thresh_d2d = 0.0;
  p.rate_thresh_bs = 0.0;
  p.e_min = 1e-12;
  const auto sc = make_scenario(p, ChannelParams{});
  const auto mod = run_algorithm2(sc, {1, 1});
  CHECK(mod.microcontrollers == 0);
}
