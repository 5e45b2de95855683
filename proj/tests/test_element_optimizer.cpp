#include "doctest.h"
#include "fixtures.hpp"
#include "risopt/element_optimizer.hpp"
#include "risopt/errors.hpp"

using namespace risopt;

TEST_CASE("initial point") {
  SystemParams p;
  p.n_total = 30;
  const auto f = element_initial_point(p);
  CHECK(f.counts.active_eh == 8);
  CHECK(f.counts.passive_d2d == 8);
  CHECK(f.t_eh == doctest::Approx(0.12));
  CHECK(f.p_b == doctest::Approx(0.5));
}

TEST_CASE("vacuous constraints give an empty panel") {
  SystemParams p;
  p.rate_thresh_d2d = 0.0;
  p.e_min = 1e-12;
  const auto sc = make_scenario(p, ChannelParams{});
  const auto sol = run_algorithm1(sc);
  CHECK(sol.counts == Counts{});
  CHECK(sol.p_b == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("solution is exact-feasible and reproducible") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto sc = fixtures::defaults(seed);
    const auto a = run_algorithm1(sc);
    const auto b = run_algorithm1(sc);
    CHECK(a.evaluation.feasible);
    CHECK(a.evaluation.harvest_ok);
    CHECK(a.evaluation.d2d_rate_ok);
    CHECK(a.schedule.t_eh + a.schedule.t_d2d == doctest::Approx(sc.params.t_frame));
    CHECK(a.counts == b.counts);
    CHECK(a.p_b == b.p_b);
    CHECK(a.trace == b.trace);
    CHECK(a.iterations <= sc.params.max_iters);
    CHECK(a.allocation().k_d2d == a.counts.passive_d2d);
  }
}

TEST_CASE("within 10% of the oracle on small panels") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto sc = fixtures::small_panel(seed);
    const auto sol = run_algorithm1(sc);
    const auto oracle = sca::brute_force_oracle(sc, ProblemSpec::elements());
    CHECK(sol.ris_energy <= 1.1 * oracle.evaluation.energy);
  }
}

TEST_CASE("unreachable harvest threshold is infeasible") {
  SystemParams p;
  p.e_min = 0.15;
  p.p_b_max = 1e-6;
  const auto sc = make_scenario(p, ChannelParams{});
  CHECK_THROWS_AS(run_algorithm1(sc), Infeasible);
}
