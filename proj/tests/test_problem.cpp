#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "risopt/problem.hpp"

using namespace risopt;

TEST_CASE("weighted counts and noise weights") {
  SystemParams p;
  p.amp_factor = 3.0;
  CHECK(weighted_count(p, {1, 1}, 2, 5) == doctest::Approx(11.0));
  CHECK(weighted_count(p, {4, 7}, 2, 5) == doctest::Approx(3.0 * 4 * 2 + 7 * 5));
  CHECK(noise_weight(p, ProblemSpec::elements(), 2, 5) == doctest::Approx(9.0 * 2 + 5));
  const auto mod = ProblemSpec::modules({4, 7}, true);
  CHECK(noise_weight(p, mod, 2, 5) == doctest::Approx(weighted_count(p, {4, 7}, 2, 5)));
  CHECK(mod.constraints.causality);
  CHECK(mod.constraints.bs_rate);
  CHECK(mod.module_form);
}

TEST_CASE("slot bounds") {
  SystemParams p;
  const auto [lo, hi] = slot_bounds(p);
  CHECK(lo == doctest::Approx(0.01));
  CHECK(hi == doctest::Approx(0.19));
}

TEST_CASE("evaluate matches hand computation") {
  const Scenario sc = fixtures::defaults(2);
  const auto& p = sc.params;
  const auto& h = sc.gains;
  const Counts c{3, 40, 1, 10, 2, 40};
  const Schedule s{0.15, 0.05};
  const double p_b = 0.3;
  const Evaluation ev = evaluate(sc, ProblemSpec::elements(), c, s, p_b);

  const double g_eh = (p.amp_factor * 1 + 10) * h.h1;
  const double g_d = (p.amp_factor * 2 + 40) * h.h2;
  CHECK(ev.gain_eh == doctest::Approx(g_eh));
  CHECK(ev.gain_d2d == doctest::Approx(g_d));
  const double p_lin = p.zeta * p_b * std::pow(h.h_bs + g_eh, 2) / p.sigma1_sq;
  const double e = p.harvest_max * s.t_eh / (1 + std::exp(-p.y1 * (p_lin - p.y2)));
  CHECK(ev.harvested == doctest::Approx(e).epsilon(1e-12));
  const double rho = h.norm_hrd_sq / h.n_elements;
  const double noise = p.sigma2_sq * (p.amp_factor * p.amp_factor * 2 + 40) * rho + p.sigma1_sq;
  const double rd = p.bw_1 * std::log2(1 + e / s.t_d2d * std::pow(h.h_sd + g_d, 2) / noise);
  CHECK(ev.rates.rate_d2d == doctest::Approx(rd).epsilon(1e-12));

  const double amp2 = p.amp_factor * p.amp_factor;
  const double e_eh = s.t_eh * (10 * p.p_sc + 1 * (p.p_sc + p.p_dc) +
                                (amp2 * p_b * h.norm_hbr_sq + p.sigma2_sq) / p.amp_efficiency);
  const double e_d = s.t_d2d * (40 * p.p_sc + 2 * (p.p_sc + p.p_dc) +
                                (amp2 * e / s.t_d2d * h.norm_hsr_sq + p.sigma2_sq) / p.amp_efficiency);
  CHECK(ev.energy == doctest::Approx(e_eh + e_d).epsilon(1e-12));
  CHECK(ev.capacity_ok);
  CHECK(ev.harvest_slack == doctest::Approx(e - p.e_min));
}

TEST_CASE("capacity and coupling") {
  const Scenario sc = fixtures::small_panel(1);
  CHECK_FALSE(evaluate(sc, ProblemSpec::elements(), {5, 16, 0, 0, 0, 0}, {0.1, 0.1}, 0.5).capacity_ok);
  CHECK_FALSE(evaluate(sc, ProblemSpec::elements(), {1, 1, 2, 0, 0, 0}, {0.1, 0.1}, 0.5).capacity_ok);
  CHECK(evaluate(sc, ProblemSpec::elements(), {4, 16, 4, 0, 0, 16}, {0.1, 0.1}, 0.5).capacity_ok);
  const auto mod = ProblemSpec::modules({2, 2}, true);
  CHECK_FALSE(evaluate(sc, mod, {6, 5, 0, 0, 0, 0}, {0.1, 0.1}, 0.5).capacity_ok);
  CHECK(evaluate(sc, mod, {5, 5, 0, 0, 0, 0}, {0.1, 0.1}, 0.5).capacity_ok);
}

TEST_CASE("more D2D elements raise the D2D rate") {
  const Scenario sc = fixtures::defaults(4);
  double prev = 0.0;
  for (long k = 0; k <= 300; k += 50) {
    const auto ev = evaluate(sc, ProblemSpec::elements(), {0, k, 0, 0, 0, k}, {0.19, 0.01}, 0.5);
    CHECK(ev.rates.rate_d2d > prev);
    prev = ev.rates.rate_d2d;
  }
}
