#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "risopt/errors.hpp"
#include "risopt/harvesting.hpp"
#include "risopt/sca.hpp"

using namespace risopt;

namespace {

Counts random_counts(std::mt19937_64& rng, long n) {
  std::uniform_int_distribution<long> d(0, n / 2);
  Counts c{0, 0, d(rng), d(rng), d(rng), d(rng)};
  c.active = std::max(c.active_eh, c.active_d2d);
  c.passive = std::max(c.passive_eh, c.passive_d2d);
  return c;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_CASE("rate items are tangent at the anchor") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> t(0.02, 0.18), pb(0.05, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Scenario sc = fixtures::defaults(i + 1);
    const Counts c = random_counts(rng, 300);
    const double t_eh = t(rng), p_b = pb(rng);
    const auto items = sca::rate_items(sc, ProblemSpec::elements(), c, t_eh, p_b);
    const auto exact = sca::rate_items_exact(sc, ProblemSpec::elements(), c, t_eh, p_b);
    const Eigen::VectorXd x = sca::to_vector(c);
    for (int j = 0; j < 6; ++j) CHECK(rel(items[j].at(x, x), exact[j]) <= 1e-9);
  }
}

TEST_CASE("rate item gradients match finite differences") {
  const Scenario sc = fixtures::defaults(5);
  const auto spec = ProblemSpec::elements();
  const Counts c{20, 120, 10, 60, 20, 120};
  const double t_eh = 0.15, p_b = 0.4;
  const auto items = sca::rate_items(sc, spec, c, t_eh, p_b);
  // Items are quadratic in the D2D counts: a unit central difference is exact.
  auto fd = [&](int idx, auto bump) {
    Counts up = c, dn = c;
    bump(up, 1);
    bump(dn, -1);
    const auto a = sca::rate_items_exact(sc, spec, up, t_eh, p_b);
    const auto b = sca::rate_items_exact(sc, spec, dn, t_eh, p_b);
    for (int j = 0; j < 6; ++j) {
      const double g = 0.5 * (a[j] - b[j]);
      CHECK(items[j].gradient(idx) == doctest::Approx(g).epsilon(1e-7).scale(1e-30));
    }
  };
  fd(4, [](Counts& x, long s) { x.active_d2d += s; });
  fd(5, [](Counts& x, long s) { x.passive_d2d += s; });
  // Harvest coupling is non-linear; compare with a relative tolerance.
  auto fd_eh = [&](int idx, auto bump) {
    Counts up = c, dn = c;
    bump(up, 1);
    bump(dn, -1);
    const auto a = sca::rate_items_exact(sc, spec, up, t_eh, p_b);
    const auto b = sca::rate_items_exact(sc, spec, dn, t_eh, p_b);
    for (int j = 0; j < 6; ++j) {
      const double g = 0.5 * (a[j] - b[j]);
      CHECK(items[j].gradient(idx) == doctest::Approx(g).epsilon(1e-3).scale(1e-30));
    }
  };
  fd_eh(2, [](Counts& x, long s) { x.active_eh += s; });
  fd_eh(3, [](Counts& x, long s) { x.passive_eh += s; });
}

TEST_CASE("linearized count constraints equal the exact margins at the anchor") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> t(0.05, 0.18), pb(0.2, 1.0);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const Scenario sc = fixtures::defaults(100 + i);
    const auto& p = sc.params;
    const auto& h = sc.gains;
    const Counts c = random_counts(rng, 300);
    const Schedule s{t(rng), 0.0};
    const Schedule sched{s.t_eh, p.t_frame - s.t_eh};
    const double p_b = pb(rng);
    lp::SubproblemLP lp;
    try {
      lp = sca::build_p1a_constraints(sc, {c, sched.t_eh, p_b}, sched, p_b);
    } catch (const InfeasibleLinearization&) {
      continue;
    }
    const Eigen::VectorXd x = sca::to_vector(c);
    const Evaluation ev = evaluate(sc, ProblemSpec::elements(), c, sched, p_b);
    if (const auto* row = lp.find("harvest")) {
      const double amp = h.h_bs + ev.gain_eh;
      const double f1 = sca::harvest_rhs(p, sched.t_eh, p_b);
      const double exact = amp * amp - f1;
      const double lin = row->lhs(x) + h.h_bs * h.h_bs - f1;
      CHECK(rel(lin + f1, exact + f1) <= 1e-9);
      ++checked;
    }
    if (const auto* row = lp.find("d2d_rate")) {
      const double c_snr = std::exp2(p.rate_thresh_d2d) - 1.0;
      const double amp = h.h_sd + ev.gain_d2d;
      const double exact = ev.harvested * amp * amp - c_snr * sched.t_d2d * ev.rates.sigma_m2_sq;
      const double lin = row->lhs(x) - row->rhs;
      const double scale = ev.harvested * amp * amp;
      CHECK(std::abs(lin - exact) <= 1e-9 * scale);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("harvest rhs inverts the sigmoid") {
  SystemParams p;
  const double f1 = sca::harvest_rhs(p, 0.1, 0.5);
  const double p_lin = p.zeta * 0.5 * f1 / p.sigma1_sq;
  CHECK(harvest::harvested_energy(p_lin, 0.1, p.harvest_max, p.y1, p.y2) ==
        doctest::Approx(p.e_min).epsilon(1e-12));
  CHECK(sca::harvest_rhs(p, 0.1, 0.0) == std::numeric_limits<double>::infinity());
  CHECK(sca::harvest_rhs_module_form(p, 0.1, 0.5) == doctest::Approx(f1).epsilon(1e-12));
}

TEST_CASE("split LP keeps the frame and prefers the cheap slot") {
  const Scenario sc = fixtures::defaults(3);
  const Counts c{0, 150, 0, 0, 0, 150};
  const auto lp = sca::build_p1b(sc, ProblemSpec::elements(), c, 0.6);
  const auto sol = lp::solve_lp(lp);
  CHECK(sol.x(0) + sol.x(1) == doctest::Approx(sc.params.t_frame));
  CHECK(lp.feasible(sol.x));
}

TEST_CASE("LSE split bisection lands on the boundary") {
  sca::SplitProgram g;
  g.t_lo = 0.01;
  g.t_hi = 0.19;
  g.t_frame = 0.2;
  g.slope = -1.0;
  g.has_lse = true;
  g.f14 = 0.5;
  g.f15 = 2.0;
  const double t = sca::solve_split(g);
  CHECK(sca::lse_margin(g, t) >= 0.0);
  CHECK(sca::lse_margin(g, t + 1e-5) < 0.0);
  g.slope = 1.0;
  CHECK(sca::solve_split(g) == doctest::Approx(0.01));
  g.harvest_t_min = 0.195;
  CHECK_THROWS_AS(sca::solve_split(g), Infeasible);
}

TEST_CASE("power program lower bound is exact-feasible") {
  const Scenario sc = fixtures::defaults(6);
  const auto spec = ProblemSpec::elements();
  const Counts c{0, 200, 0, 0, 0, 200};
  const Schedule s{0.19, 0.01};
  const auto prog = sca::build_p1c(sc, spec, c, s);
  const double p_b = sca::solve_power(prog);
  const auto at = evaluate(sc, spec, c, s, p_b * (1 + 1e-9));
  CHECK(at.harvest_ok);
  CHECK(at.d2d_rate_ok);
  if (p_b > 0.0) {
    const auto below = evaluate(sc, spec, c, s, p_b * 0.99);
    CHECK_FALSE((below.harvest_ok && below.d2d_rate_ok));
  }
  sca::PowerProgram bad;
  bad.lower = 2.0;
  bad.upper = 1.0;
  CHECK_THROWS_AS(sca::solve_power(bad), Infeasible);
}

TEST_CASE("causality cap bounds p_b") {
  const Scenario sc = fixtures::defaults(6);
  const auto spec = ProblemSpec::modules({10, 10}, false);
  const Counts c{0, 20, 0, 0, 0, 20};
  const Schedule s{0.19, 0.01};
  const auto prog = sca::build_p2c(sc, spec, c, s, 0.5);
  CHECK(prog.causality_cap > 0.0);
  CHECK(prog.upper <= sc.params.p_b_max);
}

TEST_CASE("rounding returns an exact-feasible point") {
  const Scenario sc = fixtures::defaults(8);
  const auto spec = ProblemSpec::elements();
  const Schedule s{0.19, 0.01};
  const double p_b = 0.6;
  auto checker = [&](const Counts& c) { return evaluate(sc, spec, c, s, p_b); };
  Eigen::VectorXd relaxed(6);
  relaxed << 0.0, 0.0, 0.0, 0.0, 0.0, 30.3;
  const Counts c = sca::relax_and_round(relaxed, sc, spec, checker);
  CHECK(checker(c).feasible);
  CHECK(c.passive_d2d >= 31);
  CHECK(c.passive >= c.passive_d2d);
}

TEST_CASE("rounding fails when even the full panel is insufficient") {
  SystemParams p;
  p.n_total = 2;
  p.seed = 1;
  const Scenario sc = make_scenario(p, ChannelParams{});
  const auto spec = ProblemSpec::elements();
  auto checker = [&](const Counts& c) { return evaluate(sc, spec, c, {0.19, 0.01}, 1e-6); };
  Eigen::VectorXd relaxed = Eigen::VectorXd::Zero(6);
  CHECK_THROWS_AS(sca::relax_and_round(relaxed, sc, spec, checker), RoundingFailed);
}

TEST_CASE("oracle returns a feasible grid point no worse than any other grid point") {
  const Scenario sc = fixtures::small_panel(2, 6);
  const auto spec = ProblemSpec::elements();
  const sca::OracleGrid grid{20, 20};
  const auto r = sca::brute_force_oracle(sc, spec, grid);
  CHECK(r.evaluation.feasible);
  CHECK(r.candidates > 0);
  const auto [lo, hi] = slot_bounds(sc.params);
  // Exhaustive re-check through evaluate on a subset of the grid.
  for (long k = 0; k <= 6; ++k)
    for (int it = 0; it < 20; it += 3)
      for (int j = 0; j < 20; ++j) {
        const double t = lo + (hi - lo) * it / 19.0;
        const double pb = sc.params.p_b_max * j / 19.0;
        const auto ev = evaluate(sc, spec, {0, k, 0, 0, 0, k}, {t, sc.params.t_frame - t}, pb);
        if (ev.feasible) CHECK(r.evaluation.energy <= ev.energy * (1 + 1e-12));
      }
}
