#include "risopt/alternating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risopt/errors.hpp"

namespace risopt {

namespace {

constexpr int kScanPoints = 400;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

Schedule split_of(const SystemParams& p, double t_eh) { return {t_eh, p.t_frame - t_eh}; }

Counts scaled_anchor(const Counts& c, const ProblemSpec& spec, int n_total) {
  const long a_max = n_total / spec.units.active;
  const long p_max = n_total / spec.units.passive;
  Counts d{0, 0, std::min(2 * std::max(c.active_eh, 1L), a_max),
           std::min(2 * std::max(c.passive_eh, 1L), p_max),
           std::min(2 * std::max(c.active_d2d, 1L), a_max),
           std::min(2 * std::max(c.passive_d2d, 1L), p_max)};
  d.active = std::max(d.active_eh, d.active_d2d);
  d.passive = std::max(d.passive_eh, d.passive_d2d);
  return d;
}

std::vector<double> variables(const Counts& c, const Schedule& s, double p_b) {
  return {static_cast<double>(c.active), static_cast<double>(c.passive),
          static_cast<double>(c.active_eh), static_cast<double>(c.passive_eh),
          static_cast<double>(c.active_d2d), static_cast<double>(c.passive_d2d),
          s.t_eh, s.t_d2d, p_b};
}

double split_step(const Scenario& sc, const ProblemSpec& spec, const Counts& c, double p_b,
                  double t_prev) {
  double t;
  if (spec.constraints.causality) {
    t = sca::solve_split(sca::build_p2b(sc, spec, c, p_b, t_prev));
  } else {
    const auto lp = sca::build_p1b(sc, spec, c, p_b);
    t = lp::solve_lp(lp).x(0);
  }
  if (!repair_split(sc, spec, c, p_b, t)) throw Infeasible("no feasible slot split");
  return t;
}

double power_step(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                  const Schedule& s, double p_prev) {
  const auto prog = spec.constraints.causality ? sca::build_p2c(sc, spec, c, s, p_prev)
                                               : sca::build_p1c(sc, spec, c, s);
  if (!(prog.lower <= sc.params.p_b_max)) throw Infeasible("BS power above p_b_max required");
  double p_b = prog.lower;
  if (!repair_power(sc, spec, c, s, prog.lower, p_b)) throw Infeasible("no feasible BS power");
  return p_b;
}

}  // namespace

bool relative_close(double a, double b, double eps) {
  return std::abs(a - b) <= eps * std::max(std::abs(a), std::abs(b));
}

bool repair_split(const Scenario& sc, const ProblemSpec& spec, const Counts& c, double p_b,
                  double& t_eh) {
  const SystemParams& p = sc.params;
  auto ok = [&](double t) { return evaluate(sc, spec, c, split_of(p, t), p_b).feasible; };
  if (ok(t_eh)) return true;
  const auto [lo, hi] = slot_bounds(p);
  int best = -1;
  double best_energy = 0.0;
  std::vector<bool> feas(kScanPoints);
  auto grid = [&](int i) { return lo + (hi - lo) * i / (kScanPoints - 1); };
  for (int i = 0; i < kScanPoints; ++i) {
    const Evaluation ev = evaluate(sc, spec, c, split_of(p, grid(i)), p_b);
    feas[i] = ev.feasible;
    if (ev.feasible && (best < 0 || ev.energy < best_energy)) {
      best = i;
      best_energy = ev.energy;
    }
  }
  if (best < 0) return false;
  // Push toward the infeasible neighbour when it lies in the descent direction.
  const double e_best = best_energy;
  t_eh = grid(best);
  for (int dir : {-1, 1}) {
    const int nb = best + dir;
    if (nb < 0 || nb >= kScanPoints || feas[nb]) continue;
    if (evaluate(sc, spec, c, split_of(p, grid(nb)), p_b).energy >= e_best) continue;
    double a = grid(best), b = grid(nb);
    for (int k = 0; k < 60; ++k) {
      const double m = 0.5 * (a + b);
      (ok(m) ? a : b) = m;
    }
    t_eh = a;
  }
  return true;
}

bool repair_power(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                  const Schedule& s, double p_lo, double& p_b) {
  const SystemParams& p = sc.params;
  auto ok = [&](double x) { return evaluate(sc, spec, c, s, x).feasible; };
  p_lo = std::max(p_lo, 0.0);
  if (ok(p_b)) return true;
  double prev = p_lo;
  for (int i = 0; i < kScanPoints; ++i) {
    const double x = p_lo + (p.p_b_max - p_lo) * i / (kScanPoints - 1);
    if (ok(x)) {
      double a = prev, b = x;
      if (i > 0) {
        for (int k = 0; k < 60; ++k) {
          const double m = 0.5 * (a + b);
          (ok(m) ? b : a) = m;
        }
      }
      p_b = b;
      return true;
    }
    prev = x;
  }
  return false;
}

bool min_feasible_power(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                        const Schedule& s, double& p_b) {
  const SystemParams& p = sc.params;
  const auto prog = sca::build_p1c(sc, spec, c, s);
  if (!(prog.lower <= p.p_b_max)) return false;
  auto ok = [&](double x) { return evaluate(sc, spec, c, s, x).feasible; };
  const double lo = std::max(prog.lower, 0.0);
  if (ok(lo)) {
    p_b = lo;
    return true;
  }
  // Guard against round-off right at the closed-form bound.
  const double nudged = std::min(p.p_b_max, lo * (1.0 + 1e-9) + 1e-300);
  if (ok(nudged)) {
    p_b = nudged;
    return true;
  }
  constexpr int kCoarse = 64;
  double prev = lo;
  for (int i = 1; i < kCoarse; ++i) {
    const double x = lo + (p.p_b_max - lo) * i / (kCoarse - 1);
    if (ok(x)) {
      double a = prev, b = x;
      for (int k = 0; k < 50; ++k) {
        const double m = 0.5 * (a + b);
        (ok(m) ? b : a) = m;
      }
      p_b = b;
      return true;
    }
    prev = x;
  }
  return false;
}

bool best_schedule_power(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                         OperatingPoint& out) {
  const SystemParams& p = sc.params;
  const auto [lo, hi] = slot_bounds(p);
  constexpr int kGrid = 96;
  auto energy_at = [&](double t, double& pb) {
    if (!min_feasible_power(sc, spec, c, split_of(p, t), pb)) return kInfinity;
    return evaluate(sc, spec, c, split_of(p, t), pb).energy;
  };
  int best = -1;
  double best_e = kInfinity, best_t = lo, best_pb = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double t = lo + (hi - lo) * i / (kGrid - 1);
    double pb;
    const double e = energy_at(t, pb);
    if (e < best_e) {
      best = i;
      best_e = e;
      best_t = t;
      best_pb = pb;
    }
  }
  if (best < 0) return false;
  // Golden-section refinement on the bracketing cells.
  const double step = (hi - lo) / (kGrid - 1);
  double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
  constexpr double kPhi = 0.6180339887498949;
  double x1 = b - kPhi * (b - a), x2 = a + kPhi * (b - a);
  double p1, p2;
  double f1 = energy_at(x1, p1), f2 = energy_at(x2, p2);
  for (int k = 0; k < 40; ++k) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1; p2 = p1;
      x1 = b - kPhi * (b - a);
      f1 = energy_at(x1, p1);
    } else {
      a = x1; x1 = x2; f1 = f2; p1 = p2;
      x2 = a + kPhi * (b - a);
      f2 = energy_at(x2, p2);
    }
  }
  if (f1 < best_e) { best_e = f1; best_t = x1; best_pb = p1; }
  if (f2 < best_e) { best_e = f2; best_t = x2; best_pb = p2; }
  out.counts = c;
  out.schedule = split_of(p, best_t);
  out.p_b = best_pb;
  out.evaluation = evaluate(sc, spec, c, out.schedule, best_pb);
  return out.evaluation.feasible;
}

OperatingPoint polish(const Scenario& sc, const ProblemSpec& spec, OperatingPoint cur) {
  const SystemParams& p = sc.params;
  const long a_max = p.n_total / spec.units.active;
  const long p_max = p.n_total / spec.units.passive;
  long step = 1;
  while (2 * step <= std::max(a_max, p_max) / 4) step *= 2;
  // Slot-count directions: (active_eh, passive_eh, active_d2d, passive_d2d).
  static constexpr int kDirs[][4] = {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1},
                                     {1, 0, 0, 0},  {0, 1, 0, 0},  {0, 0, 1, 0},  {0, 0, 0, 1},
                                     {1, -1, 0, 0}, {-1, 1, 0, 0}, {0, 0, 1, -1}, {0, 0, -1, 1}};
  auto try_move = [&](const int* d1, long s1, const int* d2, long s2) {
    Counts c = cur.counts;
    c.active_eh += s1 * d1[0] + s2 * d2[0];
    c.passive_eh += s1 * d1[1] + s2 * d2[1];
    c.active_d2d += s1 * d1[2] + s2 * d2[2];
    c.passive_d2d += s1 * d1[3] + s2 * d2[3];
    if (c.active_eh < 0 || c.passive_eh < 0 || c.active_d2d < 0 || c.passive_d2d < 0) return false;
    c.active = std::max(c.active_eh, c.active_d2d);
    c.passive = std::max(c.passive_eh, c.passive_d2d);
    if (c.active > a_max || c.passive > p_max ||
        spec.units.active * c.active + spec.units.passive * c.passive > p.n_total)
      return false;
    OperatingPoint cand;
    if (!best_schedule_power(sc, spec, c, cand)) return false;
    if (!(cand.evaluation.energy < cur.evaluation.energy * (1.0 - 1e-12))) return false;
    cur = cand;
    return true;
  };
  static constexpr int kZero[4] = {0, 0, 0, 0};
  for (; step >= 1; step /= 2) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& d : kDirs) improved = try_move(d, step, kZero, 0) || improved;
      if (improved) continue;
      // Two-direction moves trade one kind of unit against another.
      for (int i = 0; i < 8 && !improved; ++i)
        for (int j = 0; j < 8 && !improved; ++j) {
          if (i == j || i % 4 == j % 4) continue;
          for (long r = 1; r <= 3 && !improved; ++r)
            improved = try_move(kDirs[i], step, kDirs[j], r * step);
        }
    }
  }
  return cur;
}

bool restore_feasibility(const Scenario& sc, const ProblemSpec& spec, OperatingPoint& out) {
  const int n = sc.params.n_total;
  const long a_max = n / std::max(spec.units.active, 1);
  const long step = std::max(1L, a_max / 16);
  bool found = false;
  for (long a = 0;; a += step) {
    a = std::min(a, a_max);
    const long b = (n - static_cast<long>(spec.units.active) * a) / std::max(spec.units.passive, 1);
    for (const Counts& c : {Counts{a, b, 0, 0, a, b}, Counts{a, b, a, b, a, b}}) {
      OperatingPoint cand;
      if (!best_schedule_power(sc, spec, c, cand)) continue;
      cand = polish(sc, spec, cand);
      if (!found || cand.evaluation.energy < out.evaluation.energy) {
        out = cand;
        found = true;
      }
    }
    if (a == a_max) break;
  }
  return found;
}

namespace {

SolveReport alternate(const Scenario& sc, const ProblemSpec& spec, const sca::FeasiblePoint& init,
                      bool allow_restore) {
  const SystemParams& p = sc.params;
  SolveReport rep;
  rep.units = spec.units;

  Counts counts = init.counts;
  Schedule sched = split_of(p, init.t_eh);
  double p_b = init.p_b;
  sca::FeasiblePoint anchor = init;
  bool reset_used = false;
  bool have_feasible = false;
  std::vector<double> prev_vars;

  auto checker_at = [&](const Schedule& s, double pb) {
    return [&sc, &spec, s, pb](const Counts& c) { return evaluate(sc, spec, c, s, pb); };
  };

  for (int iter = 1; iter <= p.max_iters; ++iter) {
    // Step A: counts at the current schedule and power.
    try {
      const auto lp = sca::build_count_lp(sc, spec, anchor, sched, p_b);
      const auto sol = lp::solve_lp(lp);
      const Counts rounded = sca::relax_and_round(sol.x, sc, spec, checker_at(sched, p_b));
      // Keep the incumbent counts unless the rounded LP point is strictly cheaper.
      const Evaluation now = evaluate(sc, spec, counts, sched, p_b);
      if (!now.feasible ||
          evaluate(sc, spec, rounded, sched, p_b).energy < now.energy * (1.0 - 1e-12))
        counts = rounded;
    } catch (const Infeasible&) {
      // Reset once by doubling the anchor; later failures keep the current counts
      // and let the split and power steps move the point.
      if (!reset_used) {
        reset_used = true;
        anchor.counts = scaled_anchor(anchor.counts, spec, p.n_total);
        counts = anchor.counts;
      }
    }
    anchor.counts = counts;

    // Step B: slot split; keep the previous split if no feasible one exists.
    try {
      sched = split_of(p, split_step(sc, spec, counts, p_b, sched.t_eh));
    } catch (const Infeasible&) {
    }
    anchor.t_eh = sched.t_eh;

    // Step C: BS power.
    try {
      p_b = power_step(sc, spec, counts, sched, p_b);
    } catch (const Infeasible&) {
    }
    anchor.p_b = p_b;

    const Evaluation ev = evaluate(sc, spec, counts, sched, p_b);
    rep.iterations = iter;
    rep.trace.push_back(ev.energy);
    rep.history.push_back({counts, sched, p_b, ev.energy, ev.feasible});
    if (rep.trace.size() > 1 && ev.energy > rep.trace[rep.trace.size() - 2] * (1 + 1e-12))
      rep.monotone = false;
    if (ev.feasible) {
      have_feasible = true;
      rep.counts = counts;
      rep.schedule = sched;
      rep.p_b = p_b;
      rep.evaluation = ev;
    }
    const auto vars = variables(counts, sched, p_b);
    if (!prev_vars.empty() && ev.feasible) {
      bool still = true;
      for (std::size_t i = 0; i < vars.size(); ++i)
        still = still && relative_close(vars[i], prev_vars[i], p.epsilon);
      if (still) {
        rep.converged = true;
        break;
      }
    }
    prev_vars = vars;
  }
  OperatingPoint start{rep.counts, rep.schedule, rep.p_b, rep.evaluation};
  if (!have_feasible) {
    // Restart once from the restored point; its iterates are reported as a fresh run.
    if (!allow_restore || !restore_feasibility(sc, spec, start))
      throw Infeasible("no exact-feasible iterate");
    try {
      SolveReport again = alternate(sc, spec, {start.counts, start.schedule.t_eh, start.p_b}, false);
      const OperatingPoint& direct = start;
      if (direct.evaluation.energy < again.ris_energy) {
        again.counts = direct.counts;
        again.schedule = direct.schedule;
        again.p_b = direct.p_b;
        again.evaluation = direct.evaluation;
        again.harvested_energy = direct.evaluation.harvested;
        again.ris_energy = direct.evaluation.energy;
        again.rate_bs = direct.evaluation.rates.rate_bs;
        again.rate_d2d = direct.evaluation.rates.rate_d2d;
      }
      return again;
    } catch (const Infeasible&) {
      rep.converged = false;
    }
  }
  OperatingPoint joint;
  if (best_schedule_power(sc, spec, start.counts, joint) &&
      joint.evaluation.energy < start.evaluation.energy)
    start = joint;
  const OperatingPoint fin = polish(sc, spec, start);
  rep.counts = fin.counts;
  rep.schedule = fin.schedule;
  rep.p_b = fin.p_b;
  rep.evaluation = fin.evaluation;
  const Evaluation& ev = rep.evaluation;
  rep.harvested_energy = ev.harvested;
  rep.ris_energy = ev.energy;
  rep.rate_bs = ev.rates.rate_bs;
  rep.rate_d2d = ev.rates.rate_d2d;
  return rep;
}

}  // namespace

SolveReport run_alternating(const Scenario& sc, const ProblemSpec& spec,
                            const sca::FeasiblePoint& init) {
  return alternate(sc, spec, init, true);
}

}  // namespace risopt
