#include "risopt/sca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risopt/errors.hpp"
#include "risopt/harvesting.hpp"

namespace risopt::sca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
enum Var { kA = 0, kP = 1, kAeh = 2, kPeh = 3, kAd = 4, kPd = 5 };

double cascade_eh(const ProblemSpec& spec, const ChannelRealization& h) {
  return spec.module_form ? h.h3 : h.h1;
}

double cascade_d2d(const ProblemSpec& spec, const ChannelRealization& h) {
  return spec.module_form ? h.h4 : h.h2;
}

double bw_d2d(const ProblemSpec& spec, const SystemParams& p) {
  return spec.module_form ? p.bw_3 : p.bw_1;
}

Eigen::VectorXd unit(int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(6);
  v(i) = 1.0;
  return v;
}

// Gradient of the weighted count L(i') (or L(i'')) over the six count variables.
Eigen::VectorXd weight_vector(const SystemParams& p, const ProblemSpec& spec, bool eh) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(6);
  v(eh ? kAeh : kAd) = active_unit_gain(p, spec.units);
  v(eh ? kPeh : kPd) = passive_unit_gain(spec.units);
  return v;
}

double logistic(double p_linear, const SystemParams& p) {
  return harvest::harvested_energy(p_linear, 1.0, 1.0, p.y1, p.y2);
}

double snr_threshold(double rate_thresh) { return std::exp2(rate_thresh) - 1.0; }

long max_units(int n, int size) { return n / std::max(size, 1); }

Schedule split_of(const SystemParams& p, double t_eh) { return {t_eh, p.t_frame - t_eh}; }

}  // namespace

Eigen::VectorXd to_vector(const Counts& c) {
  Eigen::VectorXd x(6);
  x << c.active, c.passive, c.active_eh, c.passive_eh, c.active_d2d, c.passive_d2d;
  return x;
}

Counts to_counts(const Eigen::VectorXd& x) {
  auto r = [&](int i) { return std::lround(x(i)); };
  return {r(kA), r(kP), r(kAeh), r(kPeh), r(kAd), r(kPd)};
}

double harvest_rhs(const SystemParams& p, double t_eh, double p_b) {
  double p_req;
  try {
    p_req = harvest::required_receive_power(p.e_min, t_eh, p.harvest_max, p.y1, p.y2);
  } catch (const DomainError&) {
    return kInf;
  }
  if (p_req <= 0.0) return -kInf;
  if (!(p.zeta * p_b > 0.0)) return kInf;
  return p.sigma1_sq * p_req / (p.zeta * p_b);
}

double harvest_rhs_module_form(const SystemParams& p, double t_eh, double p_b) {
  const double ratio = p.harvest_max * t_eh / p.e_min;
  if (!(ratio > 1.0)) return kInf;
  const double num = p.y1 * p.y2 - std::log(ratio - 1.0);
  if (num <= 0.0) return -kInf;
  if (!(p.zeta * p_b > 0.0)) return kInf;
  return p.sigma1_sq * num / (p.y1 * p.zeta * p_b);
}

std::array<ItemTerm, 6> rate_items(const Scenario& sc, const ProblemSpec& spec,
                                   const Counts& anchor, double t_eh, double p_b) {
  const SystemParams& p = sc.params;
  const ChannelRealization& h = sc.gains;
  const double h_eh = cascade_eh(spec, h);
  const double h_d = cascade_d2d(spec, h);
  const double ga = active_unit_gain(p, spec.units);
  const double gp = passive_unit_gain(spec.units);

  const double l_eh = weighted_count(p, spec.units, anchor.active_eh, anchor.passive_eh);
  const double amp = h.h_bs + h_eh * l_eh;
  const double p_lin = harvest::linear_receive_power(p_b, h.h_bs, h_eh * l_eh, p.zeta, p.sigma1_sq);
  const double s = logistic(p_lin, p);
  const double e = p.harvest_max * t_eh * s;
  // de/dL(i')
  const double de = p.harvest_max * t_eh * s * (1.0 - s) * p.y1 * p.zeta * p_b * 2.0 * amp * h_eh /
                    p.sigma1_sq;
  const Eigen::VectorXd grad_e = de * weight_vector(p, spec, true);

  const double a = static_cast<double>(anchor.active_d2d);
  const double b = static_cast<double>(anchor.passive_d2d);
  const double hsd = h.h_sd;
  std::array<ItemTerm, 6> t;
  t[0] = {e * hsd * hsd, hsd * hsd * grad_e};
  {
    const double c = 2.0 * h_d * hsd * ga;
    t[1] = {c * e * a, c * (a * grad_e + e * unit(kAd))};
  }
  {
    const double c = 2.0 * h_d * hsd * gp;
    t[2] = {c * e * b, c * (b * grad_e + e * unit(kPd))};
  }
  {
    const double c = h_d * h_d * ga * ga;
    t[3] = {c * e * a * a, c * (a * a * grad_e + 2.0 * e * a * unit(kAd))};
  }
  {
    const double c = 2.0 * h_d * h_d * ga * gp;
    t[4] = {c * e * a * b, c * (a * b * grad_e + e * b * unit(kAd) + e * a * unit(kPd))};
  }
  {
    const double c = h_d * h_d * gp * gp;
    t[5] = {c * e * b * b, c * (b * b * grad_e + 2.0 * e * b * unit(kPd))};
  }
  return t;
}

std::array<double, 6> rate_items_exact(const Scenario& sc, const ProblemSpec& spec,
                                       const Counts& c, double t_eh, double p_b) {
  const SystemParams& p = sc.params;
  const Evaluation ev = evaluate(sc, spec, c, split_of(p, t_eh), p_b);
  const double e = ev.harvested;
  const double h_d = cascade_d2d(spec, sc.gains);
  const double hsd = sc.gains.h_sd;
  const double x = active_unit_gain(p, spec.units) * c.active_d2d * h_d;
  const double y = passive_unit_gain(spec.units) * c.passive_d2d * h_d;
  return {e * hsd * hsd, 2 * e * hsd * x, 2 * e * hsd * y, e * x * x, 2 * e * x * y, e * y * y};
}

double causality_bound(const Scenario& sc, const ProblemSpec& spec, const Counts& anchor,
                       const Schedule& s, double p_b) {
  const SystemParams& p = sc.params;
  const Evaluation ev = evaluate(sc, spec, anchor, s, p_b);
  const double g = sc.gains.h_bs + ev.gain_eh;
  const double f11 = s.t_eh * p.bw_2 / (s.t_d2d * bw_d2d(spec, p));
  const double f12 = ev.harvested / (ev.rates.sigma_m2_sq * s.t_d2d);
  const double f13 = p_b / ev.rates.sigma_m1_sq;
  if (!(f12 > 0.0)) return kInf;
  const double lhs = std::expm1(f11 * std::log1p(f13 * g * g));
  const double amp = std::sqrt(lhs / f12);
  const double h_d = cascade_d2d(spec, sc.gains);
  if (h_d <= 0.0) return amp <= sc.gains.h_sd ? -kInf : kInf;
  return (amp - sc.gains.h_sd) / h_d;
}

double bs_rate_bound(const Scenario& sc, const ProblemSpec& spec, const Counts& anchor,
                     double p_b) {
  const SystemParams& p = sc.params;
  const Evaluation ev = evaluate(sc, spec, anchor, split_of(p, 0.5 * p.t_frame), p_b);
  if (!(p_b > 0.0)) return kInf;
  const double amp = std::sqrt(snr_threshold(p.rate_thresh_bs) * ev.rates.sigma_m1_sq / p_b);
  const double h_eh = cascade_eh(spec, sc.gains);
  if (h_eh <= 0.0) return amp <= sc.gains.h_bs ? -kInf : kInf;
  return (amp - sc.gains.h_bs) / h_eh;
}

lp::SubproblemLP build_count_lp(const Scenario& sc, const ProblemSpec& spec,
                                const FeasiblePoint& point, const Schedule& s, double p_b) {
  const SystemParams& p = sc.params;
  const ChannelRealization& h = sc.gains;
  const auto& names = spec.module_form ? kModuleNames : kElementNames;
  lp::SubproblemLP lp({names.begin(), names.end()});
  const int n = p.n_total;
  const long a_max = max_units(n, spec.units.active);
  const long p_max = max_units(n, spec.units.passive);
  lp.lower = Eigen::VectorXd::Zero(6);
  lp.upper.resize(6);
  lp.upper << a_max, p_max, a_max, p_max, a_max, p_max;
  lp.integer.assign(6, true);

  const Counts& f = point.counts;
  const Eigen::VectorXd xf = to_vector(f);
  const Evaluation ev = evaluate(sc, spec, f, s, p_b);

  const double c_a = spec.units.active * (p.p_sc + p.p_dc);
  const double c_p = spec.units.passive * p.p_sc;
  lp.objective = Eigen::VectorXd::Zero(6);
  lp.objective(kAeh) = s.t_eh * c_a;
  lp.objective(kPeh) = s.t_eh * c_p;
  lp.objective(kAd) = s.t_d2d * c_a;
  lp.objective(kPd) = s.t_d2d * c_p;
  lp.objective_constant = s.t_eh * ev.power.p_out_eh / p.amp_efficiency +
                          s.t_d2d * ev.power.p_out_d2d / p.amp_efficiency;

  Eigen::VectorXd cap = Eigen::VectorXd::Zero(6);
  cap(kA) = spec.units.active;
  cap(kP) = spec.units.passive;
  lp.add(cap, lp::Sense::LessEqual, n, "capacity");
  lp.add(unit(kAeh) - unit(kA), lp::Sense::LessEqual, 0.0, "couple_active_eh");
  lp.add(unit(kPeh) - unit(kP), lp::Sense::LessEqual, 0.0, "couple_passive_eh");
  lp.add(unit(kAd) - unit(kA), lp::Sense::LessEqual, 0.0, "couple_active_d2d");
  lp.add(unit(kPd) - unit(kP), lp::Sense::LessEqual, 0.0, "couple_passive_d2d");

  const Eigen::VectorXd w_eh = weight_vector(p, spec, true);
  const Eigen::VectorXd w_d = weight_vector(p, spec, false);
  const double h_eh = cascade_eh(spec, h);
  const double l_max = active_unit_gain(p, spec.units) * a_max;

  const auto& k = spec.constraints;
  if (k.harvest) {
    const double f1 = spec.module_form ? harvest_rhs_module_form(p, s.t_eh, p_b)
                                       : harvest_rhs(p, s.t_eh, p_b);
    if (f1 == kInf) throw InfeasibleLinearization("harvest threshold unreachable at this slot and power");
    if (f1 > -kInf) {
      const double best = h.h_bs + h_eh * l_max;
      if (best * best < f1) throw InfeasibleLinearization("harvest threshold unreachable with the full panel");
      const double l_f = w_eh.dot(xf);
      lp.add((2.0 * h.h_bs * h_eh + h_eh * h_eh * l_f) * w_eh, lp::Sense::GreaterEqual,
             f1 - h.h_bs * h.h_bs, "harvest");
    }
  }
  if (k.d2d_rate && p.rate_thresh_d2d > 0.0) {
    const auto items = rate_items(sc, spec, f, s.t_eh, p_b);
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(6);
    double constant = 0.0;
    for (const auto& it : items) {
      coef += it.gradient;
      constant += it.value - it.gradient.dot(xf);
    }
    const double c = snr_threshold(p.rate_thresh_d2d) * s.t_d2d;
    const double rho = per_element(h.norm_hrd_sq, h.n_elements);
    coef(kAd) -= c * p.sigma2_sq * rho * noise_weight(p, spec, 1, 0);
    coef(kPd) -= c * p.sigma2_sq * rho * noise_weight(p, spec, 0, 1);
    lp.add(coef, lp::Sense::GreaterEqual, c * p.sigma1_sq - constant, "d2d_rate");
  }
  if (k.causality) {
    const double bound = causality_bound(sc, spec, f, s, p_b);
    if (bound == kInf || bound > l_max) throw InfeasibleLinearization("causality cannot be met at this anchor");
    if (bound > 0.0) lp.add(w_d, lp::Sense::GreaterEqual, bound, "causality");
  }
  if (k.bs_rate) {
    const double bound = bs_rate_bound(sc, spec, f, p_b);
    if (bound == kInf || bound > l_max) throw InfeasibleLinearization("BS rate floor cannot be met");
    if (bound > 0.0) lp.add(w_eh, lp::Sense::GreaterEqual, bound, "bs_rate");
  }
  return lp;
}

lp::SubproblemLP build_p1a_constraints(const Scenario& sc, const FeasiblePoint& point,
                                       const Schedule& s, double p_b) {
  return build_count_lp(sc, ProblemSpec::elements(), point, s, p_b);
}

lp::SubproblemLP build_p2a_constraints(const Scenario& sc, const FeasiblePoint& point,
                                       const Schedule& s, double p_b, UnitSizes sizes) {
  return build_count_lp(sc, ProblemSpec::modules(sizes, sc.params.enforce_bs_rate), point, s, p_b);
}

namespace {

// Split-independent quantities at fixed counts and p_b.
struct SplitTerms {
  double sigmoid = 0.0;   // e_nl / (Y T')
  double g_d2d_sq = 0.0;  // (h_sd + G'')^2
  double sigma_e_sq = 0.0;
  double cost_eh = 0.0;   // energy per second of T'
  double cost_d2d = 0.0;  // energy per second of T''
};

SplitTerms split_terms(const Scenario& sc, const ProblemSpec& spec, const Counts& c, double p_b) {
  const SystemParams& p = sc.params;
  const Evaluation ev = evaluate(sc, spec, c, split_of(p, 0.5 * p.t_frame), p_b);
  SplitTerms t;
  t.sigmoid = logistic(ev.p_linear, p);
  const double g = sc.gains.h_sd + ev.gain_d2d;
  t.g_d2d_sq = g * g;
  t.sigma_e_sq = ev.rates.sigma_m2_sq;
  const double amp_d2d = p.amp_factor * p.amp_factor * p.harvest_max * t.sigmoid *
                         sc.gains.norm_hsr_sq / p.amp_efficiency;
  t.cost_eh = ev.power.p_passive_eh + ev.power.p_active_eh + amp_d2d;
  t.cost_d2d = ev.power.p_passive_d2d +
               static_cast<double>(spec.units.active) * c.active_d2d * (p.p_sc + p.p_dc) +
               p.sigma2_sq / p.amp_efficiency;
  return t;
}

}  // namespace

lp::SubproblemLP build_p1b(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                           double p_b) {
  const SystemParams& p = sc.params;
  const SplitTerms t = split_terms(sc, spec, c, p_b);
  lp::SubproblemLP lp({"t_eh", "t_d2d"});
  const auto [lo, hi] = slot_bounds(p);
  lp.lower = Eigen::Vector2d(lo, lo);
  lp.upper = Eigen::Vector2d(hi, hi);
  lp.integer.assign(2, false);
  lp.objective = Eigen::Vector2d(t.cost_eh, t.cost_d2d);
  lp.add(Eigen::Vector2d(1.0, 1.0), lp::Sense::Equal, p.t_frame, "frame");
  if (spec.constraints.harvest)
    lp.add(Eigen::Vector2d(p.harvest_max * t.sigmoid, 0.0), lp::Sense::GreaterEqual, p.e_min,
           "harvest");
  if (spec.constraints.d2d_rate) {
    const double c_snr = snr_threshold(p.rate_thresh_d2d);
    lp.add(Eigen::Vector2d(p.harvest_max * t.sigmoid * t.g_d2d_sq, -c_snr * t.sigma_e_sq),
           lp::Sense::GreaterEqual, 0.0, "d2d_rate");
  }
  return lp;
}

SplitProgram build_p2b(const Scenario& sc, const ProblemSpec& spec, const Counts& c, double p_b,
                       double t_anchor) {
  const SystemParams& p = sc.params;
  const SplitTerms t = split_terms(sc, spec, c, p_b);
  SplitProgram prog;
  std::tie(prog.t_lo, prog.t_hi) = slot_bounds(p);
  prog.t_frame = p.t_frame;
  prog.slope = t.cost_eh - t.cost_d2d;
  prog.intercept = t.cost_d2d * p.t_frame;
  const double rate_e = p.harvest_max * t.sigmoid;  // dE/dT'
  prog.harvest_t_min = 0.0;
  if (spec.constraints.harvest)
    prog.harvest_t_min = rate_e > 0.0 ? p.e_min / rate_e : kInf;
  if (spec.constraints.d2d_rate) {
    const double c_snr = snr_threshold(p.rate_thresh_d2d) * t.sigma_e_sq;
    const double denom = rate_e * t.g_d2d_sq + c_snr;
    prog.harvest_t_min = std::max(prog.harvest_t_min, denom > 0.0 ? c_snr * p.t_frame / denom : kInf);
  }
  if (spec.constraints.causality) {
    const Evaluation ev = evaluate(sc, spec, c, split_of(p, t_anchor), p_b);
    prog.has_lse = true;
    prog.f14 = ev.harvested * t.g_d2d_sq / t.sigma_e_sq;
    prog.f15 = ev.rates.rate_bs / bw_d2d(spec, p);
  }
  return prog;
}

double lse_margin(const SplitProgram& g, double t) {
  const double td = g.t_frame - t;
  return td * std::log2(1.0 + g.f14 / td) - t * g.f15;
}

double solve_split(const SplitProgram& g) {
  double lo = std::max(g.t_lo, g.harvest_t_min);
  double hi = g.t_hi;
  if (!(lo <= hi)) throw Infeasible("no admissible slot split");
  if (g.has_lse) {
    if (lse_margin(g, lo) < 0.0) throw Infeasible("causality surrogate violated on the whole interval");
    if (lse_margin(g, hi) < 0.0) {
      double a = lo, b = hi;
      while (b - a > 1e-6 * g.t_frame) {
        const double m = 0.5 * (a + b);
        (lse_margin(g, m) >= 0.0 ? a : b) = m;
      }
      hi = a;
    }
  }
  return g.slope < 0.0 ? hi : lo;
}

namespace {

PowerProgram power_common(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                          const Schedule& s) {
  const SystemParams& p = sc.params;
  const ChannelRealization& h = sc.gains;
  const Evaluation ev = evaluate(sc, spec, c, s, 1.0);
  const double g = h.h_bs + ev.gain_eh;
  const double g2 = g * g;
  PowerProgram prog;
  prog.upper = p.p_b_max;
  prog.causality_cap = kInf;
  prog.slope = s.t_eh * p.amp_factor * p.amp_factor * h.norm_hbr_sq / p.amp_efficiency;
  // Sigmoid input needed to harvest `energy` within T'.
  auto power_for = [&](double energy) {
    double p_req;
    try {
      p_req = harvest::required_receive_power(energy, s.t_eh, p.harvest_max, p.y1, p.y2);
    } catch (const DomainError&) {
      return kInf;
    }
    if (p_req <= 0.0) return 0.0;
    return g2 > 0.0 ? p_req * p.sigma1_sq / (p.zeta * g2) : kInf;
  };
  double lower = 0.0;
  if (spec.constraints.harvest) lower = std::max(lower, power_for(p.e_min));
  if (spec.constraints.d2d_rate) {
    const double gd = h.h_sd + ev.gain_d2d;
    const double e_req = snr_threshold(p.rate_thresh_d2d) * ev.rates.sigma_m2_sq * s.t_d2d / (gd * gd);
    lower = std::max(lower, power_for(e_req));
  }
  if (spec.constraints.bs_rate) {
    const double need = snr_threshold(p.rate_thresh_bs) * ev.rates.sigma_m1_sq;
    lower = std::max(lower, g2 > 0.0 ? need / g2 : kInf);
  }
  prog.lower = lower;
  return prog;
}

}  // namespace

PowerProgram build_p1c(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                       const Schedule& s) {
  return power_common(sc, spec, c, s);
}

PowerProgram build_p2c(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                       const Schedule& s, double p_b_anchor) {
  const SystemParams& p = sc.params;
  PowerProgram prog = power_common(sc, spec, c, s);
  if (!spec.constraints.causality) return prog;
  const Evaluation ev = evaluate(sc, spec, c, s, p_b_anchor);
  const double g = sc.gains.h_bs + ev.gain_eh;
  const double gd = sc.gains.h_sd + ev.gain_d2d;
  prog.f17 = g * g / ev.rates.sigma_m1_sq;
  prog.f18 = s.t_d2d * bw_d2d(spec, p) / (s.t_eh * p.bw_2) *
             std::log2(1.0 + ev.harvested * gd * gd / (s.t_d2d * ev.rates.sigma_m2_sq));
  prog.causality_cap = prog.f17 > 0.0 ? std::expm1(prog.f18 * std::log(2.0)) / prog.f17 : kInf;
  prog.upper = std::min(prog.upper, prog.causality_cap);
  return prog;
}

double solve_power(const PowerProgram& g) {
  if (!(g.lower <= g.upper * (1.0 + 1e-12))) throw Infeasible("BS power bounds cross");
  return g.lower;
}

namespace {

double violation_measure(const Evaluation& ev, const ProblemSpec& spec, const SystemParams& p,
                         const Schedule& s) {
  const auto& k = spec.constraints;
  const double w_d = spec.module_form ? p.bw_3 : p.bw_1;
  double v = 0.0;
  if (k.harvest) v += std::max(0.0, -ev.harvest_slack / p.e_min);
  if (k.d2d_rate) v += std::max(0.0, -ev.d2d_rate_slack / (p.rate_thresh_d2d * w_d));
  if (k.bs_rate) v += std::max(0.0, -ev.bs_rate_slack / (p.rate_thresh_bs * p.bw_2));
  if (k.causality)
    v += std::max(0.0, -ev.causality_slack / std::max(1.0, s.t_eh * ev.rates.rate_bs));
  return v;
}

void fix_totals(Counts& c) {
  c.active = std::max(c.active_eh, c.active_d2d);
  c.passive = std::max(c.passive_eh, c.passive_d2d);
}

long used(const Counts& c, const ProblemSpec& spec) {
  return spec.units.active * c.active + spec.units.passive * c.passive;
}

}  // namespace

Counts relax_and_round(const Eigen::VectorXd& x, const Scenario& sc, const ProblemSpec& spec,
                       const Checker& checker) {
  const SystemParams& p = sc.params;
  auto up = [&](int i) {
    const double r = std::round(x(i));
    const double v = std::abs(x(i) - r) <= 1e-6 * std::max(1.0, r) ? r : std::ceil(x(i));
    return std::max(0L, static_cast<long>(v));
  };
  Counts c{0, 0, up(kAeh), up(kPeh), up(kAd), up(kPd)};
  fix_totals(c);
  while (used(c, spec) > p.n_total) {
    long& slot_p = c.passive_eh >= c.passive_d2d ? c.passive_eh : c.passive_d2d;
    long& slot_a = c.active_eh >= c.active_d2d ? c.active_eh : c.active_d2d;
    if (c.passive > 0) --slot_p; else --slot_a;
    fix_totals(c);
  }

  Evaluation ev = checker(c);
  const int cap = 4 * p.n_total + 16;
  for (int iter = 0; iter < cap && !ev.feasible; ++iter) {
    const double v_now = violation_measure(ev, spec, p, {1.0, 1.0});
    std::vector<Counts> moves;
    auto push = [&](Counts m) {
      fix_totals(m);
      if (used(m, spec) <= p.n_total) moves.push_back(m);
    };
    Counts m = c;
    m.passive_eh++; push(m);
    m = c; m.passive_d2d++; push(m);
    m = c; m.active_eh++; push(m);
    m = c; m.active_d2d++; push(m);
    if (c.passive_eh > 0) { m = c; m.passive_eh--; m.active_eh++; push(m); }
    if (c.passive_d2d > 0) { m = c; m.passive_d2d--; m.active_d2d++; push(m); }

    const Counts* best_feasible = nullptr;
    Evaluation best_feasible_ev;
    const Counts* best_step = nullptr;
    Evaluation best_step_ev;
    double best_score = 0.0;
    std::vector<Evaluation> evs;
    evs.reserve(moves.size());
    for (const Counts& mv : moves) evs.push_back(checker(mv));
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const Evaluation& e = evs[i];
      if (e.feasible) {
        if (!best_feasible || e.energy < best_feasible_ev.energy) {
          best_feasible = &moves[i];
          best_feasible_ev = e;
        }
        continue;
      }
      const double gain = v_now - violation_measure(e, spec, p, {1.0, 1.0});
      if (gain <= 0.0) continue;
      const double score = gain / std::max(e.energy - ev.energy, 1e-300);
      if (!best_step || score > best_score) {
        best_step = &moves[i];
        best_step_ev = e;
        best_score = score;
      }
    }
    if (best_feasible) {
      c = *best_feasible;
      ev = best_feasible_ev;
    } else if (best_step) {
      c = *best_step;
      ev = best_step_ev;
    } else {
      throw RoundingFailed("no integer neighbour reduces the constraint violation");
    }
  }
  if (!ev.feasible) throw RoundingFailed("rounding repair did not reach a feasible point");
  return c;
}

OracleResult brute_force_oracle(const Scenario& sc, const ProblemSpec& spec, OracleGrid grid) {
  const SystemParams& p = sc.params;
  const ChannelRealization& h = sc.gains;
  const auto& k = spec.constraints;
  const auto [t_lo, t_hi] = slot_bounds(p);
  const int nt = std::max(grid.time_points, 2);
  const int np = std::max(grid.power_points, 2);
  std::vector<double> pw(np);
  for (int j = 0; j < np; ++j) pw[j] = p.p_b_max * j / (np - 1);

  const long a_max = max_units(p.n_total, spec.units.active);
  const long p_max = max_units(p.n_total, spec.units.passive);
  struct Pair { long a, b; double l; };
  std::vector<Pair> pairs;
  for (long a = 0; a <= a_max; ++a)
    for (long b = 0; b <= p_max; ++b)
      if (spec.units.active * a + spec.units.passive * b <= p.n_total)
        pairs.push_back({a, b, weighted_count(p, spec.units, a, b)});

  const double h_eh = cascade_eh(spec, h);
  const double h_d = cascade_d2d(spec, h);
  const double rho_rs = per_element(h.norm_hrs_sq, h.n_elements);
  const double rho_rd = per_element(h.norm_hrd_sq, h.n_elements);
  const double wd = bw_d2d(spec, p);
  const double c_a = spec.units.active * (p.p_sc + p.p_dc);
  const double c_p = spec.units.passive * p.p_sc;
  const double amp2 = p.amp_factor * p.amp_factor;
  const double d2d_req = p.rate_thresh_d2d * wd;
  const double bs_req = p.rate_thresh_bs * p.bw_2;
  constexpr double tol = 1e-9;

  double best_energy = kInf;
  OracleResult out;
  bool found = false;
  std::vector<double> e(np), rb(np);

  for (int it = 0; it < nt; ++it) {
    const double t1 = t_lo + (t_hi - t_lo) * it / (nt - 1);
    const double t2 = p.t_frame - t1;
    for (const Pair& eh : pairs) {
      const double g = h.h_bs + h_eh * eh.l;
      const double s1 = p.sigma2_sq * noise_weight(p, spec, eh.a, eh.b) * rho_rs + p.sigma1_sq;
      for (int j = 0; j < np; ++j) {
        e[j] = harvest::harvested_energy(p.zeta * pw[j] * g * g / p.sigma1_sq, t1, p.harvest_max,
                                         p.y1, p.y2);
        rb[j] = p.bw_2 * std::log2(1.0 + pw[j] * g * g / s1);
      }
      int j0 = 0;
      if (k.harvest) {
        j0 = static_cast<int>(std::lower_bound(e.begin(), e.end(), p.e_min * (1 - tol)) - e.begin());
        if (j0 == np) continue;
      }
      if (k.bs_rate) {
        const int jb = static_cast<int>(std::lower_bound(rb.begin(), rb.end(), bs_req * (1 - tol)) - rb.begin());
        j0 = std::max(j0, jb);
        if (j0 == np) continue;
      }
      const double base_eh = t1 * (eh.a * c_a + eh.b * c_p + p.sigma2_sq / p.amp_efficiency) +
                             t2 * p.sigma2_sq / p.amp_efficiency;
      for (const Pair& d : pairs) {
        const long a_tot = std::max(eh.a, d.a), b_tot = std::max(eh.b, d.b);
        if (spec.units.active * a_tot + spec.units.passive * b_tot > p.n_total) continue;
        const double base = base_eh + t2 * (d.a * c_a + d.b * c_p);
        auto energy_at = [&](int j) {
          return base + t1 * amp2 * pw[j] * h.norm_hbr_sq / p.amp_efficiency +
                 amp2 * e[j] * h.norm_hsr_sq / p.amp_efficiency;
        };
        if (energy_at(j0) >= best_energy) continue;
        const double gd = h.h_sd + h_d * d.l;
        const double s2 = p.sigma2_sq * noise_weight(p, spec, d.a, d.b) * rho_rd + p.sigma1_sq;
        auto rd = [&](int j) { return wd * std::log2(1.0 + e[j] / t2 * gd * gd / s2); };
        int j = j0;
        if (k.d2d_rate) {
          const double e_req = snr_threshold(p.rate_thresh_d2d) * s2 * t2 / (gd * gd);
          j = std::max(j, static_cast<int>(std::lower_bound(e.begin(), e.end(), e_req * (1 - 1e-6)) - e.begin()));
          while (j < np && rd(j) < d2d_req * (1 - tol)) ++j;
        }
        for (; j < np; ++j) {
          const double en = energy_at(j);
          if (en >= best_energy) break;
          if (k.causality) {
            const double sent = t1 * rb[j];
            if (t2 * rd(j) - sent < -1e-9 * std::max(1.0, sent)) continue;
          }
          const Counts c{a_tot, b_tot, eh.a, eh.b, d.a, d.b};
          const Evaluation ev = evaluate(sc, spec, c, {t1, t2}, pw[j]);
          ++out.candidates;
          if (!ev.feasible) continue;
          if (ev.energy < best_energy) {
            best_energy = ev.energy;
            out.counts = c;
            out.schedule = {t1, t2};
            out.p_b = pw[j];
            out.evaluation = ev;
            found = true;
          }
          break;
        }
      }
    }
  }
  if (!found) throw NoFeasiblePoint("no grid point satisfies the constraints");
  return out;
}

}  // namespace risopt::sca
