#include "risopt/problem.hpp"

#include <algorithm>

#include "risopt/harvesting.hpp"

namespace risopt {

namespace {
constexpr double kRelTol = 1e-9;
}

ProblemSpec ProblemSpec::elements() { return ProblemSpec{}; }

ProblemSpec ProblemSpec::modules(UnitSizes sizes, bool enforce_bs_rate) {
  ProblemSpec spec;
  spec.units = sizes;
  spec.constraints = {.harvest = true, .d2d_rate = false, .causality = true,
                      .bs_rate = enforce_bs_rate};
  spec.module_form = true;
  return spec;
}

double active_unit_gain(const SystemParams& params, const UnitSizes& units) {
  return params.amp_factor * units.active;
}

double passive_unit_gain(const UnitSizes& units) { return units.passive; }

double weighted_count(const SystemParams& params, const UnitSizes& units, double active,
                      double passive) {
  return active_unit_gain(params, units) * active + passive_unit_gain(units) * passive;
}

double noise_weight(const SystemParams& params, const ProblemSpec& spec, double active,
                    double passive) {
  if (spec.module_form) return weighted_count(params, spec.units, active, passive);
  // Each active element re-radiates its thermal noise with amplitude a_m.
  return params.amp_factor * params.amp_factor * spec.units.active * active +
         spec.units.passive * passive;
}

double per_element(double norm_sq, int n_elements) {
  return n_elements > 0 ? norm_sq / n_elements : 0.0;
}

std::pair<double, double> slot_bounds(const SystemParams& params) {
  const double lo = params.min_slot_fraction * params.t_frame;
  return {lo, params.t_frame - lo};
}

Evaluation evaluate(const Scenario& sc, const ProblemSpec& spec, const Counts& c,
                    const Schedule& s, double p_b) {
  const SystemParams& p = sc.params;
  const ChannelRealization& h = sc.gains;
  const UnitSizes& u = spec.units;
  Evaluation ev;

  const double cascade_eh = spec.module_form ? h.h3 : h.h1;
  const double cascade_d2d = spec.module_form ? h.h4 : h.h2;
  ev.gain_eh = weighted_count(p, u, c.active_eh, c.passive_eh) * cascade_eh;
  ev.gain_d2d = weighted_count(p, u, c.active_d2d, c.passive_d2d) * cascade_d2d;

  ev.p_linear = harvest::linear_receive_power(p_b, h.h_bs, ev.gain_eh, p.zeta, p.sigma1_sq);
  ev.harvested = harvest::harvested_energy(ev.p_linear, s.t_eh, p.harvest_max, p.y1, p.y2);

  const double rho_rs = per_element(h.norm_hrs_sq, h.n_elements);
  const double rho_rd = per_element(h.norm_hrd_sq, h.n_elements);
  auto& r = ev.rates;
  r.sigma_m1_sq = p.sigma2_sq * noise_weight(p, spec, c.active_eh, c.passive_eh) * rho_rs + p.sigma1_sq;
  r.sigma_m2_sq = p.sigma2_sq * noise_weight(p, spec, c.active_d2d, c.passive_d2d) * rho_rd + p.sigma1_sq;
  r.sigma_e_sq = r.sigma_m2_sq;
  const double bw_d2d = spec.module_form ? p.bw_3 : p.bw_1;
  const double bw_bs = p.bw_2;
  r.rate_d2d = rates::d2d_rate(ev.harvested, s.t_d2d, h.h_sd, ev.gain_d2d, r.sigma_m2_sq, bw_d2d);
  r.rate_bs = rates::bs_rate(p_b, h.h_bs, ev.gain_eh, r.sigma_m1_sq, bw_bs);
  const double a_d2d = h.h_sd + ev.gain_d2d;
  const double a_bs = h.h_bs + ev.gain_eh;
  r.snr_d2d = (ev.harvested / s.t_d2d) * a_d2d * a_d2d / r.sigma_m2_sq;
  r.snr_bs = p_b * a_bs * a_bs / r.sigma_m1_sq;

  auto& pw = ev.power;
  const long passive_eh = static_cast<long>(u.passive) * c.passive_eh;
  const long passive_d2d = static_cast<long>(u.passive) * c.passive_d2d;
  const long active_eh = static_cast<long>(u.active) * c.active_eh;
  const long active_d2d = static_cast<long>(u.active) * c.active_d2d;
  pw.p_passive_eh = power::passive_power(passive_eh, p.p_sc);
  pw.p_passive_d2d = power::passive_power(passive_d2d, p.p_sc);
  pw.p_active_eh = power::active_power_eh(active_eh, p_b, h.norm_hbr_sq, p);
  pw.p_active_d2d = power::active_power_d2d(active_d2d, ev.harvested, s.t_d2d, h.norm_hsr_sq, p);
  pw.p_in = h.norm_hbr_sq * p_b + p.sigma2_sq;
  pw.p_out_eh = p.amp_factor * p.amp_factor * p_b * h.norm_hbr_sq + p.sigma2_sq;
  pw.p_out_d2d = p.amp_factor * p.amp_factor * (ev.harvested / s.t_d2d) * h.norm_hsr_sq + p.sigma2_sq;
  pw.total_energy = power::total_ris_energy(s.t_eh, s.t_d2d,
                                            {pw.p_passive_eh, pw.p_active_eh},
                                            {pw.p_passive_d2d, pw.p_active_d2d});
  ev.energy = pw.total_energy;

  const double d2d_required = p.rate_thresh_d2d * bw_d2d;
  const double bs_required = p.rate_thresh_bs * bw_bs;
  ev.harvest_slack = ev.harvested - p.e_min;
  ev.d2d_rate_slack = r.rate_d2d - d2d_required;
  ev.bs_rate_slack = r.rate_bs - bs_required;
  const auto causal = rates::causality_satisfied(s.t_eh, s.t_d2d, r.rate_bs, r.rate_d2d);
  ev.causality_slack = causal.slack_bits;

  ev.capacity_ok = c.active >= 0 && c.passive >= 0 && c.active_eh >= 0 && c.passive_eh >= 0 &&
                   c.active_d2d >= 0 && c.passive_d2d >= 0 && c.active_eh <= c.active &&
                   c.active_d2d <= c.active && c.passive_eh <= c.passive &&
                   c.passive_d2d <= c.passive &&
                   static_cast<long>(u.active) * c.active + static_cast<long>(u.passive) * c.passive <=
                       p.n_total;
  ev.harvest_ok = ev.harvested >= p.e_min * (1.0 - kRelTol);
  ev.d2d_rate_ok = r.rate_d2d >= d2d_required * (1.0 - kRelTol);
  ev.bs_rate_ok = r.rate_bs >= bs_required * (1.0 - kRelTol);
  ev.causality_ok = causal.satisfied;

  const auto& k = spec.constraints;
  ev.feasible = ev.capacity_ok && (!k.harvest || ev.harvest_ok) && (!k.d2d_rate || ev.d2d_rate_ok) &&
                (!k.bs_rate || ev.bs_rate_ok) && (!k.causality || ev.causality_ok);
  return ev;
}

}  // namespace risopt
