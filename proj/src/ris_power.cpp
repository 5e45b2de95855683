#include "risopt/ris_power.hpp"

#include "risopt/errors.hpp"

namespace risopt::power {

double passive_power(long count, double p_sc) { return static_cast<double>(count) * p_sc; }

double amplifier_output_dependent(double p_out, double v) { return p_out / v; }

double active_power_eh(long m_eh, double p_b, double norm_hbr_sq, const SystemParams& p) {
  const double p_out = p.amp_factor * p.amp_factor * p_b * norm_hbr_sq + p.sigma2_sq;
  return static_cast<double>(m_eh) * (p.p_sc + p.p_dc) +
         amplifier_output_dependent(p_out, p.amp_efficiency);
}

double active_power_d2d(long m_d2d, double harvested, double t_d2d, double norm_hsr_sq,
                        const SystemParams& p) {
  if (!(t_d2d > 0.0)) throw DomainError("D2D slot length must be positive");
  const double p_out = p.amp_factor * p.amp_factor * (harvested / t_d2d) * norm_hsr_sq + p.sigma2_sq;
  return static_cast<double>(m_d2d) * (p.p_sc + p.p_dc) +
         amplifier_output_dependent(p_out, p.amp_efficiency);
}

double total_ris_energy(double t_eh, double t_d2d, const SlotPowers& eh, const SlotPowers& d2d) {
  return t_eh * (eh.passive + eh.active) + t_d2d * (d2d.passive + d2d.active);
}

}  // namespace risopt::power
