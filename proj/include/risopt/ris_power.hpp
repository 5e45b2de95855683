#pragma once

#include "risopt/system_model.hpp"

namespace risopt::power {

struct PowerBreakdown {
  double p_passive_eh = 0.0;
  double p_passive_d2d = 0.0;
  double p_active_eh = 0.0;
  double p_active_d2d = 0.0;
  double p_out_eh = 0.0;
  double p_out_d2d = 0.0;
  double p_in = 0.0;
  double total_energy = 0.0;
};

/// Switch/control power of `count` passive elements.
double passive_power(long count, double p_sc);

/// Output-power-dependent amplifier consumption p_out / v.
double amplifier_output_dependent(double p_out, double v);

/// p_ct during harvesting: m (p_sc + p_dc) + (a_m^2 p_b ||h_br||^2 + sigma2^2) / v.
double active_power_eh(long m_eh, double p_b, double norm_hbr_sq, const SystemParams& params);

/// p_ct during D2D: the amplifier sees the harvested energy spent over `t_d2d`.
double active_power_d2d(long m_d2d, double harvested, double t_d2d, double norm_hsr_sq,
                        const SystemParams& params);

struct SlotPowers {
  double passive = 0.0;
  double active = 0.0;
};

/// T' (p_ss' + p_ct') + T'' (p_ss'' + p_ct'').
double total_ris_energy(double t_eh, double t_d2d, const SlotPowers& eh, const SlotPowers& d2d);

}  // namespace risopt::power
