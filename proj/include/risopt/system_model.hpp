#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "risopt/units.hpp"

namespace risopt {

/// Scenario constants. All quantities in SI units (W, J, s, Hz); thresholds in bit/s/Hz.
struct SystemParams {
  int n_total = 300;                 // N
  double amp_factor = 2.5;           // a_m
  double amp_efficiency = 0.5;       // v
  double p_sc = units::dbm_to_watts(-10.0);
  double p_dc = units::dbm_to_watts(-5.0);
  double zeta = 0.4;
  double harvest_max = 1.0;          // Y
  double y1 = 150.0;                 // 1/W
  double y2 = 0.05;                  // W
  double e_min = 3e-3;               // e_m
  double rate_thresh_d2d = 0.1;      // R_d^t
  double rate_thresh_bs = 0.1;       // R_b^t
  double bw_1 = 180e3;
  double bw_2 = 180e3;
  double bw_3 = 180e3;
  double sigma1_sq = units::dbm_to_watts(-121.45);
  double sigma2_sq = units::dbm_to_watts(-121.45);
  double t_frame = 0.2;
  double p_b_max = 1.0;
  double epsilon = 1e-3;
  int max_iters = 10;
  std::uint64_t seed = 1;
  // Shortest admissible slot, as a fraction of the frame.
  double min_slot_fraction = 0.05;
  // Require R_b >= R_b^t on the BS->S link in the module scenario.
  bool enforce_bs_rate = true;
};

/// Large-scale geometry and fading statistics of the five links.
struct ChannelParams {
  double d1 = 1000.0;      // BS - S
  double d2 = 800.0;       // S - D
  double delta1 = 4.0;
  double delta2 = 4.9;
  double rician_e = 3.0;   // BS - S
  double rician_s = 3.0;   // S - D
  double wavelength = units::kSpeedOfLight / 2e9;
  // RIS links (BS - RIS, RIS - S, RIS - D) share one Rician factor.
  double d_br = 10.0;
  double d_rs = 800.0;
  double d_rd = 4.0;
  double delta_br = 2.2;
  double delta_rs = 4.0;
  double delta_rd = 2.0;
  double rician_ris = 3.0;
};

/// Effective, phase-aligned channel magnitudes for one fading draw.
struct ChannelRealization {
  double h_bs = 0.0;
  double h_sd = 0.0;
  double h1 = 0.0;  // mean_n |[h_rs]_n [h_br]_n|, harvesting cascade (element scenario)
  double h2 = 0.0;  // mean_n |[h_rd]_n [h_rs]_n|, D2D cascade (element scenario)
  double h3 = 0.0;  // module-scenario counterpart of h1
  double h4 = 0.0;  // module-scenario counterpart of h2
  double norm_hbr_sq = 0.0;
  double norm_hsr_sq = 0.0;
  double norm_hrs_sq = 0.0;
  double norm_hrd_sq = 0.0;
  int n_elements = 0;
};

struct Scenario {
  SystemParams params;
  ChannelParams channel;
  ChannelRealization gains;
};

struct Violation {
  std::string field;
  std::string reason;
};

/// Path-loss factor beta = 16 pi^2 d^delta / lambda^2.
double path_loss(double distance, double exponent, double wavelength);

/// Every violated invariant; empty when the pair is admissible.
std::vector<Violation> check(const SystemParams& params, const ChannelParams& channel);

/// Throws InvalidParam naming the first violated field.
void validate(const SystemParams& params, const ChannelParams& channel);

/// Draws one Rician realization of all links. Deterministic in `seed`.
ChannelRealization realize_channel(const ChannelParams& channel, const SystemParams& params,
                                   std::uint64_t seed);

/// validate + realize_channel(params.seed).
Scenario make_scenario(const SystemParams& params, const ChannelParams& channel);

}  // namespace risopt
