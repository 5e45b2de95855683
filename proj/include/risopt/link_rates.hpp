#pragma once

#include <algorithm>
#include <cmath>

#include "risopt/errors.hpp"

namespace risopt::rates {

struct RateResult {
  double rate_bs = 0.0;
  double rate_d2d = 0.0;
  double snr_bs = 0.0;
  double snr_d2d = 0.0;
  double sigma_e_sq = 0.0;
  double sigma_m1_sq = 0.0;
  double sigma_m2_sq = 0.0;
};

template <typename Scalar>
Scalar shannon(Scalar bw, Scalar snr) {
  return bw * std::log2(Scalar(1) + snr);
}

/// S -> D rate when the harvested energy is radiated over `t_d2d`.
template <typename Scalar>
Scalar d2d_rate(Scalar harvested, Scalar t_d2d, Scalar h_sd, Scalar gain_sum, Scalar sigma_eff_sq,
                Scalar bw) {
  if (!(t_d2d > Scalar(0))) throw DomainError("D2D slot length must be positive");
  if (!(sigma_eff_sq > Scalar(0))) throw DomainError("effective noise must be positive");
  const Scalar amplitude = h_sd + gain_sum;
  return shannon(bw, (harvested / t_d2d) * amplitude * amplitude / sigma_eff_sq);
}

/// BS -> S rate; `gain_sum` is L(i') h3.
template <typename Scalar>
Scalar bs_rate(Scalar p_b, Scalar h_bs, Scalar gain_sum, Scalar sigma_m1_sq, Scalar bw) {
  if (!(sigma_m1_sq > Scalar(0))) throw DomainError("effective noise must be positive");
  const Scalar amplitude = h_bs + gain_sum;
  return shannon(bw, p_b * amplitude * amplitude / sigma_m1_sq);
}

struct CausalityCheck {
  bool satisfied = false;
  double slack_bits = 0.0;  // T'' R_d - T' R_b
};

inline CausalityCheck causality_satisfied(double t_eh, double t_d2d, double rate_bs,
                                          double rate_d2d) {
  const double sent = t_eh * rate_bs;
  const double slack = t_d2d * rate_d2d - sent;
  return {slack >= -1e-9 * std::max(1.0, sent), slack};
}

}  // namespace risopt::rates
