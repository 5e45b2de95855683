#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "risopt/errors.hpp"

namespace risopt::harvest {

template <typename Scalar>
struct HarvestResult {
  Scalar p_linear{};  // sigmoid input
  Scalar energy{};    // joules over the harvesting slot
  bool saturated = false;
};

/// Sigmoid input zeta * p_b * (h_bs + G)^2 / sigma1^2, with G the aligned RIS gain sum.
template <typename Scalar>
Scalar linear_receive_power(Scalar p_b, Scalar h_bs, Scalar cascade_gain, Scalar zeta,
                            Scalar sigma1_sq) {
  const Scalar amplitude = h_bs + cascade_gain;
  return zeta * p_b * amplitude * amplitude / sigma1_sq;
}

/// Logistic harvest model Y t / (1 + exp(-y1 (p - y2))).
template <typename Scalar>
Scalar harvested_energy(Scalar p_linear, Scalar t_eh, Scalar harvest_max, Scalar y1, Scalar y2) {
  const Scalar arg = std::clamp(-y1 * (p_linear - y2), Scalar(-700), Scalar(700));
  return harvest_max * t_eh / (Scalar(1) + std::exp(arg));
}

/// Smallest sigmoid input that yields `e_min` over `t_eh`. Throws DomainError when
/// Y t_eh <= e_min (no input is large enough).
template <typename Scalar>
Scalar required_receive_power(Scalar e_min, Scalar t_eh, Scalar harvest_max, Scalar y1,
                              Scalar y2) {
  const Scalar cap = harvest_max * t_eh;
  if (!(cap > e_min)) throw DomainError("harvest threshold not reachable within the slot");
  if (e_min <= Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
  return y2 - std::log(cap / e_min - Scalar(1)) / y1;
}

template <typename Scalar>
HarvestResult<Scalar> harvest(Scalar p_linear, Scalar t_eh, Scalar harvest_max, Scalar y1,
                              Scalar y2) {
  HarvestResult<Scalar> r;
  r.p_linear = p_linear;
  r.energy = harvested_energy(p_linear, t_eh, harvest_max, y1, y2);
  r.saturated = r.energy >= Scalar(0.99) * harvest_max * t_eh;
  return r;
}

}  // namespace risopt::harvest
