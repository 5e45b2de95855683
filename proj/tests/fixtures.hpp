#pragma once

#include <cstdint>

#include "risopt/system_model.hpp"

namespace risopt::fixtures {

/// Small-panel instance used for oracle comparisons.
inline Scenario small_panel(std::uint64_t seed, int n = 20) {
  SystemParams p;
  p.n_total = n;
  p.seed = seed;
  ChannelParams c;
  c.d_rs = 300.0;
  return make_scenario(p, c);
}

inline Scenario defaults(std::uint64_t seed, int n = 300) {
  SystemParams p;
  p.n_total = n;
  p.seed = seed;
  return make_scenario(p, ChannelParams{});
}

}  // namespace risopt::fixtures
