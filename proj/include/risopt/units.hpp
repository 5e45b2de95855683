#pragma once

#include <cmath>

namespace risopt::units {

template <typename Scalar>
inline Scalar dbm_to_watts(Scalar dbm) {
  return std::pow(Scalar(10), (dbm - Scalar(30)) / Scalar(10));
}

template <typename Scalar>
Scalar watts_to_dbm(Scalar watts) {
  return Scalar(10) * std::log10(watts) + Scalar(30);
}

inline constexpr double kSpeedOfLight = 299792458.0;

}  // namespace risopt::units
