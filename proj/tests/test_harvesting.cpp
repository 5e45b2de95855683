#include <cmath>
#include <random>

#include "doctest.h"
#include "risopt/errors.hpp"
#include "risopt/harvesting.hpp"
#include "risopt/units.hpp"

using namespace risopt;

TEST_CASE("sigmoid midpoint is exactly half the cap") {
  for (double t : {0.01, 0.12, 0.19}) {
    const double e = harvest::harvested_energy(0.05, t, 1.0, 150.0, 0.05);
    CHECK(e == 0.5 * t);
  }
}

TEST_CASE("harvest is increasing and saturates below Y T'") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> p(0.0, 10.0);
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double e = harvest::harvested_energy(0.01 * i, 0.1, 1.0, 150.0, 0.05);
    CHECK(e >= prev);
    prev = e;
  }
  for (int i = 0; i < 1000; ++i) CHECK(harvest::harvested_energy(p(rng), 0.1, 1.0, 150.0, 0.05) <= 0.1);
  CHECK(harvest::harvest(1.0, 0.1, 1.0, 150.0, 0.05).saturated);
  CHECK_FALSE(harvest::harvest(0.0, 0.1, 1.0, 150.0, 0.05).saturated);
}

TEST_CASE("inversion round-trips") {
  for (double e : {1e-4, 3e-3, 0.05, 0.09}) {
    const double p = harvest::required_receive_power(e, 0.1, 1.0, 150.0, 0.05);
    CHECK(harvest::harvested_energy(p, 0.1, 1.0, 150.0, 0.05) == doctest::Approx(e).epsilon(1e-12));
  }
  CHECK_THROWS_AS(harvest::required_receive_power(0.2, 0.1, 1.0, 150.0, 0.05), DomainError);
  CHECK(std::isinf(harvest::required_receive_power(0.0, 0.1, 1.0, 150.0, 0.05)));
}

TEST_CASE("linear receive power") {
  CHECK(harvest::linear_receive_power(2.0, 1.0, 1.0, 0.5, 4.0) == doctest::Approx(1.0));
}

TEST_CASE("unit conversion") {
  CHECK(units::dbm_to_watts(-10.0) == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(units::dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(units::watts_to_dbm(units::dbm_to_watts(-121.45)) == doctest::Approx(-121.45));
}
