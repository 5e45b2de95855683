#include <cmath>

#include "doctest.h"
#include "risopt/errors.hpp"
#include "risopt/link_rates.hpp"

using namespace risopt;

TEST_CASE("shannon rate") {
  CHECK(rates::shannon(180e3, 1.0) == doctest::Approx(180e3));
  CHECK(rates::shannon(1.0, 0.0) == 0.0);
}

TEST_CASE("d2d rate uses harvested power over the slot") {
  const double r = rates::d2d_rate(0.02, 0.01, 1.0, 1.0, 8.0, 1.0);
  CHECK(r == doctest::Approx(std::log2(2.0)));
  CHECK_THROWS_AS(rates::d2d_rate(0.02, 0.0, 1.0, 1.0, 8.0, 1.0), DomainError);
  CHECK_THROWS_AS(rates::d2d_rate(0.02, 0.1, 1.0, 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("rates grow with the RIS gain") {
  const double without = rates::bs_rate(1.0, 1e-8, 0.0, 1e-15, 180e3);
  const double with = rates::bs_rate(1.0, 1e-8, 1e-8, 1e-15, 180e3);
  CHECK(with > without);
}

TEST_CASE("causality slack") {
  const auto ok = rates::causality_satisfied(0.1, 0.1, 10.0, 12.0);
  CHECK(ok.satisfied);
  CHECK(ok.slack_bits == doctest::Approx(0.2));
  CHECK_FALSE(rates::causality_satisfied(0.19, 0.01, 10.0, 100.0).satisfied);
}
