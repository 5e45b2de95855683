#include "doctest.h"
#include "risopt/errors.hpp"
#include "risopt/ris_power.hpp"

using namespace risopt;

TEST_CASE("passive power is linear in the count") {
  CHECK(power::passive_power(0, 1e-4) == 0.0);
  CHECK(power::passive_power(30, 1e-4) == doctest::Approx(3e-3));
}

TEST_CASE("amplifier consumption includes the output term") {
  SystemParams p;
  const double out = p.amp_factor * p.amp_factor * 0.5 * 2e-6 + p.sigma2_sq;
  CHECK(power::active_power_eh(0, 0.5, 2e-6, p) == doctest::Approx(out / p.amp_efficiency));
  CHECK(power::active_power_eh(4, 0.5, 2e-6, p) ==
        doctest::Approx(4 * (p.p_sc + p.p_dc) + out / p.amp_efficiency));
  const double out_d = p.amp_factor * p.amp_factor * (0.01 / 0.02) * 3e-6 + p.sigma2_sq;
  CHECK(power::active_power_d2d(2, 0.01, 0.02, 3e-6, p) ==
        doctest::Approx(2 * (p.p_sc + p.p_dc) + out_d / p.amp_efficiency));
  CHECK_THROWS_AS(power::active_power_d2d(2, 0.01, 0.0, 3e-6, p), DomainError);
}

TEST_CASE("total energy weights the slots") {
  CHECK(power::total_ris_energy(0.1, 0.2, {1.0, 2.0}, {3.0, 4.0}) == doctest::Approx(0.3 + 1.4));
}
