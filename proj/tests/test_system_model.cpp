#include <cmath>
#include <numbers>

#include "doctest.h"
#include "risopt/errors.hpp"
#include "risopt/system_model.hpp"

using namespace risopt;

TEST_CASE("path loss follows 16 pi^2 d^delta / lambda^2") {
  const double lambda = 0.15;
  const double expected = 16.0 * std::numbers::pi * std::numbers::pi * std::pow(10.0, 2.2) /
                          (lambda * lambda);
  CHECK(path_loss(10.0, 2.2, lambda) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(path_loss(20.0, 2.0, lambda) == doctest::Approx(4.0 * path_loss(10.0, 2.0, lambda)));
}

TEST_CASE("default parameters validate") {
  CHECK(check(SystemParams{}, ChannelParams{}).empty());
  CHECK_NOTHROW(validate(SystemParams{}, ChannelParams{}));
}

TEST_CASE("invalid parameters are named") {
  SystemParams p;
  p.zeta = 1.5;
  try {
    validate(p, ChannelParams{});
    FAIL("expected InvalidParam");
  } catch (const InvalidParam& e) {
    CHECK(e.field() == "zeta");
  }
  p = SystemParams{};
  p.amp_factor = 0.5;
  CHECK_THROWS_AS(validate(p, ChannelParams{}), InvalidParam);
  ChannelParams c;
  c.delta_rs = 1.5;
  const auto v = check(SystemParams{}, c);
  REQUIRE(v.size() == 1);
  CHECK(v.front().field == "delta_rs");
  p = SystemParams{};
  p.e_min = 1.0;
  CHECK_THROWS_AS(validate(p, ChannelParams{}), InvalidParam);
}

TEST_CASE("channel realization is deterministic in the seed") {
  SystemParams p;
  ChannelParams c;
  const auto a = realize_channel(c, p, 7);
  const auto b = realize_channel(c, p, 7);
  const auto d = realize_channel(c, p, 8);
  CHECK(a.h_bs == b.h_bs);
  CHECK(a.h1 == b.h1);
  CHECK(a.norm_hbr_sq == b.norm_hbr_sq);
  CHECK(a.h_bs != d.h_bs);
  CHECK(a.n_elements == p.n_total);
}

TEST_CASE("channel magnitudes are positive and scale with the panel") {
  SystemParams p;
  ChannelParams c;
  const auto r = realize_channel(c, p, 3);
  CHECK(r.h_bs > 0.0);
  CHECK(r.h_sd > 0.0);
  CHECK(r.h1 > 0.0);
  CHECK(r.h2 > 0.0);
  CHECK(r.h3 == r.h1);
  CHECK(r.h4 == r.h2);
  CHECK(r.norm_hsr_sq == r.norm_hrs_sq);
  // Per-element power of h_br averages 1/beta.
  const double rho = r.norm_hbr_sq / p.n_total;
  const double beta = path_loss(c.d_br, c.delta_br, c.wavelength);
  CHECK(rho * beta == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("mean received power of the direct link matches the path loss") {
  SystemParams p;
  p.n_total = 0;
  ChannelParams c;
  double sum = 0.0;
  const int runs = 4000;
  for (int s = 0; s < runs; ++s) {
    const auto r = realize_channel(c, p, static_cast<std::uint64_t>(s));
    sum += r.h_bs * r.h_bs;
  }
  const double beta = path_loss(c.d1, c.delta1, c.wavelength);
  CHECK(sum / runs * beta == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("empty panel has no cascade") {
  SystemParams p;
  p.n_total = 0;
  const auto r = realize_channel(ChannelParams{}, p, 1);
  CHECK(r.h1 == 0.0);
  CHECK(r.norm_hbr_sq == 0.0);
}

TEST_CASE("make_scenario uses params.seed") {
  SystemParams p;
  p.seed = 11;
  const auto sc = make_scenario(p, ChannelParams{});
  CHECK(sc.gains.h_bs == realize_channel(ChannelParams{}, p, 11).h_bs);
}
