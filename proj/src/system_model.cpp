#include "risopt/system_model.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "risopt/errors.hpp"

namespace risopt {

namespace {

struct RicianWeights {
  double los;
  double nlos;
};

RicianWeights rician_weights(double factor) {
  if (std::isinf(factor)) return {1.0, 0.0};
  return {std::sqrt(factor / (factor + 1.0)), std::sqrt(1.0 / (factor + 1.0))};
}

class LinkSampler {
 public:
  explicit LinkSampler(std::uint64_t seed) : rng_(seed) {}

  // CN(0,1): independent real/imaginary parts with variance 1/2.
  std::complex<double> standard_normal() {
    return {normal_(rng_) * std::numbers::sqrt2 / 2.0, normal_(rng_) * std::numbers::sqrt2 / 2.0};
  }

  // Unit-power line-of-sight phasor.
  std::complex<double> los() { return std::polar(1.0, phase_(rng_)); }

  std::complex<double> draw(double beta, double rician) {
    const auto w = rician_weights(rician);
    const std::complex<double> los_part = los();
    const std::complex<double> nlos_part = standard_normal();
    return std::sqrt(1.0 / beta) * (w.los * los_part + w.nlos * nlos_part);
  }

  Eigen::VectorXcd draw_vector(int n, double beta, double rician) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = draw(beta, rician);
    return v;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> phase_{0.0, 2.0 * std::numbers::pi};
};

void require(std::vector<Violation>& out, bool ok, const char* field, const char* reason) {
  if (!ok) out.push_back({field, reason});
}

}  // namespace

double path_loss(double distance, double exponent, double wavelength) {
  return 16.0 * std::numbers::pi * std::numbers::pi * std::pow(distance, exponent) /
         (wavelength * wavelength);
}

std::vector<Violation> check(const SystemParams& p, const ChannelParams& c) {
  std::vector<Violation> v;
  require(v, p.n_total >= 0, "n_total", "must be >= 0");
  require(v, p.amp_factor >= 1.0, "amp_factor", "must be >= 1");
  require(v, p.amp_efficiency > 0.0 && p.amp_efficiency <= 1.0, "amp_efficiency",
          "must lie in (0, 1]");
  require(v, p.p_sc > 0.0, "p_sc", "must be > 0");
  require(v, p.p_dc > 0.0, "p_dc", "must be > 0");
  require(v, p.zeta >= 0.0 && p.zeta <= 1.0, "zeta", "must lie in [0, 1]");
  require(v, p.harvest_max > 0.0, "harvest_max", "must be > 0");
  require(v, p.y1 > 0.0, "y1", "must be > 0");
  require(v, p.y2 > 0.0, "y2", "must be > 0");
  require(v, p.e_min >= 0.0, "e_min", "must be >= 0");
  require(v, p.rate_thresh_d2d >= 0.0, "rate_thresh_d2d", "must be >= 0");
  require(v, p.rate_thresh_bs >= 0.0, "rate_thresh_bs", "must be >= 0");
  require(v, p.bw_1 > 0.0, "bw_1", "must be > 0");
  require(v, p.bw_2 > 0.0, "bw_2", "must be > 0");
  require(v, p.bw_3 > 0.0, "bw_3", "must be > 0");
  require(v, p.sigma1_sq > 0.0, "sigma1_sq", "must be > 0");
  require(v, p.sigma2_sq > 0.0, "sigma2_sq", "must be > 0");
  require(v, p.t_frame > 0.0, "t_frame", "must be > 0");
  require(v, p.p_b_max > 0.0, "p_b_max", "must be > 0");
  require(v, p.epsilon > 0.0, "epsilon", "must be > 0");
  require(v, p.max_iters >= 1, "max_iters", "must be >= 1");
  require(v, p.min_slot_fraction > 0.0 && p.min_slot_fraction < 0.5, "min_slot_fraction",
          "must lie in (0, 0.5)");
  // ln(Y T'/e_m - 1) needs Y T' > e_m for some split.
  require(v, p.harvest_max * p.t_frame > p.e_min, "e_min", "must be below harvest_max * t_frame");

  require(v, c.d1 > 0.0, "d1", "must be > 0");
  require(v, c.d2 > 0.0, "d2", "must be > 0");
  require(v, c.d_br > 0.0, "d_br", "must be > 0");
  require(v, c.d_rs > 0.0, "d_rs", "must be > 0");
  require(v, c.d_rd > 0.0, "d_rd", "must be > 0");
  require(v, c.delta1 >= 2.0, "delta1", "must be >= 2");
  require(v, c.delta2 >= 2.0, "delta2", "must be >= 2");
  require(v, c.delta_br >= 2.0, "delta_br", "must be >= 2");
  require(v, c.delta_rs >= 2.0, "delta_rs", "must be >= 2");
  require(v, c.delta_rd >= 2.0, "delta_rd", "must be >= 2");
  require(v, c.rician_e >= 0.0, "rician_e", "must be >= 0");
  require(v, c.rician_s >= 0.0, "rician_s", "must be >= 0");
  require(v, c.rician_ris >= 0.0, "rician_ris", "must be >= 0");
  require(v, c.wavelength > 0.0, "wavelength", "must be > 0");
  return v;
}

void validate(const SystemParams& params, const ChannelParams& channel) {
  const auto violations = check(params, channel);
  if (violations.empty()) return;
  std::string reason = violations.front().reason;
  for (std::size_t i = 1; i < violations.size(); ++i)
    reason += "; also '" + violations[i].field + "' " + violations[i].reason;
  throw InvalidParam(violations.front().field, reason);
}

ChannelRealization realize_channel(const ChannelParams& c, const SystemParams& p,
                                   std::uint64_t seed) {
  LinkSampler sampler(seed);
  const int n = p.n_total;
  const double beta_bs = path_loss(c.d1, c.delta1, c.wavelength);
  const double beta_sd = path_loss(c.d2, c.delta2, c.wavelength);
  const double beta_br = path_loss(c.d_br, c.delta_br, c.wavelength);
  const double beta_rs = path_loss(c.d_rs, c.delta_rs, c.wavelength);
  const double beta_rd = path_loss(c.d_rd, c.delta_rd, c.wavelength);

  ChannelRealization r;
  r.n_elements = n;
  r.h_bs = std::abs(sampler.draw(beta_bs, c.rician_e));
  r.h_sd = std::abs(sampler.draw(beta_sd, c.rician_s));

  const Eigen::VectorXcd h_br = sampler.draw_vector(n, beta_br, c.rician_ris);
  const Eigen::VectorXcd h_rs = sampler.draw_vector(n, beta_rs, c.rician_ris);
  const Eigen::VectorXcd h_rd = sampler.draw_vector(n, beta_rd, c.rician_ris);

  // Optimal phases align every cascade term with the direct link, so only magnitudes remain.
  if (n > 0) {
    r.h1 = (h_rs.cwiseAbs().array() * h_br.cwiseAbs().array()).mean();
    r.h2 = (h_rd.cwiseAbs().array() * h_rs.cwiseAbs().array()).mean();
  }
  r.h3 = r.h1;
  r.h4 = r.h2;
  r.norm_hbr_sq = h_br.squaredNorm();
  r.norm_hrs_sq = h_rs.squaredNorm();
  r.norm_hsr_sq = r.norm_hrs_sq;
  r.norm_hrd_sq = h_rd.squaredNorm();
  return r;
}

Scenario make_scenario(const SystemParams& params, const ChannelParams& channel) {
  validate(params, channel);
  return {params, channel, realize_channel(channel, params, params.seed)};
}

}  // namespace risopt
