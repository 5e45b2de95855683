#include <algorithm>
#include <optional>
#include <random>

#include "doctest.h"
#include "risopt/errors.hpp"
#include "risopt/lp.hpp"

using namespace risopt;
using lp::Sense;

namespace {

lp::SubproblemLP box(int n, double lo, double hi) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  lp::SubproblemLP p(names);
  p.lower.setConstant(lo);
  p.upper.setConstant(hi);
  return p;
}

// Brute force: every intersection of n hyperplanes (side constraints and box faces).
struct Vertex {
  Eigen::VectorXd x;
  double value;
};

std::optional<Vertex> vertex_oracle(const lp::SubproblemLP& p) {
  const int n = p.size();
  std::vector<std::pair<Eigen::VectorXd, double>> planes;
  for (const auto& c : p.constraints) planes.emplace_back(c.coefficients, c.rhs);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = 1.0;
    planes.emplace_back(e, p.lower(i));
    planes.emplace_back(e, p.upper(i));
  }
  const int m = static_cast<int>(planes.size());
  std::vector<int> pick(n);
  std::optional<Vertex> best;
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + n, true);
  do {
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    int r = 0;
    for (int j = 0; j < m; ++j)
      if (mask[j]) {
        a.row(r) = planes[j].first.transpose();
        b(r++) = planes[j].second;
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < n) continue;
    const Eigen::VectorXd x = lu.solve(b);
    if (!p.feasible(x, 1e-9)) continue;
    const double v = p.value(x);
    auto lex_less = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
      for (int i = 0; i < n; ++i) {
        if (u(i) < w(i) - 1e-7) return true;
        if (u(i) > w(i) + 1e-7) return false;
      }
      return false;
    };
    if (!best || v < best->value - 1e-9 ||
        (std::abs(v - best->value) <= 1e-9 && lex_less(x, best->x)))
      best = Vertex{x, v};
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace

TEST_CASE("single variable lower bound is attained") {
  auto p = box(1, 0.0, 100.0);
  p.objective << 1.0;
  Eigen::VectorXd a(1);
  a << 1.0;
  p.add(a, Sense::GreaterEqual, 3.0, "lo");
  p.add(a, Sense::LessEqual, 10.0, "hi");
  const auto s = lp::solve_lp(p);
  CHECK(s.x(0) == doctest::Approx(3.0));
  CHECK(s.objective == doctest::Approx(3.0));
}

TEST_CASE("equal-cost vertices resolve to the lexicographically smallest") {
  // min x + y  s.t. x + y >= 4 on [0, 10]^2: every point of the segment is optimal.
  auto p = box(2, 0.0, 10.0);
  p.objective << 1.0, 1.0;
  p.add(Eigen::Vector2d(1.0, 1.0), Sense::GreaterEqual, 4.0, "sum");
  const auto s = lp::solve_lp(p);
  CHECK(s.x(0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(s.x(1) == doctest::Approx(4.0));
}

TEST_CASE("infeasible LP is reported") {
  auto p = box(2, 0.0, 1.0);
  p.objective << 1.0, 0.0;
  p.add(Eigen::Vector2d(1.0, 1.0), Sense::GreaterEqual, 3.0, "sum");
  CHECK_THROWS_AS(lp::solve_lp(p), Infeasible);
}

TEST_CASE("equality rows and badly scaled coefficients") {
  auto p = box(2, 0.0, 0.2);
  p.objective << 3e-4, 1e-4;
  p.add(Eigen::Vector2d(1.0, 1.0), Sense::Equal, 0.2, "frame");
  p.add(Eigen::Vector2d(2e-17, -7e-18), Sense::GreaterEqual, 0.0, "rate");
  const auto s = lp::solve_lp(p);
  // x0 >= 0.35 x1 and x0 + x1 = 0.2  ->  x0 = 0.2 * 0.35 / 1.35
  CHECK(s.x(0) == doctest::Approx(0.2 * 0.35 / 1.35).epsilon(1e-9));
  CHECK(s.x(0) + s.x(1) == doctest::Approx(0.2));
}

TEST_CASE("random LPs agree with vertex enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> ncons(1, 4);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = dim(rng);
    auto p = box(n, 0.0, 10.0);
    for (int i = 0; i < n; ++i) p.objective(i) = coef(rng);
    Eigen::VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0(i) = 5.0 + 5.0 * coef(rng);
    const int m = ncons(rng);
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd a(n);
      for (int i = 0; i < n; ++i) a(i) = coef(rng);
      const bool le = coef(rng) > 0.0;
      const double slack = 2.0 * std::abs(coef(rng));
      p.add(a, le ? Sense::LessEqual : Sense::GreaterEqual, a.dot(x0) + (le ? slack : -slack),
            "c" + std::to_string(j));
    }
    const auto oracle = vertex_oracle(p);
    REQUIRE(oracle.has_value());
    const auto s = lp::solve_lp(p);
    CHECK(p.feasible(s.x, 1e-8));
    CHECK(s.objective == doctest::Approx(oracle->value).epsilon(1e-7).scale(1.0));
    ++checked;
  }
  CHECK(checked == 200);
}
