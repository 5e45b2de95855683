#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "risopt/errors.hpp"
#include "risopt/harness.hpp"
#include "risopt/units.hpp"

using namespace risopt;
using namespace risopt::harness;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;

void print_counts(const char* label, const Counts& c) {
  std::printf("  %-22s total %ld/%ld  eh %ld/%ld  d2d %ld/%ld (active/passive)\n", label, c.active,
              c.passive, c.active_eh, c.passive_eh, c.active_d2d, c.passive_d2d);
}

void print_report(const char* title, const SolveReport& r) {
  std::printf("%s\n", title);
  print_counts("counts", r.counts);
  std::printf("  unit sizes             %d active, %d passive\n", r.units.active, r.units.passive);
  std::printf("  T' / T''               %.6g ms / %.6g ms\n", r.schedule.t_eh * 1e3, r.schedule.t_d2d * 1e3);
  std::printf("  p_b                    %.6g W (%.4g dBm)\n", r.p_b, units::watts_to_dbm(std::max(r.p_b, 1e-30)));
  std::printf("  harvested              %.6g mJ\n", r.harvested_energy * 1e3);
  std::printf("  RIS energy             %.6g mJ\n", r.ris_energy * 1e3);
  std::printf("  R_b / R_d              %.6g / %.6g bit/s\n", r.rate_bs, r.rate_d2d);
  std::printf("  iterations             %d (%s)\n", r.iterations, r.converged ? "converged" : "not converged");
}

Config config_from(const std::string& path, const Overrides& o) {
  Config c = read_config(path);
  apply(o, c);
  return c;
}

int cmd_solve(const std::string& path, const Overrides& o, const std::string& out,
              const std::string& trace) {
  const Scenario sc = to_scenario(config_from(path, o));
  const ElementSolution el = run_algorithm1(sc);
  print_report("Algorithm 1 (elements)", el);
  const Evaluation base = no_ris_point(sc, el.schedule, el.p_b);
  std::printf("  no-RIS D2D rate        %.6g bit/s\n", base.rates.rate_d2d);
  std::optional<ModuleSolution> mod;
  int code = kOk;
  try {
    mod = run_algorithm2(sc, module_sizes(el));
    print_report("Algorithm 2 (modules)", *mod);
    std::printf("  microcontrollers       %ld\n", mod->microcontrollers);
  } catch (const Infeasible& e) {
    std::printf("Algorithm 2 (modules)\n  infeasible: %s\n", e.what());
    code = kInfeasible;
  }
  if (!out.empty()) write_csv(out, run_point(sc, "solve"));
  if (!trace.empty()) {
    std::ofstream t(trace, std::ios::binary);
    if (!t) throw Error("cannot write '" + trace + "'");
    write_trace(t, el, mod ? &*mod : nullptr);
  }
  return code;
}

int cmd_sweep(const std::string& path, const Overrides& o, const std::string& out) {
  SweepSpec spec = read_sweep_spec(path);
  if (!out.empty()) spec.output = out;
  if (spec.output.empty()) throw Error("no output path: set 'output' in the spec or pass --out");
  const SweepResult r = run_sweep(spec, o);
  std::size_t failed = 0;
  for (const auto& row : r.rows) failed += row.failed();
  std::printf("%zu rows written to %s (%zu with errors)\n", r.rows.size(), spec.output.c_str(), failed);
  for (const auto& c : r.checks)
    std::printf("[%s] %s: %s\n", c.holds ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  return kOk;
}

int cmd_plotdata(const std::string& results, const std::string& figure, const std::string& out) {
  const std::string text = emit_plotdata(read_table(results), figure);
  const std::string path = out.empty()
      ? (std::filesystem::path(results).replace_extension("").string() + "." + figure + ".dat")
      : out;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  std::printf("%s\n", path.c_str());
  return kOk;
}

int cmd_oracle(const std::string& path, const Overrides& o, int m_star, int k_star) {
  const Scenario sc = to_scenario(config_from(path, o));
  const bool modules = m_star > 0 || k_star > 0;
  const ProblemSpec spec = modules ? ProblemSpec::modules({std::max(m_star, 1), std::max(k_star, 1)},
                                                          sc.params.enforce_bs_rate)
                                   : ProblemSpec::elements();
  const auto t0 = std::chrono::steady_clock::now();
  const sca::OracleResult r = sca::brute_force_oracle(sc, spec);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("Oracle (%s, %ld candidates, %.2f s)\n", modules ? "modules" : "elements", r.candidates, dt);
  print_counts("counts", r.counts);
  std::printf("  T' / T''               %.6g ms / %.6g ms\n", r.schedule.t_eh * 1e3, r.schedule.t_d2d * 1e3);
  std::printf("  p_b                    %.6g W\n", r.p_b);
  std::printf("  RIS energy             %.6g mJ\n", r.evaluation.energy * 1e3);
  try {
    const SolveReport alg = modules ? SolveReport(run_algorithm2(sc, spec.units))
                                    : SolveReport(run_algorithm1(sc));
    std::printf("Algorithm %d energy      %.6g mJ (ratio %.4f)\n", modules ? 2 : 1, alg.ris_energy * 1e3,
                alg.ris_energy / r.evaluation.energy);
  } catch (const Infeasible& e) {
    std::printf("Algorithm %d infeasible: %s\n", modules ? 2 : 1, e.what());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS element and module allocation for RF-powered D2D links"};
  app.require_subcommand(1);

  Overrides o;
  std::string out;
  auto common = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { o.seed = v; }, "Channel seed");
    sub->add_option_function<int>("--max-iters", [&](const int& v) { o.max_iters = v; }, "Iteration cap");
    sub->add_option_function<double>("--epsilon", [&](const double& v) { o.epsilon = v; }, "Convergence tolerance");
    sub->add_option("--out", out, "Output file");
  };

  std::string config, trace, spec_path, results, figure;
  int m_star = 0, k_star = 0;

  auto* solve = app.add_subcommand("solve", "Run Algorithm 1 then Algorithm 2 on one configuration");
  solve->add_option("config", config, "Configuration file")->required();
  solve->add_option("--trace", trace, "Write the iteration trace as CSV");
  common(solve);

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write result rows");
  sweep->add_option("spec", spec_path, "Sweep specification file")->required();
  common(sweep);

  auto* plot = app.add_subcommand("plotdata", "Write plot-ready data for one figure");
  plot->add_option("results", results, "Result or trace CSV")->required();
  plot->add_option("figure", figure, "Figure name")
      ->required()
      ->check(CLI::IsMember(figure_names()));
  plot->add_option("--out", out, "Output file");

  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum of a small instance");
  oracle->add_option("config", config, "Configuration file")->required();
  oracle->add_option("--m-star", m_star, "Active module size (module problem)");
  oracle->add_option("--k-star", k_star, "Passive module size (module problem)");
  common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*solve) return cmd_solve(config, o, out, trace);
    if (*sweep) return cmd_sweep(spec_path, o, out);
    if (*plot) return cmd_plotdata(results, figure, out);
    if (*oracle) return cmd_oracle(config, o, m_star, k_star);
  } catch (const Infeasible& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
  return kError;
}
