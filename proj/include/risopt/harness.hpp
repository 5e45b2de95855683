#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "risopt/module_optimizer.hpp"

namespace risopt::harness {

/// Scenario constants before the channel is drawn.
struct Config {
  SystemParams params;
  ChannelParams channel;
};

/// Parses "key = value [unit]" lines; '#' starts a comment. Throws ParseError.
Config parse_config(std::istream& in);
Config read_config(const std::string& path);

/// read_config + validate + channel draw.
Scenario load_config(const std::string& path);
Scenario to_scenario(const Config& config);

/// Every accepted configuration key, in documentation order.
const std::vector<std::string>& config_keys();

/// Command-line overrides applied after the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iters;
  std::optional<double> epsilon;
};
void apply(const Overrides& overrides, Config& config);

enum class Axis { Zeta, AmpFactor, Elements, FrameLength, MaxPower };

std::string axis_name(Axis axis);

struct SweepSpec {
  Axis axis = Axis::Zeta;
  std::vector<double> values;
  int repetitions = 1;
  std::string base_config;  // empty: built-in defaults
  std::string output;
};

/// Keys: axis, values (comma separated), repetitions, base_config, output.
/// Relative paths are resolved against `base_dir`.
SweepSpec parse_sweep_spec(std::istream& in, const std::string& base_dir = "");
SweepSpec read_sweep_spec(const std::string& path);

/// Throws InvalidParam on an empty value list or repetitions < 1.
void validate(const SweepSpec& spec);

/// Sets the swept quantity (values in config units: ms for t_frame, W for p_b_max).
void set_axis(Config& config, Axis axis, double value);

struct ResultRow {
  std::string scenario_id;
  std::uint64_t seed = 0;
  long n = 0;
  double zeta = 0.0;
  double a_m = 0.0;
  double t_frame_ms = 0.0;
  double t_eh_ms = 0.0;
  double t_d2d_ms = 0.0;
  long m_star = 0;
  long k_star = 0;
  long ma = 0;
  long kp = 0;
  long microcontrollers = 0;
  double p_b_dbm = 0.0;
  double harvested_mj = 0.0;
  double ris_energy_mj = 0.0;
  double rate_bs_bps = 0.0;
  double rate_d2d_bps = 0.0;
  int iterations = 0;
  bool converged = false;
  double baseline_rate_bps = 0.0;

  bool is_baseline() const;
  bool failed() const;  // carries an error tag
};

/// Header row, in column order.
const std::vector<std::string>& result_columns();

/// Suffixes appended to scenario_id.
inline constexpr const char* kBaselineSuffix = "/no-ris";
inline constexpr char kErrorMark = '!';

/// D2D rate with every count forced to zero at the given schedule and BS power.
Evaluation no_ris_point(const Scenario& scenario, const Schedule& schedule, double p_b);

/// Runs the pipeline on one scenario: the RIS row followed by its no-RIS row.
/// Failures produce rows with converged = false and an error tag.
std::vector<ResultRow> run_point(const Scenario& scenario, const std::string& scenario_id);

struct TrendCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct SweepResult {
  std::vector<ResultRow> rows;
  std::vector<TrendCheck> checks;
};

/// Group means over RIS rows without an error tag, in axis order.
struct GroupMeans {
  double value = 0.0;
  int rows = 0;
  double harvested_mj = 0.0;
  double m_star = 0.0;
  double k_star = 0.0;
  double microcontrollers = 0.0;
  double t_eh_ms = 0.0;
  double t_d2d_ms = 0.0;
  double rate_d2d_bps = 0.0;
  double baseline_rate_bps = 0.0;
};
std::vector<GroupMeans> group_means(const std::vector<ResultRow>& rows, Axis axis);

/// Trend checks that apply to the swept axis.
std::vector<TrendCheck> trend_checks(const std::vector<ResultRow>& rows, Axis axis);

/// Every axis value x repetition with seed = base seed + repetition. Writes the CSV
/// to spec.output when it is non-empty.
SweepResult run_sweep(const SweepSpec& spec, const Overrides& overrides = {});

std::string format_double(double value);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

/// Generic RFC-4180 table.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // throws MissingColumn
};
Table parse_csv(std::istream& in);
Table read_table(const std::string& path);

/// Throws MissingColumn or ParseError.
std::vector<ResultRow> rows_from_table(const Table& table);

/// Iteration trace of one run: columns algorithm, iteration, energy_mJ. The refined
/// final point follows as series "<algorithm>_refined".
void write_trace(std::ostream& out, const SolveReport& elements, const SolveReport* modules);

/// Figure names accepted by emit_plotdata.
const std::vector<std::string>& figure_names();

/// Whitespace-delimited "x y series" text for one figure. Throws MissingColumn or
/// InvalidParam for an unknown figure.
std::string emit_plotdata(const Table& table, const std::string& figure);

}  // namespace risopt::harness
