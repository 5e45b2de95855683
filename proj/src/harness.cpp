#include "risopt/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "risopt/errors.hpp"
#include "risopt/units.hpp"

namespace risopt::harness {

namespace {

enum class Kind { Plain, Power, Time, Integer, Boolean };

struct KeySpec {
  const char* name;
  Kind kind;
  std::function<void(Config&, double)> set;
};

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> keys = {
      {"n_total", Kind::Integer, [](Config& c, double v) { c.params.n_total = static_cast<int>(v); }},
      {"amp_factor", Kind::Plain, [](Config& c, double v) { c.params.amp_factor = v; }},
      {"amp_efficiency", Kind::Plain, [](Config& c, double v) { c.params.amp_efficiency = v; }},
      {"p_sc", Kind::Power, [](Config& c, double v) { c.params.p_sc = v; }},
      {"p_dc", Kind::Power, [](Config& c, double v) { c.params.p_dc = v; }},
      {"zeta", Kind::Plain, [](Config& c, double v) { c.params.zeta = v; }},
      {"harvest_max", Kind::Power, [](Config& c, double v) { c.params.harvest_max = v; }},
      {"y1", Kind::Plain, [](Config& c, double v) { c.params.y1 = v; }},
      {"y2", Kind::Power, [](Config& c, double v) { c.params.y2 = v; }},
      {"e_min", Kind::Plain, [](Config& c, double v) { c.params.e_min = v; }},
      {"rate_thresh_d2d", Kind::Plain, [](Config& c, double v) { c.params.rate_thresh_d2d = v; }},
      {"rate_thresh_bs", Kind::Plain, [](Config& c, double v) { c.params.rate_thresh_bs = v; }},
      {"bw_1", Kind::Plain, [](Config& c, double v) { c.params.bw_1 = v; }},
      {"bw_2", Kind::Plain, [](Config& c, double v) { c.params.bw_2 = v; }},
      {"bw_3", Kind::Plain, [](Config& c, double v) { c.params.bw_3 = v; }},
      {"sigma1_sq", Kind::Power, [](Config& c, double v) { c.params.sigma1_sq = v; }},
      {"sigma2_sq", Kind::Power, [](Config& c, double v) { c.params.sigma2_sq = v; }},
      {"t_frame", Kind::Time, [](Config& c, double v) { c.params.t_frame = v; }},
      {"p_b_max", Kind::Power, [](Config& c, double v) { c.params.p_b_max = v; }},
      {"epsilon", Kind::Plain, [](Config& c, double v) { c.params.epsilon = v; }},
      {"max_iters", Kind::Integer, [](Config& c, double v) { c.params.max_iters = static_cast<int>(v); }},
      {"seed", Kind::Integer, [](Config& c, double v) { c.params.seed = static_cast<std::uint64_t>(v); }},
      {"min_slot_fraction", Kind::Plain, [](Config& c, double v) { c.params.min_slot_fraction = v; }},
      {"enforce_bs_rate", Kind::Boolean, [](Config& c, double v) { c.params.enforce_bs_rate = v != 0.0; }},
      {"d1", Kind::Plain, [](Config& c, double v) { c.channel.d1 = v; }},
      {"d2", Kind::Plain, [](Config& c, double v) { c.channel.d2 = v; }},
      {"delta1", Kind::Plain, [](Config& c, double v) { c.channel.delta1 = v; }},
      {"delta2", Kind::Plain, [](Config& c, double v) { c.channel.delta2 = v; }},
      {"rician_e", Kind::Plain, [](Config& c, double v) { c.channel.rician_e = v; }},
      {"rician_s", Kind::Plain, [](Config& c, double v) { c.channel.rician_s = v; }},
      {"wavelength", Kind::Plain, [](Config& c, double v) { c.channel.wavelength = v; }},
      {"d_br", Kind::Plain, [](Config& c, double v) { c.channel.d_br = v; }},
      {"d_rs", Kind::Plain, [](Config& c, double v) { c.channel.d_rs = v; }},
      {"d_rd", Kind::Plain, [](Config& c, double v) { c.channel.d_rd = v; }},
      {"delta_br", Kind::Plain, [](Config& c, double v) { c.channel.delta_br = v; }},
      {"delta_rs", Kind::Plain, [](Config& c, double v) { c.channel.delta_rs = v; }},
      {"delta_rd", Kind::Plain, [](Config& c, double v) { c.channel.delta_rd = v; }},
      {"rician_ris", Kind::Plain, [](Config& c, double v) { c.channel.rician_ris = v; }},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Splits "key = value" after removing the comment; empty key for blank lines.
std::pair<std::string, std::string> split_line(const std::string& raw, int line) {
  const std::string text = trim(raw.substr(0, raw.find('#')));
  if (text.empty()) return {};
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
  std::string key = trim(text.substr(0, eq));
  std::string value = trim(text.substr(eq + 1));
  if (key.empty()) throw ParseError(line, "missing key");
  if (value.empty()) throw ParseError(line, "missing value for '" + key + "'");
  return {key, value};
}

double parse_number(const std::string& text, int line, std::string& rest) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) throw ParseError(line, "expected a number in '" + text + "'");
  if (!std::isfinite(v)) throw ParseError(line, "value must be finite");
  rest = trim(std::string(end));
  return v;
}

double convert(const KeySpec& key, const std::string& text, int line) {
  const std::string name = key.name;
  if (key.kind == Kind::Boolean) {
    const std::string v = lower(text);
    if (v == "true" || v == "1" || v == "yes") return 1.0;
    if (v == "false" || v == "0" || v == "no") return 0.0;
    throw ParseError(line, "expected true or false for '" + name + "'");
  }
  std::string unit;
  const double v = parse_number(text, line, unit);
  switch (key.kind) {
    case Kind::Power:
      if (unit.empty() || unit == "W") return v;
      if (unit == "mW") return v * 1e-3;
      if (unit == "dBm") return units::dbm_to_watts(v);
      break;
    case Kind::Time:
      if (unit.empty() || unit == "s") return v;
      if (unit == "ms") return v * 1e-3;
      break;
    case Kind::Integer:
      if (!unit.empty()) break;
      if (v != std::floor(v) || v < 0.0) throw ParseError(line, "'" + name + "' must be a non-negative integer");
      return v;
    default:
      if (unit.empty()) return v;
      break;
  }
  throw ParseError(line, "unit '" + unit + "' not accepted for '" + name + "'");
}

std::string join_path(const std::string& dir, const std::string& path) {
  if (path.empty() || dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(dir) / path).lexically_normal().string();
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& k : key_table()) v.emplace_back(k.name);
    return v;
  }();
  return names;
}

Config parse_config(std::istream& in) {
  Config config;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto [key, value] = split_line(raw, line);
    if (key.empty()) continue;
    const auto& table = key_table();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const KeySpec& k) { return key == k.name; });
    if (it == table.end()) throw ParseError(line, "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ParseError(line, "duplicate key '" + key + "'");
    it->set(config, convert(*it, value, line));
  }
  return config;
}

Config read_config(const std::string& path) {
  auto in = open_in(path);
  return parse_config(in);
}

Scenario to_scenario(const Config& config) { return make_scenario(config.params, config.channel); }

Scenario load_config(const std::string& path) { return to_scenario(read_config(path)); }

void apply(const Overrides& o, Config& config) {
  if (o.seed) config.params.seed = *o.seed;
  if (o.max_iters) config.params.max_iters = *o.max_iters;
  if (o.epsilon) config.params.epsilon = *o.epsilon;
}

std::string axis_name(Axis axis) {
  switch (axis) {
    case Axis::Zeta: return "zeta";
    case Axis::AmpFactor: return "a_m";
    case Axis::Elements: return "N";
    case Axis::FrameLength: return "t_frame";
    case Axis::MaxPower: return "p_b_max";
  }
  return "";
}

SweepSpec parse_sweep_spec(std::istream& in, const std::string& base_dir) {
  SweepSpec spec;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto [key, value] = split_line(raw, line);
    if (key.empty()) continue;
    if (!seen.insert(key).second) throw ParseError(line, "duplicate key '" + key + "'");
    if (key == "axis") {
      const Axis all[] = {Axis::Zeta, Axis::AmpFactor, Axis::Elements, Axis::FrameLength, Axis::MaxPower};
      const auto it = std::find_if(std::begin(all), std::end(all),
                                   [&](Axis a) { return axis_name(a) == value; });
      if (it == std::end(all)) throw ParseError(line, "unknown axis '" + value + "'");
      spec.axis = *it;
    } else if (key == "values") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::string rest;
        spec.values.push_back(parse_number(trim(item), line, rest));
        if (!rest.empty()) throw ParseError(line, "unexpected '" + rest + "' in value list");
      }
    } else if (key == "repetitions") {
      std::string rest;
      const double v = parse_number(value, line, rest);
      if (!rest.empty() || v != std::floor(v)) throw ParseError(line, "repetitions must be an integer");
      spec.repetitions = static_cast<int>(v);
    } else if (key == "base_config") {
      spec.base_config = join_path(base_dir, value);
    } else if (key == "output") {
      spec.output = join_path(base_dir, value);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  if (!seen.count("axis")) throw ParseError(line, "missing key 'axis'");
  return spec;
}

SweepSpec read_sweep_spec(const std::string& path) {
  auto in = open_in(path);
  return parse_sweep_spec(in, std::filesystem::path(path).parent_path().string());
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw InvalidParam("values", "must not be empty");
  if (spec.repetitions < 1) throw InvalidParam("repetitions", "must be >= 1");
}

void set_axis(Config& config, Axis axis, double value) {
  switch (axis) {
    case Axis::Zeta: config.params.zeta = value; break;
    case Axis::AmpFactor: config.params.amp_factor = value; break;
    case Axis::Elements:
      if (value != std::floor(value) || value < 0.0) throw InvalidParam("N", "must be a non-negative integer");
      config.params.n_total = static_cast<int>(value);
      break;
    case Axis::FrameLength: config.params.t_frame = value * 1e-3; break;
    case Axis::MaxPower: config.params.p_b_max = value; break;
  }
}

// ---------------------------------------------------------------------------
// Result rows

bool ResultRow::is_baseline() const {
  const std::string id = scenario_id.substr(0, scenario_id.find(kErrorMark));
  const std::string suffix = kBaselineSuffix;
  return id.size() >= suffix.size() && id.compare(id.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool ResultRow::failed() const { return scenario_id.find(kErrorMark) != std::string::npos; }

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols = {
      "scenario_id", "seed", "N", "zeta", "a_m", "t_frame_ms", "t_eh_ms", "t_d2d_ms",
      "m_star", "k_star", "ma", "kp", "microcontrollers", "p_b_dbm", "harvested_mJ",
      "ris_energy_mJ", "rate_bs_bps", "rate_d2d_bps", "iterations", "converged",
      "baseline_rate_bps"};
  return cols;
}

namespace {

// Finite dBm value for a possibly zero power.
double to_dbm(double watts) { return units::watts_to_dbm(std::max(watts, 1e-30)); }

ResultRow base_row(const Scenario& sc, const std::string& id) {
  ResultRow r;
  r.scenario_id = id;
  r.seed = sc.params.seed;
  r.n = sc.params.n_total;
  r.zeta = sc.params.zeta;
  r.a_m = sc.params.amp_factor;
  r.t_frame_ms = sc.params.t_frame * 1e3;
  r.p_b_dbm = to_dbm(0.0);
  return r;
}

void fill_element(ResultRow& r, const ElementSolution& e) {
  r.t_eh_ms = e.schedule.t_eh * 1e3;
  r.t_d2d_ms = e.schedule.t_d2d * 1e3;
  r.m_star = e.counts.active;
  r.k_star = e.counts.passive;
  r.p_b_dbm = to_dbm(e.p_b);
  r.harvested_mj = e.harvested_energy * 1e3;
  r.ris_energy_mj = e.ris_energy * 1e3;
  r.rate_bs_bps = e.rate_bs;
  r.rate_d2d_bps = e.rate_d2d;
  r.iterations = e.iterations;
  r.converged = e.converged;
}

std::string tag(const std::string& id, const std::string& what) {
  return id + kErrorMark + what;
}

}  // namespace

Evaluation no_ris_point(const Scenario& sc, const Schedule& schedule, double p_b) {
  return evaluate(sc, ProblemSpec::elements(), Counts{}, schedule, p_b);
}

std::vector<ResultRow> run_point(const Scenario& sc, const std::string& id) {
  ResultRow ris = base_row(sc, id);
  ResultRow none = base_row(sc, id + kBaselineSuffix);
  ElementSolution el;
  try {
    el = run_algorithm1(sc);
  } catch (const Infeasible&) {
    ris.scenario_id = tag(id, "infeasible");
    none.scenario_id = tag(none.scenario_id, "no-reference");
    return {ris, none};
  }
  fill_element(ris, el);

  const Evaluation base = no_ris_point(sc, el.schedule, el.p_b);
  ris.baseline_rate_bps = base.rates.rate_d2d;
  none.t_eh_ms = ris.t_eh_ms;
  none.t_d2d_ms = ris.t_d2d_ms;
  none.p_b_dbm = ris.p_b_dbm;
  none.harvested_mj = base.harvested * 1e3;
  none.rate_bs_bps = base.rates.rate_bs;
  none.rate_d2d_bps = base.rates.rate_d2d;
  none.baseline_rate_bps = base.rates.rate_d2d;
  none.converged = true;

  try {
    const ModuleSolution mod = run_algorithm2(sc, module_sizes(el));
    ris.ma = mod.counts.active;
    ris.kp = mod.counts.passive;
    ris.microcontrollers = mod.microcontrollers;
    ris.converged = el.converged && mod.converged;
  } catch (const Infeasible&) {
    ris.converged = false;
    ris.scenario_id = tag(id, "module-infeasible");
  }
  return {ris, none};
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<GroupMeans> group_means(const std::vector<ResultRow>& rows, Axis) {
  std::vector<std::string> order;
  std::map<std::string, GroupMeans> groups;
  for (const ResultRow& r : rows) {
    if (r.is_baseline() || r.failed()) continue;
    const std::string key = r.scenario_id.substr(0, r.scenario_id.find('/'));
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) {
      order.push_back(key);
      const auto eq = key.find('=');
      it->second.value = eq == std::string::npos ? 0.0 : std::strtod(key.c_str() + eq + 1, nullptr);
    }
    GroupMeans& g = it->second;
    ++g.rows;
    g.harvested_mj += r.harvested_mj;
    g.m_star += r.m_star;
    g.k_star += r.k_star;
    g.microcontrollers += r.microcontrollers;
    g.t_eh_ms += r.t_eh_ms;
    g.t_d2d_ms += r.t_d2d_ms;
    g.rate_d2d_bps += r.rate_d2d_bps;
    g.baseline_rate_bps += r.baseline_rate_bps;
  }
  std::vector<GroupMeans> out;
  for (const auto& key : order) {
    GroupMeans g = groups[key];
    const double n = g.rows;
    for (double* f : {&g.harvested_mj, &g.m_star, &g.k_star, &g.microcontrollers, &g.t_eh_ms,
                      &g.t_d2d_ms, &g.rate_d2d_bps, &g.baseline_rate_bps})
      *f /= n;
    out.push_back(g);
  }
  return out;
}

namespace {

template <typename Get, typename Cmp>
TrendCheck monotone(const std::string& name, const std::vector<GroupMeans>& g, Get get, Cmp ok) {
  TrendCheck c{name, g.size() >= 2, ""};
  std::ostringstream d;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) d << ' ';
    d << format_double(g[i].value) << ':' << format_double(get(g[i]));
    if (i && !ok(get(g[i - 1]), get(g[i]))) c.holds = false;
  }
  c.detail = d.str();
  return c;
}

}  // namespace

std::vector<TrendCheck> trend_checks(const std::vector<ResultRow>& rows, Axis axis) {
  const auto g = group_means(rows, axis);
  std::vector<TrendCheck> checks;
  if (axis == Axis::Zeta)
    checks.push_back(monotone("harvest increasing in zeta", g,
                              [](const GroupMeans& m) { return m.harvested_mj; },
                              [](double a, double b) { return b > a; }));
  if (axis == Axis::AmpFactor)
    checks.push_back(monotone("m_star non-increasing in a_m", g,
                              [](const GroupMeans& m) { return m.m_star; },
                              [](double a, double b) { return b <= a; }));
  if (axis == Axis::Elements)
    checks.push_back(monotone("microcontrollers non-decreasing in N", g,
                              [](const GroupMeans& m) { return m.microcontrollers; },
                              [](double a, double b) { return b >= a; }));
  double t_eh = 0.0, t_d2d = 0.0, rate = 0.0, base = 0.0;
  int n = 0;
  for (const auto& m : g) {
    t_eh += m.t_eh_ms * m.rows;
    t_d2d += m.t_d2d_ms * m.rows;
    rate += m.rate_d2d_bps * m.rows;
    base += m.baseline_rate_bps * m.rows;
    n += m.rows;
  }
  if (n > 0) {
    checks.push_back({"mean T' above mean T''", t_eh > t_d2d,
                      format_double(t_eh / n) + " ms vs " + format_double(t_d2d / n) + " ms"});
    const double ratio = base > 0.0 ? rate / base : 0.0;
    checks.push_back({"D2D rate at least 1.8x the no-RIS baseline", ratio >= 1.8,
                      "ratio " + format_double(ratio)});
  }
  return checks;
}

SweepResult run_sweep(const SweepSpec& spec, const Overrides& overrides) {
  validate(spec);
  Config base = spec.base_config.empty() ? Config{} : read_config(spec.base_config);
  apply(overrides, base);
  const std::uint64_t seed0 = base.params.seed;

  SweepResult result;
  for (double value : spec.values) {
    for (int rep = 0; rep < spec.repetitions; ++rep) {
      Config c = base;
      set_axis(c, spec.axis, value);
      c.params.seed = seed0 + static_cast<std::uint64_t>(rep);
      const std::string id = axis_name(spec.axis) + "=" + format_double(value) + "/rep" + std::to_string(rep);
      std::vector<ResultRow> rows;
      try {
        rows = run_point(to_scenario(c), id);
      } catch (const Error& e) {
        ResultRow r;
        r.scenario_id = tag(id, "error");
        r.seed = c.params.seed;
        r.n = c.params.n_total;
        r.zeta = c.params.zeta;
        r.a_m = c.params.amp_factor;
        r.t_frame_ms = c.params.t_frame * 1e3;
        r.p_b_dbm = to_dbm(0.0);
        rows = {r};
      }
      result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
  }
  result.checks = trend_checks(result.rows, spec.axis);
  if (!spec.output.empty()) write_csv(spec.output, result.rows);
  return result;
}

// ---------------------------------------------------------------------------
// CSV

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  const auto& cols = result_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\r\n";
  auto d = [](double v) { return format_double(v); };
  for (const ResultRow& r : rows) {
    out << quote(r.scenario_id) << ',' << r.seed << ',' << r.n << ',' << d(r.zeta) << ','
        << d(r.a_m) << ',' << d(r.t_frame_ms) << ',' << d(r.t_eh_ms) << ',' << d(r.t_d2d_ms) << ','
        << r.m_star << ',' << r.k_star << ',' << r.ma << ',' << r.kp << ',' << r.microcontrollers
        << ',' << d(r.p_b_dbm) << ',' << d(r.harvested_mj) << ',' << d(r.ris_energy_mj) << ','
        << d(r.rate_bs_bps) << ',' << d(r.rate_d2d_bps) << ',' << r.iterations << ','
        << (r.converged ? "true" : "false") << ',' << d(r.baseline_rate_bps) << "\r\n";
  }
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write_csv(out, rows);
  if (!out) throw Error("failed writing '" + path + "'");
}

int Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw MissingColumn("missing column '" + name + "'");
  return static_cast<int>(it - header.begin());
}

Table parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, in_field = false;
  int line = 1;
  char c;
  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    in_field = false;
  };
  auto end_record = [&] {
    if (in_field || !record.empty()) end_field();
    if (!record.empty()) records.push_back(record);
    record.clear();
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw ParseError(line, "quote inside an unquoted field");
      quoted = true;
      in_field = true;
    } else if (c == ',') {
      end_field();
      in_field = true;
    } else if (c == '\r') {
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field += c;
      in_field = true;
    }
  }
  if (quoted) throw ParseError(line, "unterminated quoted field");
  end_record();
  Table t;
  if (records.empty()) return t;
  t.header = records.front();
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != t.header.size())
      throw ParseError(static_cast<int>(i + 1), "expected " + std::to_string(t.header.size()) + " fields");
    t.rows.push_back(records[i]);
  }
  return t;
}

Table read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_csv(in);
}

namespace {

double number(const std::string& s, int line) {
  std::string rest;
  const double v = parse_number(s, line, rest);
  if (!rest.empty()) throw ParseError(line, "unexpected '" + rest + "'");
  return v;
}

}  // namespace

std::vector<ResultRow> rows_from_table(const Table& t) {
  std::vector<int> idx;
  for (const auto& name : result_columns()) idx.push_back(t.column(name));
  std::vector<ResultRow> rows;
  int line = 1;
  for (const auto& f : t.rows) {
    ++line;
    auto num = [&](int k) { return number(f[idx[k]], line); };
    auto whole = [&](int k) { return std::llround(num(k)); };
    ResultRow r;
    r.scenario_id = f[idx[0]];
    r.seed = static_cast<std::uint64_t>(whole(1));
    r.n = whole(2);
    r.zeta = num(3);
    r.a_m = num(4);
    r.t_frame_ms = num(5);
    r.t_eh_ms = num(6);
    r.t_d2d_ms = num(7);
    r.m_star = whole(8);
    r.k_star = whole(9);
    r.ma = whole(10);
    r.kp = whole(11);
    r.microcontrollers = whole(12);
    r.p_b_dbm = num(13);
    r.harvested_mj = num(14);
    r.ris_energy_mj = num(15);
    r.rate_bs_bps = num(16);
    r.rate_d2d_bps = num(17);
    r.iterations = static_cast<int>(whole(18));
    const std::string conv = f[idx[19]];
    if (conv != "true" && conv != "false") throw ParseError(line, "converged must be true or false");
    r.converged = conv == "true";
    r.baseline_rate_bps = num(20);
    rows.push_back(r);
  }
  return rows;
}

void write_trace(std::ostream& out, const SolveReport& elements, const SolveReport* modules) {
  out << "algorithm,iteration,energy_mJ\r\n";
  // The refinement after the loop is reported as one extra point of its own series.
  auto dump = [&](const std::string& name, const SolveReport& r) {
    for (std::size_t i = 0; i < r.trace.size(); ++i)
      out << name << ',' << i + 1 << ',' << format_double(r.trace[i] * 1e3) << "\r\n";
    out << name << "_refined," << r.trace.size() + 1 << ',' << format_double(r.ris_energy * 1e3)
        << "\r\n";
  };
  dump("algorithm1", elements);
  if (modules) dump("algorithm2", *modules);
}

// ---------------------------------------------------------------------------
// Plot data

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"convergence", "time_split", "harvest_time",
                                                 "elements_am", "micro_n", "rates_am"};
  return names;
}

namespace {

struct Series {
  std::string name;
  std::function<double(const ResultRow&)> get;
};

// Mean of every series per distinct x, in order of first appearance.
std::string grouped(const std::vector<ResultRow>& rows, std::function<double(const ResultRow&)> x,
                    const std::vector<Series>& series, bool include_baseline_rows = false) {
  std::vector<double> xs;
  std::map<double, std::vector<double>> sums;
  std::map<double, int> counts;
  for (const ResultRow& r : rows) {
    if (r.failed() || (r.is_baseline() && !include_baseline_rows)) continue;
    const double key = x(r);
    if (!counts.count(key)) {
      xs.push_back(key);
      sums[key].assign(series.size(), 0.0);
    }
    ++counts[key];
    for (std::size_t i = 0; i < series.size(); ++i) sums[key][i] += series[i].get(r);
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < series.size(); ++i)
    for (double key : xs)
      out << format_double(key) << ' ' << format_double(sums[key][i] / counts[key]) << ' '
          << series[i].name << '\n';
  return out.str();
}

}  // namespace

std::string emit_plotdata(const Table& table, const std::string& figure) {
  std::ostringstream out;
  out << "# " << figure << "\n# x y series\n";
  if (figure == "convergence") {
    const int a = table.column("algorithm");
    const int it = table.column("iteration");
    const int e = table.column("energy_mJ");
    int line = 1;
    for (const auto& r : table.rows) {
      ++line;
      out << format_double(number(r[it], line)) << ' ' << format_double(number(r[e], line)) << ' '
          << r[a] << '\n';
    }
    return out.str();
  }
  const auto rows = rows_from_table(table);
  if (figure == "time_split") {
    out << grouped(rows, [](const ResultRow& r) { return r.t_frame_ms; },
                   {{"t_eh_ms", [](const ResultRow& r) { return r.t_eh_ms; }},
                    {"t_d2d_ms", [](const ResultRow& r) { return r.t_d2d_ms; }}});
  } else if (figure == "harvest_time") {
    for (const ResultRow& r : rows) {
      if (r.failed() || r.is_baseline()) continue;
      out << format_double(r.t_eh_ms) << ' ' << format_double(r.harvested_mj) << " zeta="
          << format_double(r.zeta) << '\n';
    }
  } else if (figure == "elements_am") {
    out << grouped(rows, [](const ResultRow& r) { return r.a_m; },
                   {{"active", [](const ResultRow& r) { return double(r.m_star); }},
                    {"passive", [](const ResultRow& r) { return double(r.k_star); }}});
  } else if (figure == "micro_n") {
    out << grouped(rows, [](const ResultRow& r) { return double(r.n); },
                   {{"active_modules", [](const ResultRow& r) { return double(r.ma); }},
                    {"passive_modules", [](const ResultRow& r) { return double(r.kp); }},
                    {"microcontrollers", [](const ResultRow& r) { return double(r.microcontrollers); }}});
  } else if (figure == "rates_am") {
    out << grouped(rows, [](const ResultRow& r) { return r.a_m; },
                   {{"d2d_ris", [](const ResultRow& r) { return r.rate_d2d_bps; }},
                    {"d2d_no_ris", [](const ResultRow& r) { return r.baseline_rate_bps; }},
                    {"bs", [](const ResultRow& r) { return r.rate_bs_bps; }}});
  } else {
    throw InvalidParam("figure", "unknown figure '" + figure + "'");
  }
  return out.str();
}

}  // namespace risopt::harness
