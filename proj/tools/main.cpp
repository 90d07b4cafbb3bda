// qfisim command-line front-end: configures a model, runs an oracle /
// extraction / sweep / scan job through the library, and writes plot-ready
// CSV or JSON series plus a JSON sidecar carrying the fully resolved config.

#include "CLI11.hpp"
#include "json.hpp"
#include "qfisim/protocol.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::ordered_json;
using namespace qfisim;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  json extra = json::object();
};

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", x);  // 12 significant digits
  return buf;
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError("unknown key \"" + key + "\" in " + where);
  }
}

double get_number(const json& obj, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("missing required key \"" + key + "\"");
  if (!obj[key].is_number()) throw ConfigError("key \"" + key + "\" must be a number");
  return obj[key].get<double>();
}

double get_number_or(const json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? get_number(obj, key) : fallback;
}

int get_int(const json& obj, const std::string& key, std::optional<int> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key \"" + key + "\"");
  }
  if (!obj[key].is_number_integer())
    throw ConfigError("key \"" + key + "\" must be an integer");
  return obj[key].get<int>();
}

std::vector<double> get_number_list(const json& obj, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_array())
    throw ConfigError("key \"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) throw ConfigError("key \"" + key + "\" must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

RealVector get_param_vector(const json& obj, const std::string& key, int expected) {
  const auto values = get_number_list(obj, key);
  if (int(values.size()) != expected)
    throw ConfigError("key \"" + key + "\" must have " + std::to_string(expected) +
                      " entries");
  RealVector out(expected);
  for (int i = 0; i < expected; ++i) out(i) = values[i];
  return out;
}

/// Grid spec: either {"values": [...]} or {"start": a, "stop": b, "step": s}.
std::vector<double> parse_grid(const json& grid, const std::string& where) {
  require_keys(grid, where, {"values", "start", "stop", "step"});
  if (grid.contains("values")) return get_number_list(grid, "values");
  const double start = get_number(grid, "start");
  const double stop = get_number(grid, "stop");
  const double step = get_number(grid, "step");
  if (step <= 0.0) throw ConfigError(where + ".step must be positive");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double x = start + i * step;
    if (x > stop + 0.5 * step) break;
    out.push_back(x);
  }
  if (out.empty()) throw ConfigError(where + " is empty");
  return out;
}

ModelSpec parse_model(const json& m) {
  if (!m.is_object() || !m.contains("type") || !m["type"].is_string())
    throw ConfigError("model.type is required");
  const std::string type = m["type"].get<std::string>();
  if (type == "two-level") {
    require_keys(m, "model", {"type", "field"});
    return TwoLevelModel{get_number_or(m, "field", 1.0)};
  }
  if (type == "two-param") {
    require_keys(m, "model", {"type", "field"});
    return TwoParamModel{get_number_or(m, "field", 1.0)};
  }
  if (type == "nv") {
    require_keys(m, "model",
                 {"type", "hyperfine_x", "hyperfine_z", "rabi", "nuclear_zeeman",
                  "printed_sz_drive"});
    NVTwoQubitModel nv = nv_default();
    nv.hyperfine_x = get_number_or(m, "hyperfine_x", nv.hyperfine_x);
    nv.hyperfine_z = get_number_or(m, "hyperfine_z", nv.hyperfine_z);
    nv.rabi = get_number_or(m, "rabi", nv.rabi);
    nv.nuclear_zeeman = get_number_or(m, "nuclear_zeeman", nv.nuclear_zeeman);
    if (m.contains("printed_sz_drive")) {
      if (!m["printed_sz_drive"].is_boolean())
        throw ConfigError("model.printed_sz_drive must be a boolean");
      nv.printed_sz_drive = m["printed_sz_drive"].get<bool>();
    }
    return nv;
  }
  if (type == "tfim") {
    require_keys(m, "model", {"type", "coupling", "sites"});
    return TfimModel{get_number(m, "coupling"), get_int(m, "sites")};
  }
  if (type == "heisenberg") {
    require_keys(m, "model", {"type", "coupling", "sites"});
    return HeisenbergModel{get_number_or(m, "coupling", 0.0), get_int(m, "sites")};
  }
  throw ConfigError("unknown model.type \"" + type + "\"");
}

ExtractOptions extract_options(const json& cfg) {
  ExtractOptions opts;
  opts.evolution.steps = get_int(cfg, "steps", 0);
  return opts;
}

/// Runs f(i) for i in [0, n) on a pool of `jobs` workers; rethrows the first
/// worker exception. Results must be written into index-addressed slots so
/// output order never depends on completion order.
template <typename F>
void parallel_for(int n, int jobs, F&& f) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> extraction_row(const QfiEstimate& e) {
  return {e.v_used, e.sah, e.variance, e.value, e.oracle.value_or(kNaN),
          e.rel_error.value_or(kNaN)};
}

const std::vector<std::string> kExtractionColumns = {"v",        "sah",    "variance",
                                                     "estimate", "oracle", "rel_error"};

// ---------------------------------------------------------------------------
// Jobs
// ---------------------------------------------------------------------------

Table run_oracle(const ModelSpec& spec, const json& cfg) {
  require_keys(cfg, "config", {"job", "model", "output", "seed", "params", "which"});
  const RealVector params = get_param_vector(cfg, "params", param_count(spec));
  const int which = get_int(cfg, "which", 0);
  Table t;
  t.columns = param_names(spec);
  t.columns.push_back("qfi");
  std::vector<double> row(params.data(), params.data() + params.size());
  row.push_back(qfi_ground(spec, params, which));
  t.rows.push_back(std::move(row));
  return t;
}

Table run_extract(const ModelSpec& spec, const json& cfg, int jobs) {
  require_keys(cfg, "config",
               {"job", "model", "output", "seed", "target", "which", "excursion", "v",
                "steps", "grid", "grid_param"});
  const RealVector target = get_param_vector(cfg, "target", param_count(spec));
  const int which = get_int(cfg, "which", 0);
  const double excursion = get_number(cfg, "excursion");
  const double v = get_number(cfg, "v");
  const ExtractOptions opts = extract_options(cfg);

  std::vector<double> grid;
  int grid_param = which;
  if (cfg.contains("grid")) {
    grid = parse_grid(cfg["grid"], "grid");
    grid_param = get_int(cfg, "grid_param", which);
    if (grid_param < 0 || grid_param >= param_count(spec))
      throw ConfigError("grid_param out of range");
  } else {
    grid.push_back(target(which >= 0 && which < param_count(spec) ? which : 0));
    grid_param = which;
  }

  Table t;
  t.columns = param_names(spec);
  t.columns.insert(t.columns.end(), kExtractionColumns.begin(), kExtractionColumns.end());
  t.rows.resize(grid.size());
  parallel_for(int(grid.size()), jobs, [&](int i) {
    RealVector point = target;
    point(grid_param) = grid[i];
    const QfiEstimate e = extract_qfi(spec, point, which, excursion, v, opts);
    std::vector<double> row(point.data(), point.data() + point.size());
    const auto tail = extraction_row(e);
    row.insert(row.end(), tail.begin(), tail.end());
    t.rows[i] = std::move(row);
  });
  return t;
}

Table run_sweep(const ModelSpec& spec, const json& cfg) {
  require_keys(cfg, "config",
               {"job", "model", "output", "seed", "target", "which", "excursion", "v_list",
                "steps"});
  const RealVector target = get_param_vector(cfg, "target", param_count(spec));
  const int which = get_int(cfg, "which", 0);
  const double excursion = get_number(cfg, "excursion");
  const auto velocities = get_number_list(cfg, "v_list");
  const ExtractOptions opts = extract_options(cfg);

  const SweepResult sweep =
      extract_qfi_sweep(spec, target, which, excursion, velocities, opts);
  Table t;
  t.columns = {"v", "sah", "variance", "estimate"};
  for (size_t i = 0; i < sweep.velocities.size(); ++i)
    t.rows.push_back(
        {sweep.velocities[i], sweep.sahs[i], sweep.variances[i], sweep.estimates[i]});
  t.extra["extrapolated"] = sweep.extrapolated;
  t.extra["slope_loglog"] = sweep.slope_loglog;
  t.extra["oracle"] = qfi_ground(spec, target, which);
  return t;
}

Table run_qfim_sum(const ModelSpec& spec, const json& cfg, int jobs) {
  require_keys(cfg, "config",
               {"job", "model", "output", "seed", "start", "pair", "excursion", "v",
                "steps", "grid", "grid_param"});
  const RealVector start = get_param_vector(cfg, "start", param_count(spec));
  const auto pair_list = get_number_list(cfg, "pair");
  if (pair_list.size() != 2) throw ConfigError("pair must hold exactly two indices");
  const std::pair<int, int> pair{int(pair_list[0]), int(pair_list[1])};
  const double excursion = get_number(cfg, "excursion");
  const double v = get_number(cfg, "v");
  const ExtractOptions opts = extract_options(cfg);

  std::vector<double> grid = {start(pair.first)};
  int grid_param = pair.first;
  if (cfg.contains("grid")) {
    grid = parse_grid(cfg["grid"], "grid");
    grid_param = get_int(cfg, "grid_param", pair.first);
  }

  Table t;
  for (const auto& name : param_names(spec)) t.columns.push_back(name + "_start");
  t.columns.insert(t.columns.end(), {"v", "sum", "oracle_sum", "f_aa", "f_bb", "f_ab",
                                     "f_ab_oracle", "rel_error_sum"});
  t.rows.resize(grid.size());
  parallel_for(int(grid.size()), jobs, [&](int i) {
    RealVector point = start;
    point(grid_param) = grid[i];
    const double sum = extract_qfim_sum(spec, point, pair, excursion, v, opts);
    RealVector target = point;
    target(pair.first) += excursion;
    target(pair.second) += excursion;
    const QfimMatrix f = qfim_ground(spec, target, {pair.first, pair.second});
    const double oracle_sum = f.values(0, 0) + f.values(1, 1) + 2.0 * f.values(0, 1);
    const double f_ab = qfim_offdiagonal(sum, f.values(0, 0), f.values(1, 1));
    std::vector<double> row(point.data(), point.data() + point.size());
    row.insert(row.end(),
               {v, sum, oracle_sum, f.values(0, 0), f.values(1, 1), f_ab, f.values(0, 1),
                std::abs(sum - oracle_sum) / std::max(std::abs(oracle_sum), 1e-300)});
    t.rows[i] = std::move(row);
  });
  return t;
}

Table run_tfim_curve(const ModelSpec& spec, const json& cfg, int jobs) {
  require_keys(cfg, "config",
               {"job", "model", "output", "seed", "grid", "excursion", "v", "steps"});
  if (!std::holds_alternative<TfimModel>(spec))
    throw ConfigError("tfim-curve requires model.type = tfim");
  const TfimModel& tfim = std::get<TfimModel>(spec);
  if (!cfg.contains("grid")) throw ConfigError("missing required key \"grid\"");
  const auto grid = parse_grid(cfg["grid"], "grid");
  const double excursion = get_number(cfg, "excursion");
  const double v = get_number(cfg, "v");
  const ExtractOptions opts = extract_options(cfg);

  Table t;
  t.columns = {"B",   "qfi_extracted", "qfi_analytic", "qfi_spectral", "rel_error",
               "sah", "variance",      "v"};
  t.rows.resize(grid.size());
  parallel_for(int(grid.size()), jobs, [&](int i) {
    RealVector target(1);
    target << grid[i];
    const QfiEstimate e = extract_qfi(spec, target, 0, excursion, v, opts);
    const double analytic = tfim_qfi_analytic(tfim.coupling, grid[i], tfim.sites);
    t.rows[i] = {grid[i],
                 e.value,
                 analytic,
                 e.oracle.value_or(kNaN),
                 std::abs(e.value - analytic) / std::max(std::abs(analytic), 1e-300),
                 e.sah,
                 e.variance,
                 v};
  });
  return t;
}

Table run_heisenberg_scan(const ModelSpec& spec, const json& cfg, int jobs) {
  require_keys(cfg, "config",
               {"job", "model", "output", "seed", "grid", "theta", "extract", "excursion",
                "v", "steps"});
  if (!std::holds_alternative<HeisenbergModel>(spec))
    throw ConfigError("heisenberg-scan requires model.type = heisenberg");
  const HeisenbergModel family = std::get<HeisenbergModel>(spec);
  if (!cfg.contains("grid")) throw ConfigError("missing required key \"grid\"");
  const auto grid = parse_grid(cfg["grid"], "grid");
  const double theta = get_number(cfg, "theta");
  const bool do_extract = cfg.contains("extract") && cfg["extract"].is_boolean()
                              ? cfg["extract"].get<bool>()
                              : false;
  if (cfg.contains("extract") && !cfg["extract"].is_boolean())
    throw ConfigError("key \"extract\" must be a boolean");

  const CrossingScan scan = scan_ground_crossings(family, grid, theta);

  const double excursion = do_extract ? get_number(cfg, "excursion") : 0.0;
  const double v = do_extract ? get_number(cfg, "v") : 0.0;
  const ExtractOptions opts = extract_options(cfg);

  Table t;
  t.columns = {"J", "gap", "qfi_oracle", "qfi_extracted"};
  t.rows.resize(grid.size());
  RealVector target(1);
  target << theta;
  parallel_for(int(grid.size()), jobs, [&](int i) {
    HeisenbergModel m = family;
    m.coupling = grid[i];
    double oracle = kNaN, extracted = kNaN;
    try {
      oracle = qfi_ground(ModelSpec{m}, target, 0);
      if (do_extract) extracted = extract_qfi(ModelSpec{m}, target, 0, excursion, v, opts).value;
    } catch (const DegenerateGroundStateError&) {
      // Grid point on a crossing: emitted as NaN, locus reported in extra.
    }
    t.rows[i] = {grid[i], scan.gaps[i], oracle, extracted};
  });

  t.extra["crossings"] = json::array();
  for (const auto& [lo, hi] : scan.crossings) t.extra["crossings"].push_back({lo, hi});
  t.extra["degenerate_points"] = scan.degenerate_points;
  return t;
}

Table run_nv_curve(const ModelSpec& spec, const json& cfg, int jobs) {
  require_keys(cfg, "config",
               {"job", "model", "output", "seed", "theta_grid", "phi", "excursion", "v",
                "steps"});
  if (!std::holds_alternative<NVTwoQubitModel>(spec))
    throw ConfigError("nv-curve requires model.type = nv");
  if (!cfg.contains("theta_grid")) throw ConfigError("missing required key \"theta_grid\"");
  const auto grid = parse_grid(cfg["theta_grid"], "theta_grid");
  const double phi = get_number_or(cfg, "phi", 0.0);
  const double excursion = get_number(cfg, "excursion");
  const double v = get_number(cfg, "v");
  const ExtractOptions opts = extract_options(cfg);

  Table t;
  t.columns = {"theta",           "f_theta_extracted", "f_theta_oracle", "f_theta_rel_error",
               "f_phi_extracted", "f_phi_oracle",      "f_phi_rel_error", "v"};
  t.rows.resize(grid.size());
  parallel_for(int(grid.size()), jobs, [&](int i) {
    RealVector target(2);
    target << grid[i], phi;
    const QfiEstimate ft = extract_qfi(spec, target, 0, excursion, v, opts);
    const QfiEstimate fp = extract_qfi(spec, target, 1, excursion, v, opts);
    t.rows[i] = {grid[i],
                 ft.value,
                 ft.oracle.value_or(kNaN),
                 ft.rel_error.value_or(kNaN),
                 fp.value,
                 fp.oracle.value_or(kNaN),
                 fp.rel_error.value_or(kNaN),
                 v};
  });
  return t;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

json table_to_json(const Table& t, const json& resolved, double wall_seconds) {
  json doc;
  doc["version"] = kVersion;
  doc["config"] = resolved;
  doc["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    // NaN is not representable in JSON; emit null, which round-trips.
    for (double x : row) {
      if (std::isnan(x))
        r.push_back(nullptr);
      else
        r.push_back(x);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["extra"] = t.extra;
  doc["wall_time_s"] = wall_seconds;
  return doc;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

void emit(const Table& t, const json& resolved, const std::string& path,
          const std::string& format, double wall_seconds) {
  if (format == "csv") {
    std::ostringstream csv;
    for (size_t c = 0; c < t.columns.size(); ++c)
      csv << t.columns[c] << (c + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows) {
      for (size_t c = 0; c < row.size(); ++c)
        csv << format_number(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
    if (path.empty()) {
      std::cout << csv.str();
    } else {
      write_file(path, csv.str());
      write_file(path + ".meta.json",
                 table_to_json(t, resolved, wall_seconds).dump(2) + "\n");
    }
  } else if (format == "json") {
    const std::string doc = table_to_json(t, resolved, wall_seconds).dump(2) + "\n";
    if (path.empty())
      std::cout << doc;
    else
      write_file(path, doc);
  } else {
    throw ConfigError("output format must be csv or json");
  }
}

int run(const std::string& job, json cfg, int jobs) {
  if (cfg.contains("job")) {
    if (!cfg["job"].is_string() || cfg["job"].get<std::string>() != job)
      throw ConfigError("config job \"" + cfg.value("job", std::string{}) +
                        "\" does not match subcommand \"" + job + "\"");
  }
  cfg["job"] = job;
  if (cfg.contains("seed") && !cfg["seed"].is_number_integer())
    throw ConfigError("seed must be an integer");

  // Reject unknown top-level keys before touching the model, so a typo such
  // as "modle" is reported as the parse error it is.
  static const std::map<std::string, std::set<std::string>> kJobKeys = {
      {"oracle", {"params", "which"}},
      {"extract", {"target", "which", "excursion", "v", "steps", "grid", "grid_param"}},
      {"sweep", {"target", "which", "excursion", "v_list", "steps"}},
      {"qfim-sum", {"start", "pair", "excursion", "v", "steps", "grid", "grid_param"}},
      {"tfim-curve", {"grid", "excursion", "v", "steps"}},
      {"heisenberg-scan", {"grid", "theta", "extract", "excursion", "v", "steps"}},
      {"nv-curve", {"theta_grid", "phi", "excursion", "v", "steps"}},
  };
  const auto it = kJobKeys.find(job);
  if (it == kJobKeys.end()) throw ConfigError("unknown job \"" + job + "\"");
  std::set<std::string> allowed = {"job", "model", "output", "seed"};
  allowed.insert(it->second.begin(), it->second.end());
  require_keys(cfg, "config", allowed);

  std::string out_path, format = "csv";
  if (cfg.contains("output")) {
    require_keys(cfg["output"], "output", {"path", "format"});
    if (cfg["output"].contains("path")) out_path = cfg["output"]["path"].get<std::string>();
    if (cfg["output"].contains("format"))
      format = cfg["output"]["format"].get<std::string>();
  }
  if (format != "csv" && format != "json")
    throw ConfigError("output format must be csv or json");

  const ModelSpec spec = parse_model(cfg.contains("model") ? cfg["model"] : json::object());

  const auto t0 = std::chrono::steady_clock::now();
  Table table;
  if (job == "oracle")
    table = run_oracle(spec, cfg);
  else if (job == "extract")
    table = run_extract(spec, cfg, jobs);
  else if (job == "sweep")
    table = run_sweep(spec, cfg);
  else if (job == "qfim-sum")
    table = run_qfim_sum(spec, cfg, jobs);
  else if (job == "tfim-curve")
    table = run_tfim_curve(spec, cfg, jobs);
  else if (job == "heisenberg-scan")
    table = run_heisenberg_scan(spec, cfg, jobs);
  else if (job == "nv-curve")
    table = run_nv_curve(spec, cfg, jobs);
  else
    throw ConfigError("unknown job \"" + job + "\"");
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  emit(table, cfg, out_path, format, wall);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Fisher information extraction toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  int jobs = int(std::max(1u, std::thread::hardware_concurrency()));
  int steps = -1;
  double v = -1.0;
  std::string v_list;
  std::vector<std::string> sets;

  const std::vector<std::string> job_names = {"oracle",     "extract",         "sweep",
                                              "qfim-sum",   "tfim-curve",      "heisenberg-scan",
                                              "nv-curve"};
  for (const auto& name : job_names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_path, "output file path");
    sub->add_option("--format", format, "csv or json");
    sub->add_option("--jobs", jobs, "worker pool size");
    sub->add_option("--steps", steps, "propagation step count");
    sub->add_option("--v", v, "quench velocity");
    sub->add_option("--v-list", v_list, "comma-separated velocities (sweep)");
    sub->add_option("--set", sets, "model override key=value (repeatable)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", "ConfigParse"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot open config file " + config_path);
      try {
        cfg = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError(e.what());
      }
    }
    // Command-line overrides.
    if (!out_path.empty()) cfg["output"]["path"] = out_path;
    if (!format.empty()) cfg["output"]["format"] = format;
    if (steps >= 0) cfg["steps"] = steps;
    if (v > 0.0) cfg["v"] = v;
    if (!v_list.empty()) {
      json arr = json::array();
      std::stringstream ss(v_list);
      std::string item;
      while (std::getline(ss, item, ',')) arr.push_back(std::stod(item));
      cfg["v_list"] = std::move(arr);
    }
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value");
      const std::string key = kv.substr(0, eq);
      json value;
      try {
        value = json::parse(kv.substr(eq + 1));
      } catch (const json::parse_error&) {
        value = kv.substr(eq + 1);  // plain string (e.g. type=tfim)
      }
      cfg["model"][key] = std::move(value);
    }

    return run(app.get_subcommands().front()->get_name(), std::move(cfg), jobs);
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", "ConfigParse"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << json{{"error", "Io"}, {"message", e.what()}}.dump() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << json{{"error", e.name()}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
}
