#include "srs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace srs {

namespace {

std::string normalize_key(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key, "expected a real number, got '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(const std::string& key, std::string_view text) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + std::string(text) + "'");
}

std::string format_number(double value) {
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

std::string short_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

int checked_int(const std::string& key, std::string_view text, long long lo, long long hi) {
  const long long v = parse_integer(key, text);
  if (v < lo || v > hi) {
    throw ConfigError(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

double checked_real(const std::string& key, std::string_view text, double lo, double hi) {
  const double v = parse_double(key, text);
  if (v < lo || v > hi) {
    throw ConfigError(key, "must lie in [" + short_number(lo) + ", " + short_number(hi) + "]");
  }
  return v;
}

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxInt = std::numeric_limits<int>::max();

struct Setting {
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<Setting>& settings_table() {
  using C = ExperimentConfig;
  using K = const std::string&;
  using V = std::string_view;
  static const std::vector<Setting> table{
      {"preset",
       [](C& c, K k, V v) {
         const auto& names = preset_names();
         if (std::find(names.begin(), names.end(), v) == names.end()) {
           throw ConfigError(k, "unknown preset '" + std::string(v) + "'");
         }
         c.preset = std::string(v);
       },
       [](const C& c) { return c.preset; }},
      {"width", [](C& c, K k, V v) { c.width = checked_int(k, v, 3, 100000); },
       [](const C& c) { return std::to_string(c.width); }},
      {"height", [](C& c, K k, V v) { c.height = checked_int(k, v, 3, 100000); },
       [](const C& c) { return std::to_string(c.height); }},
      {"t_max", [](C& c, K k, V v) { c.t_max = checked_int(k, v, 1, kMaxInt); },
       [](const C& c) { return std::to_string(c.t_max); }},
      {"seed",
       [](C& c, K k, V v) {
         std::uint64_t value = 0;
         const auto* end = v.data() + v.size();
         const auto [ptr, ec] = std::from_chars(v.data(), end, value);
         if (ec != std::errc() || ptr != end) throw ConfigError(k, "expected an unsigned integer");
         c.seed = value;
       },
       [](const C& c) { return std::to_string(c.seed); }},
      {"repeats", [](C& c, K k, V v) { c.repeats = checked_int(k, v, 1, kMaxInt); },
       [](const C& c) { return std::to_string(c.repeats); }},
      {"jobs", [](C& c, K k, V v) { c.jobs = checked_int(k, v, 1, 1024); },
       [](const C& c) { return std::to_string(c.jobs); }},
      {"eps", [](C& c, K k, V v) { c.eps = checked_real(k, v, 0.0, kInf); },
       [](const C& c) { return format_number(c.eps); }},
      {"out",
       [](C& c, K k, V v) {
         if (v.empty()) throw ConfigError(k, "must not be empty");
         c.out = std::string(v);
       },
       [](const C& c) { return c.out.string(); }},
      {"snapshots", [](C& c, K k, V v) { c.snapshots = checked_int(k, v, 0, kMaxInt); },
       [](const C& c) { return std::to_string(c.snapshots); }},
      {"v", [](C& c, K k, V v) { c.v = checked_real(k, v, 0.0, kInf); },
       [](const C& c) { return format_number(c.v); }},
      {"s", [](C& c, K k, V v) { c.s = parse_double(k, v); },
       [](const C& c) { return format_number(c.s); }},
      {"uf", [](C& c, K k, V v) { c.uf = checked_int(k, v, 1, kMaxInt); },
       [](const C& c) { return std::to_string(c.uf); }},
      {"beta", [](C& c, K k, V v) { c.swarm.beta = checked_real(k, v, 0.0, kInf); },
       [](const C& c) { return format_number(c.swarm.beta); }},
      {"gamma", [](C& c, K k, V v) { c.swarm.gamma = checked_real(k, v, 0.0, kInf); },
       [](const C& c) { return format_number(c.swarm.gamma); }},
      {"eta", [](C& c, K k, V v) { c.swarm.eta = checked_real(k, v, 0.0, kInf); },
       [](const C& c) { return format_number(c.swarm.eta); }},
      {"k", [](C& c, K k, V v) { c.swarm.k = checked_real(k, v, 0.0, 1.0); },
       [](const C& c) { return format_number(c.swarm.k); }},
      {"p", [](C& c, K k, V v) { c.swarm.p = checked_real(k, v, 0.0, kInf); },
       [](const C& c) { return format_number(c.swarm.p); }},
      {"delta_e", [](C& c, K k, V v) { c.swarm.delta_e = checked_real(k, v, 0.0, 1.0); },
       [](const C& c) { return format_number(c.swarm.delta_e); }},
      {"initial_density",
       [](C& c, K k, V v) {
         const double d = parse_double(k, v);
         if (!(d > 0.0 && d < 1.0)) throw ConfigError(k, "must lie strictly between 0 and 1");
         c.swarm.initial_density = d;
       },
       [](const C& c) { return format_number(c.swarm.initial_density); }},
      {"survival_mode",
       [](C& c, K k, V v) {
         if (v == "stochastic") {
           c.swarm.survival_mode = SurvivalMode::stochastic;
         } else if (v == "deterministic") {
           c.swarm.survival_mode = SurvivalMode::deterministic;
         } else {
           throw ConfigError(k, "expected stochastic or deterministic");
         }
       },
       [](const C& c) {
         return std::string(c.swarm.survival_mode == SurvivalMode::stochastic ? "stochastic"
                                                                              : "deterministic");
       }},
      {"reset_extremes_on_change",
       [](C& c, K k, V v) { c.swarm.reset_extremes_on_change = parse_bool(k, v); },
       [](const C& c) { return std::string(c.swarm.reset_extremes_on_change ? "true" : "false"); }},
      {"children_age_immediately",
       [](C& c, K k, V v) { c.swarm.children_age_immediately = parse_bool(k, v); },
       [](const C& c) { return std::string(c.swarm.children_age_immediately ? "true" : "false"); }},
      {"ode_steps", [](C& c, K k, V v) { c.ode_steps = checked_int(k, v, 1, kMaxInt); },
       [](const C& c) { return std::to_string(c.ode_steps); }},
  };
  return table;
}

const Setting& find_setting(std::string_view key) {
  const std::string norm = normalize_key(key);
  for (const Setting& s : settings_table()) {
    if (s.key == norm) return s;
  }
  throw ConfigError(norm, "unknown key");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string run_filename(int run_id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%03d", run_id);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"ackley-speed", "ackley-jump", "schaffer-severity",
                                              "schaffer-frequency", "control"};
  return names;
}

ExperimentConfig preset_defaults(std::string_view preset) {
  ExperimentConfig c;
  if (preset == "ackley-speed") {
    c.t_max = 100;
    c.v = 0.0;
  } else if (preset == "ackley-jump") {
    c.t_max = 100;
    c.uf = 5;
  } else if (preset == "schaffer-severity") {
    c.t_max = 400;
    c.s = 0.1;
    c.uf = 50;
  } else if (preset == "schaffer-frequency") {
    c.t_max = 400;
    c.s = 1.0;
    c.uf = 50;
  } else if (preset == "control") {
    c.t_max = 400;
    c.s = 0.1;
    c.uf = 50;
    c.swarm.delta_e = 0.01;
  } else {
    throw ConfigError("preset", "unknown preset '" + std::string(preset) + "'");
  }
  c.preset = std::string(preset);
  return c;
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const Setting& s : settings_table()) out.push_back(s.key);
    return out;
  }();
  return keys;
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  const Setting& setting = find_setting(key);
  setting.set(config, setting.key, trim(value));
}

std::string get_setting(const ExperimentConfig& config, std::string_view key) {
  return find_setting(key).get(config);
}

Settings read_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  Settings out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", path.string() + ":" + std::to_string(line_no) +
                                      ": expected 'key = value'");
    }
    const std::string key = normalize_key(trim(view.substr(0, eq)));
    find_setting(key);  // rejects unknown keys early
    out[key] = std::string(trim(view.substr(eq + 1)));
  }
  return out;
}

ExperimentConfig resolve_config(const Settings& file, const Settings& flags) {
  std::string preset;
  for (const Settings* layer : {&file, &flags}) {
    for (const auto& [key, value] : *layer) {
      if (normalize_key(key) == "preset") preset = value;
    }
  }
  if (preset.empty()) throw ConfigError("preset", "no preset given");
  ExperimentConfig config = preset_defaults(preset);
  for (const Settings* layer : {&file, &flags}) {
    for (const auto& [key, value] : *layer) apply_setting(config, key, value);
  }
  return config;
}

std::string primary_param(std::string_view preset) {
  if (preset == "ackley-speed") return "v";
  if (preset == "ackley-jump" || preset == "schaffer-frequency") return "uf";
  return "s";
}

Landscape make_landscape(const ExperimentConfig& c) {
  const auto square = [&](double half) {
    DomainMap d;
    d.lo = Eigen::Vector2d(-half, -half);
    d.hi = Eigen::Vector2d(half, half);
    d.width = c.width;
    d.height = c.height;
    return d;
  };
  if (c.preset == "ackley-speed") {
    return Landscape(BaseFunction::ackley, square(2.0), LinearPath{c.v}, c.ode_steps);
  }
  if (c.preset == "ackley-jump") {
    return Landscape(BaseFunction::ackley, square(2.0), JumpCycle{c.uf, default_jump_points()},
                     c.ode_steps);
  }
  if (c.preset == "schaffer-severity" || c.preset == "schaffer-frequency") {
    return Landscape(BaseFunction::schaffer_f7, square(1.0), SeverityDrift{c.s, c.uf}, c.ode_steps);
  }
  if (c.preset == "control") {
    return Landscape(BaseFunction::optimal_control, square(kControlBound),
                     SeverityDrift{c.s, c.uf}, c.ode_steps);
  }
  throw ConfigError("preset", "unknown preset '" + c.preset + "'");
}

std::uint64_t repeat_seed(std::uint64_t master, int repeat) {
  return mix_seed(master + static_cast<std::uint64_t>(repeat));
}

RunSummary simulate(const ExperimentConfig& config, std::uint64_t seed,
                    const std::optional<std::filesystem::path>& snapshot_dir) {
  SwarmParams params = config.swarm;
  Landscape landscape = make_landscape(config);
  params.objective = landscape.objective();
  params.validate();

  HabitatGrid grid(config.width, config.height);
  Rng rng(seed);
  Colony colony = init_colony(grid, params.initial_density, rng);

  RunSummary summary;
  summary.records.reserve(config.t_max);
  int previous_epoch = landscape.epoch(0);
  for (int t = 0; t < config.t_max; ++t) {
    const int epoch = landscape.epoch(t);
    if (epoch != previous_epoch && params.reset_extremes_on_change) colony.extremes.reset();
    previous_epoch = epoch;

    const Eigen::ArrayXXd& altitude = landscape.field(t);
    const StepOutcome outcome = colony_step(colony, grid, altitude, params, rng);
    const Optimum optimum = landscape.true_optimum(t);
    summary.records.push_back(
        record_step(t, epoch, outcome.altitudes, optimum.value, params.objective, config.eps));

    if (snapshot_dir && config.snapshots > 0 && (t + 1) % config.snapshots == 0) {
      write_pgm(*snapshot_dir / snapshot_filename(t + 1), grid.pheromone_field());
    }
  }

  summary.success_rate = success_rate(summary.records);
  const auto changes = landscape.change_steps(config.t_max);
  summary.reaction_times = reaction_times(summary.records, changes);
  return summary;
}

std::vector<RunResult> plan_runs(const ExperimentConfig& config, const std::optional<Sweep>& sweep) {
  struct Point {
    double order;
    std::string param;
    ExperimentConfig config;
  };
  std::vector<Point> points;
  if (sweep) {
    const std::string key = normalize_key(sweep->param);
    if (sweep->values.empty()) throw ConfigError(key, "sweep needs at least one value");
    for (const std::string& value : sweep->values) {
      ExperimentConfig c = config;
      apply_setting(c, key, value);
      const double order = parse_double(key, trim(value));
      points.push_back({order, key + "=" + short_number(order), std::move(c)});
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const Point& a, const Point& b) { return a.order < b.order; });
  } else {
    const std::string key = primary_param(config.preset);
    const double value = parse_double(key, get_setting(config, key));
    points.push_back({value, key + "=" + short_number(value), config});
  }

  std::vector<RunResult> runs;
  for (const Point& point : points) {
    for (int r = 0; r < config.repeats; ++r) {
      RunResult run;
      run.run_id = static_cast<int>(runs.size());
      run.repeat = r;
      run.seed = repeat_seed(config.seed, r);
      run.param = point.param;
      run.config = point.config;
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

std::string summary_row(const RunResult& run) {
  std::ostringstream row;
  char rate[40];
  std::snprintf(rate, sizeof rate, "%.9g", run.summary.success_rate);
  row << run.run_id << ',' << run.seed << ',' << run.config.preset << ',' << run.param << ','
      << rate << ',' << format_real(run.median_reaction) << ',' << run.final_population;
  return row.str();
}

std::vector<RunResult> run_experiment(const ExperimentConfig& config,
                                      const std::optional<Sweep>& sweep, bool write_outputs) {
  const auto started = std::chrono::steady_clock::now();
  const std::string started_at = utc_timestamp();
  std::vector<RunResult> runs = plan_runs(config, sweep);
  for (const RunResult& run : runs) {
    make_landscape(run.config);
    run.config.swarm.validate();
  }

  const std::filesystem::path& out = config.out;
  if (write_outputs) {
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    const auto probe = out / ".srs_write_probe";
    std::ofstream test(probe);
    if (ec || !test) throw std::runtime_error("output directory " + out.string() + " is not writable");
    test.close();
    std::filesystem::remove(probe, ec);
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        RunResult& run = runs[i];
        std::optional<std::filesystem::path> snapshot_dir;
        if (write_outputs && run.config.snapshots > 0) {
          snapshot_dir = out / run_filename(run.run_id);
          std::filesystem::create_directories(*snapshot_dir);
        }
        run.summary = simulate(run.config, run.seed, snapshot_dir);
        run.final_population = run.summary.records.back().population;
        run.median_reaction = median_reaction(run.summary.reaction_times);
        if (write_outputs) {
          std::ostringstream csv;
          write_step_csv(csv, run.summary.records);
          write_text(out / (run_filename(run.run_id) + ".csv"), csv.str());
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    const int workers = std::max(1, std::min<int>(config.jobs, static_cast<int>(runs.size())));
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  if (write_outputs) {
    std::ostringstream summary;
    summary << kSummaryCsvHeader << '\n';
    for (const RunResult& run : runs) summary << summary_row(run) << '\n';
    write_text(out / "summary.csv", summary.str());

    nlohmann::json manifest;
    manifest["software"] = {{"name", "srs"}, {"version", std::string(kVersion)}};
    nlohmann::json resolved;
    for (const std::string& key : setting_keys()) resolved[key] = get_setting(config, key);
    manifest["config"] = resolved;
    if (sweep) manifest["sweep"] = {{"param", sweep->param}, {"values", sweep->values}};
    manifest["seed_rule"] = "splitmix64(seed + repeat)";
    nlohmann::json run_list = nlohmann::json::array();
    for (const RunResult& run : runs) {
      run_list.push_back({{"run_id", run.run_id},
                          {"repeat", run.repeat},
                          {"seed", run.seed},
                          {"param", run.param},
                          {"csv", run_filename(run.run_id) + ".csv"}});
    }
    manifest["runs"] = run_list;
    manifest["started_at"] = started_at;
    manifest["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_text(out / "manifest.json", manifest.dump(2) + "\n");
  }
  return runs;
}

}  // namespace srs
