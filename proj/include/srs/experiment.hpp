#ifndef SRS_EXPERIMENT_HPP
#define SRS_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "srs/landscape.hpp"
#include "srs/metrics.hpp"
#include "srs/swarm.hpp"

namespace srs {

inline constexpr std::string_view kVersion = "0.1.0";

/// A configuration problem attributed to one key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  std::string preset = "ackley-speed";
  int width = 100;
  int height = 100;
  int t_max = 100;
  SwarmParams swarm;
  double v = 0.0;   // linear path speed (ackley-speed)
  double s = 0.1;   // severity (schaffer-*, control)
  int uf = 50;      // update frequency (ackley-jump, schaffer-*, control)
  std::uint64_t seed = 1;
  int repeats = 1;
  int jobs = 1;
  double eps = kDefaultCaptureEpsilon;
  std::filesystem::path out = "srs_out";
  int snapshots = 0;  // pheromone snapshot every N steps, 0 = off
  int ode_steps = kDefaultOdeSteps;
};

using Settings = std::map<std::string, std::string>;

const std::vector<std::string>& preset_names();

/// Defaults of a named preset; throws ConfigError("preset") for unknown names.
ExperimentConfig preset_defaults(std::string_view preset);

/// Every recognised setting key, in a stable order.
const std::vector<std::string>& setting_keys();

/// Sets `key` (underscores or dashes) from its textual value, range-checked.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Textual value of `key`, formatted so that apply_setting round-trips it.
std::string get_setting(const ExperimentConfig& config, std::string_view key);

/// Reads flat `key = value` lines; `#` starts a comment.
Settings read_settings_file(const std::filesystem::path& path);

/// Preset defaults, then `file` settings, then `flags`; the preset itself is
/// resolved with the same precedence.
ExperimentConfig resolve_config(const Settings& file, const Settings& flags);

/// The preset's primary swept parameter: v, uf or s.
std::string primary_param(std::string_view preset);

Landscape make_landscape(const ExperimentConfig& config);

/// Seed of repeat `repeat` under master seed `master`.
std::uint64_t repeat_seed(std::uint64_t master, int repeat);

/// One simulation of `config.t_max` steps. When `snapshot_dir` is set and
/// `config.snapshots > 0`, pheromone PGMs are written there.
RunSummary simulate(const ExperimentConfig& config, std::uint64_t seed,
                    const std::optional<std::filesystem::path>& snapshot_dir = std::nullopt);

struct Sweep {
  std::string param;
  std::vector<std::string> values;
};

struct RunResult {
  int run_id = 0;
  int repeat = 0;
  std::uint64_t seed = 0;
  std::string param;  // e.g. "v=2"
  ExperimentConfig config;
  RunSummary summary;
  int final_population = 0;
  std::optional<double> median_reaction;
};

/// Expands the sweep (or the single configuration) times `repeats` into runs
/// ordered by (param value, repeat).
std::vector<RunResult> plan_runs(const ExperimentConfig& config, const std::optional<Sweep>& sweep);

/// Plans and executes every run on up to `config.jobs` threads. With
/// `write_outputs`, writes run_NNN.csv per run, summary.csv, manifest.json
/// and snapshots into `config.out`; the directory is checked before any
/// simulation starts.
std::vector<RunResult> run_experiment(const ExperimentConfig& config,
                                      const std::optional<Sweep>& sweep = std::nullopt,
                                      bool write_outputs = true);

std::string summary_row(const RunResult& run);

}  // namespace srs

#endif  // SRS_EXPERIMENT_HPP
