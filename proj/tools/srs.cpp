// srs: run Self-Regulated Swarm tracking experiments.
//
//   srs run   --preset <name> [--v|--s|--uf|--t-max|--seed|--repeats|--jobs|--eps|--out DIR|--snapshots N]
//   srs sweep --preset <name> --param v --values 0,0.5,1,...
//
// Exit codes: 0 success, 2 configuration error, 1 runtime failure.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "srs/experiment.hpp"

namespace {

constexpr int kConfigErrorExit = 2;
constexpr int kRuntimeErrorExit = 1;

std::string flag_name(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

/// Mirrors every setting key as a string-valued flag on `cmd`.
void add_setting_flags(CLI::App& cmd, std::map<std::string, std::string>& values,
                       std::string& config_file) {
  cmd.add_option("--config", config_file, "flat key = value settings file");
  for (const std::string& key : srs::setting_keys()) {
    cmd.add_option(flag_name(key), values[key], key);
  }
}

srs::Settings given_flags(const CLI::App& cmd, const std::map<std::string, std::string>& values) {
  srs::Settings flags;
  for (const auto& [key, value] : values) {
    if (cmd.count(flag_name(key)) > 0) flags[key] = value;
  }
  return flags;
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-Regulated Swarm simulator for dynamic extrema tracking"};
  app.require_subcommand(1);

  std::map<std::string, std::string> run_values;
  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "run one configuration, repeated --repeats times");
  add_setting_flags(*run, run_values, run_config);

  std::map<std::string, std::string> sweep_values;
  std::string sweep_config;
  std::string sweep_param;
  std::string sweep_list;
  CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter over a list of values");
  add_setting_flags(*sweep, sweep_values, sweep_config);
  sweep->add_option("--param", sweep_param, "parameter to sweep (v, s, uf, ...)")->required();
  sweep->add_option("--values", sweep_list, "comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigErrorExit;
  }

  srs::ExperimentConfig config;
  std::optional<srs::Sweep> plan;
  try {
    const bool is_sweep = sweep->parsed();
    CLI::App& cmd = is_sweep ? *sweep : *run;
    const std::string& file = is_sweep ? sweep_config : run_config;
    const srs::Settings file_settings = file.empty() ? srs::Settings{} : srs::read_settings_file(file);
    config = srs::resolve_config(file_settings, given_flags(cmd, is_sweep ? sweep_values : run_values));
    if (is_sweep) {
      plan = srs::Sweep{sweep_param, split_values(sweep_list)};
      srs::plan_runs(config, plan);  // validates every swept value up front
    }
  } catch (const srs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigErrorExit;
  }

  try {
    const auto runs = srs::run_experiment(config, plan, true);
    std::cout << srs::kSummaryCsvHeader << '\n';
    for (const auto& r : runs) std::cout << srs::summary_row(r) << '\n';
    std::cerr << "wrote " << runs.size() << " run(s) to " << config.out << '\n';
  } catch (const srs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeErrorExit;
  }
  return 0;
}
