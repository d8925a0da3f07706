#ifndef SRS_METRICS_HPP
#define SRS_METRICS_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srs/objective.hpp"

namespace srs {

inline constexpr double kDefaultCaptureEpsilon = 0.05;

struct StepRecord {
  int t = 0;
  int population = 0;
  std::optional<double> mean_altitude;  // absent for an empty colony
  std::optional<double> best_value;     // absent for an empty colony
  bool captured = false;
  int epoch = 0;
};

/// Measures the colony after a step from the altitudes of its agents.
/// `captured` holds when the best agent is within `epsilon` of
/// `optimum_value`.
StepRecord record_step(int t, int epoch, std::span<const double> altitudes,
                       double optimum_value, Objective objective,
                       double epsilon = kDefaultCaptureEpsilon);

/// Fraction of records with `captured` set. Throws on an empty series.
double success_rate(std::span<const StepRecord> records);

/// For each change step, the number of steps until the first capture before
/// the next change (or the end of the series); nullopt when censored.
std::vector<std::optional<int>> reaction_times(std::span<const StepRecord> records,
                                               std::span<const int> change_steps);

/// Median of the uncensored entries; nullopt when none are left.
std::optional<double> median_reaction(std::span<const std::optional<int>> reactions);

struct RunSummary {
  double success_rate = 0.0;
  std::vector<std::optional<int>> reaction_times;
  std::vector<StepRecord> records;
};

inline constexpr const char* kStepCsvHeader = "t,population,mean_altitude,best_value,captured,epoch";
inline constexpr const char* kSummaryCsvHeader =
    "run_id,seed,preset,param,success_rate,median_reaction,final_population";

/// Nine significant digits; an absent value prints as an empty field.
std::string format_real(std::optional<double> value);

void write_step_csv(std::ostream& out, std::span<const StepRecord> records);

/// Parses a per-step CSV as written by `write_step_csv`.
std::vector<StepRecord> read_step_csv(std::istream& in);

}  // namespace srs

#endif  // SRS_METRICS_HPP
