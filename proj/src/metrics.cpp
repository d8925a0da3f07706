#include "srs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace srs {

StepRecord record_step(int t, int epoch, std::span<const double> altitudes,
                       double optimum_value, Objective objective, double epsilon) {
  StepRecord rec;
  rec.t = t;
  rec.epoch = epoch;
  rec.population = static_cast<int>(altitudes.size());
  if (altitudes.empty()) return rec;

  const auto [lo, hi] = std::minmax_element(altitudes.begin(), altitudes.end());
  const double best = objective == Objective::minimize ? *lo : *hi;
  rec.best_value = best;
  rec.mean_altitude =
      std::accumulate(altitudes.begin(), altitudes.end(), 0.0) / static_cast<double>(altitudes.size());
  rec.captured = std::abs(best - optimum_value) <= epsilon;
  return rec;
}

double success_rate(std::span<const StepRecord> records) {
  if (records.empty()) throw std::invalid_argument("success rate of an empty series");
  const auto hits = std::count_if(records.begin(), records.end(),
                                  [](const StepRecord& r) { return r.captured; });
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

std::vector<std::optional<int>> reaction_times(std::span<const StepRecord> records,
                                               std::span<const int> change_steps) {
  std::vector<std::optional<int>> out;
  out.reserve(change_steps.size());
  for (std::size_t i = 0; i < change_steps.size(); ++i) {
    const int change = change_steps[i];
    const int next = i + 1 < change_steps.size() ? change_steps[i + 1]
                                                 : std::numeric_limits<int>::max();
    std::optional<int> reaction;
    for (const StepRecord& r : records) {
      if (r.t < change) continue;
      if (r.t >= next) break;
      if (r.captured) {
        reaction = r.t - change;
        break;
      }
    }
    out.push_back(reaction);
  }
  return out;
}

std::optional<double> median_reaction(std::span<const std::optional<int>> reactions) {
  std::vector<int> v;
  for (const auto& r : reactions) {
    if (r) v.push_back(*r);
  }
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return v[mid];
  return 0.5 * (v[mid - 1] + v[mid]);
}

std::string format_real(std::optional<double> value) {
  if (!value) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", *value);
  return buf;
}

void write_step_csv(std::ostream& out, std::span<const StepRecord> records) {
  out << kStepCsvHeader << '\n';
  for (const StepRecord& r : records) {
    out << r.t << ',' << r.population << ',' << format_real(r.mean_altitude) << ','
        << format_real(r.best_value) << ',' << (r.captured ? 1 : 0) << ',' << r.epoch << '\n';
  }
}

std::vector<StepRecord> read_step_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kStepCsvHeader) {
    throw std::runtime_error("step CSV header mismatch");
  }
  std::vector<StepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() == 5 && line.back() == ',') fields.emplace_back();
    if (fields.size() != 6) throw std::runtime_error("malformed step CSV row: " + line);
    StepRecord r;
    r.t = std::stoi(fields[0]);
    r.population = std::stoi(fields[1]);
    if (!fields[2].empty()) r.mean_altitude = std::stod(fields[2]);
    if (!fields[3].empty()) r.best_value = std::stod(fields[3]);
    r.captured = fields[4] == "1";
    r.epoch = std::stoi(fields[5]);
    out.push_back(r);
  }
  return out;
}

}  // namespace srs
