#include <doctest.h>

#include <sstream>
#include <vector>

#include "srs/metrics.hpp"

using namespace srs;

namespace {

std::vector<StepRecord> captures(const std::vector<int>& flags) {
  std::vector<StepRecord> out;
  for (std::size_t t = 0; t < flags.size(); ++t) {
    StepRecord r;
    r.t = static_cast<int>(t);
    r.population = 1;
    r.captured = flags[t] != 0;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("record_step for a minimising landscape") {
  const std::vector<double> alt{0.3, 0.04, 1.2};
  const StepRecord r = record_step(7, 1, alt, 0.0, Objective::minimize);
  CHECK(r.t == 7);
  CHECK(r.epoch == 1);
  CHECK(r.population == 3);
  CHECK(*r.best_value == 0.04);
  CHECK(*r.mean_altitude == doctest::Approx(1.54 / 3));
  CHECK(r.captured);
  CHECK_FALSE(record_step(7, 1, alt, 0.0, Objective::minimize, 0.01).captured);
}

TEST_CASE("record_step for a maximising landscape") {
  const std::vector<double> alt{2.3, 2.46, 1.0};
  const StepRecord r = record_step(0, 0, alt, 2.5, Objective::maximize);
  CHECK(*r.best_value == 2.46);
  CHECK(r.captured);
  const std::vector<double> far{2.3, 2.44};
  CHECK_FALSE(record_step(0, 0, far, 2.5, Objective::maximize).captured);
}

TEST_CASE("record_step for an empty colony") {
  const StepRecord r = record_step(3, 0, {}, 0.0, Objective::minimize);
  CHECK(r.population == 0);
  CHECK_FALSE(r.best_value.has_value());
  CHECK_FALSE(r.mean_altitude.has_value());
  CHECK_FALSE(r.captured);
}

TEST_CASE("capture is monotone in epsilon") {
  const std::vector<double> alt{0.5, 0.12, 0.9};
  bool previous = false;
  for (double eps = 0.0; eps <= 1.0; eps += 0.01) {
    const bool now = record_step(0, 0, alt, 0.0, Objective::minimize, eps).captured;
    REQUIRE((!previous || now));
    previous = now;
  }
  CHECK(previous);
}

TEST_CASE("success rate") {
  std::vector<int> flags(100, 0);
  for (int i = 0; i < 65; ++i) flags[i * 3 % 100] = 1;
  CHECK(success_rate(captures(flags)) == doctest::Approx(0.65));
  CHECK(success_rate(captures({1, 1})) == 1.0);
  CHECK(success_rate(captures({0})) == 0.0);
  CHECK_THROWS(success_rate(std::vector<StepRecord>{}));
}

TEST_CASE("reaction times per change") {
  //                         0  1  2  3  4  5  6  7  8  9 10 11
  const auto rec = captures({1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  const std::vector<int> changes{2, 6, 10};
  const auto rt = reaction_times(rec, changes);
  REQUIRE(rt.size() == 3);
  CHECK(rt[0] == 3);
  CHECK_FALSE(rt[1].has_value());  // censored by the next change
  CHECK(rt[2] == 1);
  CHECK(median_reaction(rt) == 2.0);
}

TEST_CASE("capture on the change step reacts in zero steps") {
  const auto rec = captures({0, 0, 1, 1});
  const std::vector<int> changes{2};
  CHECK(reaction_times(rec, changes)[0] == 0);
}

TEST_CASE("median reaction") {
  const std::vector<std::optional<int>> odd{5, std::nullopt, 1, 9};
  CHECK(median_reaction(odd) == 5.0);
  const std::vector<std::optional<int>> even{4, 1, 9, 2};
  CHECK(median_reaction(even) == 3.0);
  const std::vector<std::optional<int>> none{std::nullopt};
  CHECK_FALSE(median_reaction(none).has_value());
  CHECK_FALSE(median_reaction({}).has_value());
}

TEST_CASE("format_real") {
  CHECK(format_real(std::nullopt).empty());
  CHECK(format_real(2.5) == "2.5");
  CHECK(format_real(1.0 / 3.0) == "0.333333333");
  CHECK(format_real(-1e-12) == "-1e-12");
}

TEST_CASE("step CSV round trip") {
  std::vector<StepRecord> rec;
  rec.push_back(record_step(0, 0, std::vector<double>{0.25, 0.5}, 0.0, Objective::minimize, 0.3));
  rec.push_back(record_step(1, 0, {}, 0.0, Objective::minimize));
  rec.push_back(record_step(2, 1, std::vector<double>{3.0}, 0.0, Objective::minimize));
  std::stringstream ss;
  write_step_csv(ss, rec);
  CHECK(ss.str() ==
        "t,population,mean_altitude,best_value,captured,epoch\n"
        "0,2,0.375,0.25,1,0\n"
        "1,0,,,0,0\n"
        "2,1,3,3,0,1\n");
  const auto back = read_step_csv(ss);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].t == rec[i].t);
    CHECK(back[i].population == rec[i].population);
    CHECK(back[i].mean_altitude == rec[i].mean_altitude);
    CHECK(back[i].best_value == rec[i].best_value);
    CHECK(back[i].captured == rec[i].captured);
    CHECK(back[i].epoch == rec[i].epoch);
  }
  std::stringstream bad("t,pop\n");
  CHECK_THROWS(read_step_csv(bad));
}
