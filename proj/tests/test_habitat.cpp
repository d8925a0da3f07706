#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "srs/habitat.hpp"

using srs::CellCoord;
using srs::HabitatGrid;

TEST_CASE("wrap returns canonical coordinates") {
  HabitatGrid grid(100, 100);
  CHECK(grid.wrap(5, 5) == CellCoord{5, 5});
  CHECK(grid.wrap(-1, 0) == CellCoord{99, 0});
  CHECK(grid.wrap(205, -103) == CellCoord{5, 97});
  CHECK(grid.wrap(100, 100) == CellCoord{0, 0});
}

TEST_CASE("wrap is total and congruent for arbitrary integers") {
  HabitatGrid grid(7, 11);
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<long long> dist(-1'000'000'000'000LL, 1'000'000'000'000LL);
  for (int i = 0; i < 5000; ++i) {
    const long long x = dist(gen);
    const long long y = dist(gen);
    const CellCoord c = grid.wrap(x, y);
    REQUIRE(c.x >= 0);
    REQUIRE(c.x < 7);
    REQUIRE(c.y >= 0);
    REQUIRE(c.y < 11);
    REQUIRE((x - c.x) % 7 == 0);
    REQUIRE((y - c.y) % 11 == 0);
    // moore_neighbors of any wrapped cell is defined and in range
    for (const CellCoord& n : grid.moore_neighbors(c)) {
      REQUIRE(n.x >= 0);
      REQUIRE(n.x < 7);
    }
  }
}

TEST_CASE("moore neighbors follow compass order") {
  HabitatGrid grid(100, 100);
  const auto n = grid.moore_neighbors({50, 50});
  CHECK(n[0] == CellCoord{50, 51});  // N
  CHECK(n[1] == CellCoord{51, 51});  // NE
  CHECK(n[2] == CellCoord{51, 50});  // E
  CHECK(n[3] == CellCoord{51, 49});  // SE
  CHECK(n[4] == CellCoord{50, 49});  // S
  CHECK(n[5] == CellCoord{49, 49});  // SW
  CHECK(n[6] == CellCoord{49, 50});  // W
  CHECK(n[7] == CellCoord{49, 51});  // NW
}

TEST_CASE("moore neighbors wrap at the corner") {
  HabitatGrid grid(100, 100);
  const auto n = grid.moore_neighbors({0, 0});
  const auto has = [&](CellCoord c) { return std::find(n.begin(), n.end(), c) != n.end(); };
  CHECK(has({99, 99}));
  CHECK(has({0, 99}));
  CHECK(has({99, 0}));
}

TEST_CASE("moore neighbors are distinct on grids of at least 3x3") {
  for (int w = 3; w <= 6; ++w) {
    for (int h = 3; h <= 6; ++h) {
      HabitatGrid grid(w, h);
      for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) {
          std::set<std::pair<int, int>> seen;
          for (const CellCoord& c : grid.moore_neighbors({x, y})) seen.insert({c.x, c.y});
          REQUIRE(seen.size() == 8);
          REQUIRE(seen.count({x, y}) == 0);
        }
      }
    }
  }
}

TEST_CASE("deposit adds exactly the amount") {
  HabitatGrid grid(10, 10);
  grid.deposit({1, 1}, 0.07);
  CHECK(grid.pheromone({1, 1}) == 0.07);
  grid.deposit({1, 1}, 0.0);
  CHECK(grid.pheromone({1, 1}) == 0.07);

  grid.deposit({2, 2}, 1.0);
  grid.deposit({2, 2}, 0.07 + 1.9);
  CHECK(grid.pheromone({2, 2}) == doctest::Approx(2.97).epsilon(1e-15));

  CHECK_THROWS_AS(grid.deposit({0, 0}, -0.1), std::invalid_argument);
}

TEST_CASE("evaporation is multiplicative") {
  HabitatGrid grid(4, 4);
  grid.deposit({0, 0}, 1.0);
  grid.evaporate(0.015);
  CHECK(grid.pheromone({0, 0}) == doctest::Approx(0.985).epsilon(1e-15));

  HabitatGrid flat(4, 4);
  flat.deposit({3, 3}, 0.4);
  flat.evaporate(0.0);
  CHECK(flat.pheromone({3, 3}) == 0.4);

  HabitatGrid twice(4, 4);
  twice.deposit({1, 2}, 2.0);
  twice.evaporate(0.5);
  twice.evaporate(0.5);
  CHECK(twice.pheromone({1, 2}) == 0.5);

  CHECK_THROWS(grid.evaporate(1.3));
  CHECK_THROWS(grid.evaporate(-0.1));
}

TEST_CASE("pheromone stays non-negative and conserves bookkeeping") {
  HabitatGrid grid(20, 20);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> amount(0.0, 2.0);
  std::uniform_int_distribution<int> cell(0, 19);
  std::uniform_real_distribution<double> rate(0.0, 1.0);
  double expected_total = 0.0;
  for (int step = 0; step < 200; ++step) {
    double deposited = 0.0;
    for (int d = 0; d < 30; ++d) {
      const double a = amount(gen);
      grid.deposit({cell(gen), cell(gen)}, a);
      deposited += a;
    }
    const double k = rate(gen);
    const double before = grid.total_pheromone();
    grid.evaporate(k);
    REQUIRE(grid.total_pheromone() == doctest::Approx(before * (1.0 - k)).epsilon(1e-12));
    expected_total = (expected_total + deposited) * (1.0 - k);
    REQUIRE(grid.total_pheromone() == doctest::Approx(expected_total).epsilon(1e-10));
    REQUIRE(grid.pheromone_field().minCoeff() >= 0.0);
  }
}

TEST_CASE("occupancy bookkeeping") {
  HabitatGrid grid(5, 5);
  CHECK_FALSE(grid.is_occupied({2, 2}));
  grid.occupy({2, 2}, 7);
  CHECK(grid.is_occupied({2, 2}));
  CHECK(grid.occupant({2, 2}) == 7);
  CHECK_THROWS_AS(grid.occupy({2, 2}, 8), std::logic_error);
  grid.vacate({2, 2});
  CHECK_FALSE(grid.is_occupied({2, 2}));
  CHECK_FALSE(grid.occupant({2, 2}).has_value());
  CHECK_THROWS_AS(grid.vacate({2, 2}), std::logic_error);
}

TEST_CASE("occupied neighbor count") {
  HabitatGrid grid(5, 5);
  grid.occupy({0, 0}, 1);
  grid.occupy({4, 4}, 2);  // diagonal across the corner
  grid.occupy({2, 2}, 3);  // not adjacent
  CHECK(grid.occupied_neighbor_count({0, 4}) == 2);
  CHECK(grid.occupied_neighbor_count({2, 2}) == 0);
}

TEST_CASE("pgm snapshot rescales to 0..255 with north on top") {
  HabitatGrid grid(3, 2);
  grid.deposit({0, 1}, 4.0);  // north-west corner is the maximum
  grid.deposit({2, 0}, 2.0);
  const auto path = std::filesystem::temp_directory_path() / srs::snapshot_filename(25);
  CHECK(path.filename() == "pheromone_t25.pgm");
  srs::write_pgm(path, grid.pheromone_field());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "P2\n3 2\n255\n255 0 0\n0 0 128\n");
  std::filesystem::remove(path);
}
