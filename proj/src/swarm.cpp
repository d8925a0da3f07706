#include "srs/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace srs {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + what);
}

}  // namespace

void SwarmParams::validate() const {
  require(beta >= 0.0, "beta", "must be non-negative");
  require(gamma >= 0.0, "gamma", "must be non-negative");
  require(eta >= 0.0, "eta", "must be non-negative");
  require(k >= 0.0 && k <= 1.0, "k", "must lie in [0, 1]");
  require(p >= 0.0, "p", "must be non-negative");
  require(delta_e >= 0.0, "delta_e", "must be non-negative");
  require(initial_density > 0.0 && initial_density < 1.0, "initial_density",
          "must lie strictly between 0 and 1");
}

void ColonyExtremes::observe(double z) {
  if (!std::isfinite(z)) return;
  if (!populated_) {
    z_max_ = z_min_ = z;
    populated_ = true;
    return;
  }
  z_max_ = std::max(z_max_, z);
  z_min_ = std::min(z_min_, z);
}

double ColonyExtremes::relative_fitness(double z, Objective objective) const {
  const double span = range();
  if (!(span > 0.0) || !std::isfinite(z)) return 0.0;
  const double distance =
      objective == Objective::minimize ? std::abs(z - z_max_) : std::abs(z - z_min_);
  return std::clamp(distance / span, 0.0, 1.0);
}

double pheromone_weight(double sigma, const SwarmParams& params) {
  return std::pow(1.0 + sigma / (1.0 + params.gamma * sigma), params.beta);
}

int direction_delta(Direction heading, Direction candidate) {
  const int diff = std::abs(static_cast<int>(heading) - static_cast<int>(candidate)) % 8;
  return std::min(diff, 8 - diff);
}

std::vector<Transition> transition_probs(const Ant& ant, const HabitatGrid& grid,
                                         const SwarmParams& params) {
  std::vector<Transition> out;
  out.reserve(kNumDirections);
  const auto neighbors = grid.moore_neighbors(ant.pos);
  double total = 0.0;
  for (int d = 0; d < kNumDirections; ++d) {
    const CellCoord cell = neighbors[d];
    if (grid.is_occupied(cell)) continue;
    const auto dir = static_cast<Direction>(d);
    const double weight = pheromone_weight(grid.pheromone(cell), params) *
                          kDirectionWeights[direction_delta(ant.heading, dir)];
    out.push_back({cell, dir, weight});
    total += weight;
  }
  for (Transition& tr : out) tr.probability /= total;
  return out;
}

double deposit_rate(double z_here, const ColonyExtremes& extremes, const SwarmParams& params) {
  return params.eta + params.p * extremes.relative_fitness(z_here, params.objective);
}

double reproduction_base_prob(int occupied_neighbors) {
  if (occupied_neighbors < 0 || occupied_neighbors > 8) {
    throw std::out_of_range("neighbor count must lie in [0, 8]");
  }
  return kCrowdingReproduction[occupied_neighbors];
}

double reproduction_prob(int occupied_neighbors, double z_here, const ColonyExtremes& extremes,
                         const SwarmParams& params) {
  return reproduction_base_prob(occupied_neighbors) *
         extremes.relative_fitness(z_here, params.objective);
}

std::optional<Ant> try_reproduce(const Ant& parent, HabitatGrid& grid, double z_here,
                                 const ColonyExtremes& extremes, const SwarmParams& params,
                                 Rng& rng, AntId child_id) {
  const auto neighbors = grid.moore_neighbors(parent.pos);
  std::array<CellCoord, kNumDirections> free_cells;
  int n_free = 0;
  for (const CellCoord& c : neighbors) {
    if (!grid.is_occupied(c)) free_cells[n_free++] = c;
  }
  const int n_occupied = kNumDirections - n_free;
  if (n_occupied == 0) return std::nullopt;

  const double chance = reproduction_prob(n_occupied, z_here, extremes, params);
  if (!(rng.uniform01() < chance) || n_free == 0) return std::nullopt;

  Ant child;
  child.id = child_id;
  child.pos = free_cells[rng.uniform_index(n_free)];
  child.heading = static_cast<Direction>(rng.uniform_index(kNumDirections));
  child.energy = 1.0;
  grid.occupy(child.pos, child.id);
  return child;
}

bool apply_energy_and_survival(Ant& ant, const SwarmParams& params, Rng& rng) {
  ant.energy -= params.delta_e;
  if (ant.energy <= kEnergyEpsilon) {
    ant.energy = 0.0;
    return false;
  }
  if (params.survival_mode == SurvivalMode::deterministic) return true;
  return rng.uniform01() < ant.energy;
}

Colony init_colony(HabitatGrid& grid, double density, Rng& rng) {
  if (!(density > 0.0 && density < 1.0)) {
    throw std::invalid_argument("initial density must lie strictly between 0 and 1");
  }
  if (grid.width() < 3 || grid.height() < 3) {
    throw std::invalid_argument("habitat needs at least 3x3 cells for agents to move");
  }
  const auto cells = grid.cell_count();
  const auto count = static_cast<std::size_t>(std::floor(density * static_cast<double>(cells)));
  if (count == 0) throw std::invalid_argument("initial density places no agents");

  // Partial Fisher-Yates over cell indices gives distinct uniform cells.
  std::vector<std::size_t> order(cells);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Colony colony;
  colony.ants.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + rng.uniform_index(cells - i);
    std::swap(order[i], order[j]);
    Ant ant;
    ant.id = colony.next_id++;
    ant.pos = grid.coord(order[i]);
    ant.heading = static_cast<Direction>(rng.uniform_index(kNumDirections));
    grid.occupy(ant.pos, ant.id);
    colony.ants.push_back(ant);
  }
  return colony;
}

StepOutcome colony_step(Colony& colony, HabitatGrid& grid, const Eigen::ArrayXXd& altitude,
                        const SwarmParams& params, Rng& rng) {
  StepOutcome outcome;
  const std::size_t movers = colony.ants.size();

  for (std::size_t i = 0; i < movers; ++i) {
    // Index access: births below may reallocate the vector.
    const auto moves = transition_probs(colony.ants[i], grid, params);
    if (!moves.empty()) {
      const double draw = rng.uniform01();
      const Transition* chosen = &moves.back();
      double cumulative = 0.0;
      for (const Transition& tr : moves) {
        cumulative += tr.probability;
        if (draw < cumulative) {
          chosen = &tr;
          break;
        }
      }
      Ant& ant = colony.ants[i];
      grid.vacate(ant.pos);
      grid.occupy(chosen->cell, ant.id);
      ant.pos = chosen->cell;
      ant.heading = chosen->direction;
    }

    const Ant ant = colony.ants[i];
    const double z = altitude(ant.pos.x, ant.pos.y);
    colony.extremes.observe(z);
    const double rate = deposit_rate(z, colony.extremes, params);
    grid.deposit(ant.pos, rate);
    outcome.deposited += rate;

    if (auto child = try_reproduce(ant, grid, z, colony.extremes, params, rng, colony.next_id)) {
      ++colony.next_id;
      colony.ants.push_back(*child);
      ++outcome.births;
    }
  }

  grid.evaporate(params.k);

  const std::size_t aging = params.children_age_immediately ? colony.ants.size() : movers;
  std::vector<Ant> survivors;
  survivors.reserve(colony.ants.size());
  for (std::size_t i = 0; i < colony.ants.size(); ++i) {
    Ant& ant = colony.ants[i];
    if (i < aging && !apply_energy_and_survival(ant, params, rng)) {
      grid.vacate(ant.pos);
      ++outcome.deaths;
      continue;
    }
    survivors.push_back(ant);
  }
  colony.ants = std::move(survivors);

  outcome.population = static_cast<int>(colony.ants.size());
  outcome.altitudes.reserve(colony.ants.size());
  for (const Ant& ant : colony.ants) outcome.altitudes.push_back(altitude(ant.pos.x, ant.pos.y));
  return outcome;
}

}  // namespace srs
