#ifndef SRS_SWARM_HPP
#define SRS_SWARM_HPP

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "srs/habitat.hpp"
#include "srs/objective.hpp"
#include "srs/rng.hpp"

namespace srs {

enum class SurvivalMode { stochastic, deterministic };

struct SwarmParams {
  double beta = 3.5;     // osmotropotactic sensitivity
  double gamma = 0.2;    // inverse sensory capacity
  double eta = 0.07;     // base deposition per step
  double k = 0.015;      // evaporation rate
  double p = 1.9;        // altitude-coupled deposition gain
  double delta_e = 0.1;  // energy lost per step
  Objective objective = Objective::minimize;
  double initial_density = 1.0 / 3.0;
  SurvivalMode survival_mode = SurvivalMode::stochastic;
  bool reset_extremes_on_change = true;
  bool children_age_immediately = false;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Energies at or below this are treated as exhausted; absorbs the rounding
/// left by repeated subtraction of delta_e.
inline constexpr double kEnergyEpsilon = 1e-9;

struct Ant {
  AntId id = 0;
  CellCoord pos;
  Direction heading = Direction::N;
  double energy = 1.0;
};

/// Turn penalties indexed by the octant difference, 0 (straight) to 4 (U-turn).
inline constexpr std::array<double, 5> kDirectionWeights{1.0, 1.0 / 2, 1.0 / 4, 1.0 / 12,
                                                         1.0 / 20};

/// Reproduction probability by number of occupied Moore neighbors (0..8).
inline constexpr std::array<double, 9> kCrowdingReproduction{0.0,  0.25, 0.5, 0.75, 1.0,
                                                             0.75, 0.5,  0.25, 0.0};

/// Highest and lowest altitude seen by the colony in the current epoch.
class ColonyExtremes {
 public:
  /// Non-finite altitudes (failed evaluations) are ignored.
  void observe(double z);
  void reset() { populated_ = false; }

  bool populated() const { return populated_; }
  double z_max() const { return z_max_; }
  double z_min() const { return z_min_; }
  double range() const { return populated_ ? z_max_ - z_min_ : 0.0; }

  /// Delta(r) / Delta_max in [0, 1]: distance from the worst altitude seen,
  /// relative to the observed range. Zero when the range is empty or `z` is
  /// not finite.
  double relative_fitness(double z, Objective objective) const;

 private:
  bool populated_ = false;
  double z_max_ = 0.0;
  double z_min_ = 0.0;
};

/// W(sigma) = (1 + sigma / (1 + gamma sigma))^beta
double pheromone_weight(double sigma, const SwarmParams& params);

/// Octant distance between two headings, 0..4.
int direction_delta(Direction heading, Direction candidate);

struct Transition {
  CellCoord cell;
  Direction direction;
  double probability;
};

/// Normalised move probabilities over the free Moore neighbors of `ant`, in
/// compass order. Empty when every neighbor is occupied.
std::vector<Transition> transition_probs(const Ant& ant, const HabitatGrid& grid,
                                         const SwarmParams& params);

/// T = eta + p * Delta(r) / Delta_max
double deposit_rate(double z_here, const ColonyExtremes& extremes, const SwarmParams& params);

double reproduction_base_prob(int occupied_neighbors);

/// P* = P**(n) * Delta(r) / Delta_max
double reproduction_prob(int occupied_neighbors, double z_here, const ColonyExtremes& extremes,
                         const SwarmParams& params);

/// Runs the reproduction test for `parent`. On success the child (energy 1,
/// random heading) is placed on a free Moore cell of the parent and returned.
///
/// Draw order: nothing when the parent has no neighbors; otherwise one
/// uniform for the test and, on success with a free cell, one index for the
/// cell and one for the heading.
std::optional<Ant> try_reproduce(const Ant& parent, HabitatGrid& grid, double z_here,
                                 const ColonyExtremes& extremes, const SwarmParams& params,
                                 Rng& rng, AntId child_id);

/// Subtracts delta_e and decides survival. Stochastic mode draws one uniform
/// and survives with probability equal to the remaining energy; both modes
/// kill once energy is exhausted (without drawing).
bool apply_energy_and_survival(Ant& ant, const SwarmParams& params, Rng& rng);

struct Colony {
  std::vector<Ant> ants;  // ascending id
  AntId next_id = 0;
  ColonyExtremes extremes;
};

struct StepOutcome {
  int births = 0;
  int deaths = 0;
  int population = 0;
  double deposited = 0.0;
  std::vector<double> altitudes;  // survivors, ascending id
};

/// Places floor(density * cells) ants on distinct uniformly drawn cells with
/// uniformly drawn headings.
Colony init_colony(HabitatGrid& grid, double density, Rng& rng);

/// One iteration of the colony loop over the altitude field `altitude`
/// (indexed `(x, y)` like the habitat):
///
///  1. every ant alive at the start of the step, in ascending id order,
///     moves by the transition rule (staying put when blocked), records its
///     new altitude in the colony extremes, deposits T on its new cell and
///     runs the reproduction test;
///  2. the field evaporates by k;
///  3. energies decay and survival is decided; children born this step only
///     age now when `children_age_immediately` is set.
StepOutcome colony_step(Colony& colony, HabitatGrid& grid, const Eigen::ArrayXXd& altitude,
                        const SwarmParams& params, Rng& rng);

}  // namespace srs

#endif  // SRS_SWARM_HPP
