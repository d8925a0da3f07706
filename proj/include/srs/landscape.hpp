#ifndef SRS_LANDSCAPE_HPP
#define SRS_LANDSCAPE_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "srs/habitat.hpp"
#include "srs/objective.hpp"
#include "srs/ode.hpp"

namespace srs {

/// Ackley function centred at `a`:
///   -20 exp(-0.2 sqrt(mean((x-a)^2))) - exp(mean(cos(2 pi (x-a)))) + 20 + e
template <typename DerivedX, typename DerivedA>
typename DerivedX::Scalar ackley(const Eigen::MatrixBase<DerivedX>& x,
                                 const Eigen::MatrixBase<DerivedA>& a) {
  using Scalar = typename DerivedX::Scalar;
  using std::cos;
  using std::exp;
  using std::sqrt;
  const auto diff = (x - a).array();
  const Scalar n = static_cast<Scalar>(x.size());
  const Scalar mean_sq = diff.square().sum() / n;
  const Scalar mean_cos = (Scalar(2) * std::numbers::pi_v<Scalar> * diff).cos().sum() / n;
  return Scalar(-20) * exp(Scalar(-0.2) * sqrt(mean_sq)) - exp(mean_cos) + Scalar(20) +
         std::numbers::e_v<Scalar>;
}

/// Modified Schaffer F7 evaluated at X = x + delta (componentwise):
///   2.5 - R^0.25 (sin^2(50 R^0.1) + 1),  R = |X|^2
template <typename Derived>
typename Derived::Scalar schaffer_f7(const Eigen::MatrixBase<Derived>& x,
                                     typename Derived::Scalar delta) {
  using Scalar = typename Derived::Scalar;
  using std::pow;
  using std::sin;
  const Scalar r = (x.array() + delta).square().sum();
  const Scalar s = sin(Scalar(50) * pow(r, Scalar(0.1)));
  return Scalar(2.5) - pow(r, Scalar(0.25)) * (s * s + Scalar(1));
}

/// delta(T) = delta(T-1) + s with delta(0) = 0, in closed form.
inline double severity_shift(int epoch, double severity) { return epoch * severity; }

/// Maps lattice cells onto the periodic rectangle [lo, hi): cell i sits at
/// lo + i (hi - lo) / width, so the left/bottom domain edge is a lattice
/// node and the right/top edge wraps onto it.
struct DomainMap {
  Eigen::Vector2d lo{-1.0, -1.0};
  Eigen::Vector2d hi{1.0, 1.0};
  int width = 100;
  int height = 100;

  Eigen::Vector2d spacing() const {
    return {(hi.x() - lo.x()) / width, (hi.y() - lo.y()) / height};
  }
  Eigen::Vector2d point(CellCoord c) const {
    return lo + spacing().cwiseProduct(Eigen::Vector2d(c.x, c.y));
  }
  /// Nearest lattice node, wrapped.
  CellCoord nearest_cell(const Eigen::Vector2d& p) const;
};

/// Target displaced floor(v t) cells along the NW -> SE diagonal from
/// `start`, wrapping toroidally.
CellCoord linear_path_target(int t, double speed, CellCoord start, int width, int height);

/// points[floor(t / uf) mod size]
CellCoord jump_cycle_target(int t, int uf, const std::vector<CellCoord>& points);

struct StaticDynamics {};

struct LinearPath {
  double speed = 0.0;  // diagonal cells per step
};

struct JumpCycle {
  int uf = 5;
  std::vector<Eigen::Vector2d> points;  // domain coordinates, visited in order
};

struct SeverityDrift {
  double severity = 0.1;
  int uf = 50;
};

/// Centre orbiting the start point; radius in domain units, angle in radians
/// per step.
struct CircularOrbit {
  double radius = 1.0;
  double angular_speed = 0.1;
};

using Dynamics = std::variant<StaticDynamics, LinearPath, JumpCycle, SeverityDrift, CircularOrbit>;

enum class BaseFunction { ackley, schaffer_f7, optimal_control };

/// What the environment looks like at one step: the centre cell of a moving
/// Ackley valley and the additive shift of the drifting functions.
struct EnvironmentState {
  CellCoord center;
  double delta = 0.0;
  int epoch = 0;

  friend bool operator==(const EnvironmentState&, const EnvironmentState&) = default;
};

struct Optimum {
  CellCoord cell;
  double value = 0.0;
};

/// Time-varying altitude over the habitat.
///
/// Ackley is minimised; Schaffer F7 and the control fitness are maximised.
/// Ackley accepts static, linear-path, jump-cycle and circular dynamics (the
/// centre moves, snapped to the nearest cell); the others accept static and
/// severity-drift dynamics. Epochs advance on discrete changes: jumps, shift
/// increments, and each toroidal wrap of a linear path (the centre leaps to
/// the opposite edge there). Circular orbits stay in epoch 0.
class Landscape {
 public:
  Landscape(BaseFunction base, DomainMap domain, Dynamics dynamics,
            int ode_steps = kDefaultOdeSteps);

  BaseFunction base() const { return base_; }
  const DomainMap& domain() const { return domain_; }
  const Dynamics& dynamics() const { return dynamics_; }
  Objective objective() const;

  EnvironmentState state(int t) const;
  int epoch(int t) const { return state(t).epoch; }

  /// Steps t in [1, t_max) whose epoch differs from step t - 1.
  std::vector<int> change_steps(int t_max) const;

  /// Pure evaluation of one cell at step t.
  double value_at(CellCoord cell, int t) const;

  /// Whole-lattice altitudes at step t, indexed (x, y); cached until the
  /// environment state changes.
  const Eigen::ArrayXXd& field(int t);

  /// Exhaustive argmin/argmax of `field(t)`; ties go to the first cell in
  /// storage order.
  Optimum true_optimum(int t);

 private:
  double evaluate(CellCoord cell, const EnvironmentState& env) const;

  BaseFunction base_;
  DomainMap domain_;
  Dynamics dynamics_;
  int ode_steps_;
  CellCoord start_;

  std::optional<EnvironmentState> cached_state_;
  Eigen::ArrayXXd cached_field_;
  Optimum cached_optimum_;
};

/// Ackley valley default points: B(0, 0), C(1, -1.5), A(-1.5, 1).
std::vector<Eigen::Vector2d> default_jump_points();

}  // namespace srs

#endif  // SRS_LANDSCAPE_HPP
