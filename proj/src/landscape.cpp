#include "srs/landscape.hpp"

#include <stdexcept>

namespace srs {

namespace {

int floor_mod(long long value, int modulus) {
  const long long r = value % modulus;
  return static_cast<int>(r < 0 ? r + modulus : r);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

CellCoord DomainMap::nearest_cell(const Eigen::Vector2d& p) const {
  const Eigen::Vector2d idx = (p - lo).cwiseQuotient(spacing());
  return {floor_mod(std::llround(idx.x()), width), floor_mod(std::llround(idx.y()), height)};
}

CellCoord linear_path_target(int t, double speed, CellCoord start, int width, int height) {
  if (speed < 0.0) throw std::invalid_argument("path speed must be non-negative");
  const auto d = static_cast<long long>(std::floor(speed * t));
  return {floor_mod(start.x + d, width), floor_mod(start.y - d, height)};
}

CellCoord jump_cycle_target(int t, int uf, const std::vector<CellCoord>& points) {
  if (uf < 1) throw std::invalid_argument("update frequency must be >= 1");
  if (points.empty()) throw std::invalid_argument("jump cycle needs at least one point");
  return points[static_cast<std::size_t>(t / uf) % points.size()];
}

std::vector<Eigen::Vector2d> default_jump_points() {
  return {{0.0, 0.0}, {1.0, -1.5}, {-1.5, 1.0}};
}

Landscape::Landscape(BaseFunction base, DomainMap domain, Dynamics dynamics, int ode_steps)
    : base_(base), domain_(domain), dynamics_(std::move(dynamics)), ode_steps_(ode_steps) {
  if (domain_.width < 1 || domain_.height < 1) {
    throw std::invalid_argument("domain map needs positive dimensions");
  }
  if (ode_steps_ < 1) throw std::invalid_argument("ode_steps must be >= 1");
  const bool moves_center = std::holds_alternative<LinearPath>(dynamics_) ||
                            std::holds_alternative<JumpCycle>(dynamics_) ||
                            std::holds_alternative<CircularOrbit>(dynamics_);
  if (base_ == BaseFunction::ackley && std::holds_alternative<SeverityDrift>(dynamics_)) {
    throw std::invalid_argument("ackley landscapes move their centre; severity drift unsupported");
  }
  if (base_ != BaseFunction::ackley && moves_center) {
    throw std::invalid_argument("only ackley landscapes support moving centres");
  }
  if (const auto* jump = std::get_if<JumpCycle>(&dynamics_)) {
    if (jump->uf < 1 || jump->points.empty()) {
      throw std::invalid_argument("jump cycle needs uf >= 1 and at least one point");
    }
  }
  if (const auto* drift = std::get_if<SeverityDrift>(&dynamics_); drift && drift->uf < 1) {
    throw std::invalid_argument("severity drift needs uf >= 1");
  }
  start_ = domain_.nearest_cell(Eigen::Vector2d::Zero());
}

Objective Landscape::objective() const {
  return base_ == BaseFunction::ackley ? Objective::minimize : Objective::maximize;
}

EnvironmentState Landscape::state(int t) const {
  EnvironmentState env;
  env.center = start_;
  std::visit(overloaded{
                 [](const StaticDynamics&) {},
                 [&](const LinearPath& path) {
                   const long long d = static_cast<long long>(std::floor(path.speed * t));
                   env.epoch = static_cast<int>((start_.x + d) / domain_.width +
                                                (domain_.height - 1 - start_.y + d) / domain_.height);
                   env.center =
                       linear_path_target(t, path.speed, start_, domain_.width, domain_.height);
                 },
                 [&](const JumpCycle& jump) {
                   env.epoch = t / jump.uf;
                   const auto& p = jump.points[static_cast<std::size_t>(env.epoch) %
                                               jump.points.size()];
                   env.center = domain_.nearest_cell(p);
                 },
                 [&](const SeverityDrift& drift) {
                   env.epoch = t / drift.uf;
                   env.delta = severity_shift(env.epoch, drift.severity);
                 },
                 [&](const CircularOrbit& orbit) {
                   const double angle = orbit.angular_speed * t;
                   const Eigen::Vector2d p = domain_.point(start_) +
                                             orbit.radius * Eigen::Vector2d(std::cos(angle),
                                                                            std::sin(angle));
                   env.center = domain_.nearest_cell(p);
                 },
             },
             dynamics_);
  return env;
}

std::vector<int> Landscape::change_steps(int t_max) const {
  std::vector<int> out;
  for (int t = 1; t < t_max; ++t) {
    if (epoch(t) != epoch(t - 1)) out.push_back(t);
  }
  return out;
}

double Landscape::evaluate(CellCoord cell, const EnvironmentState& env) const {
  const Eigen::Vector2d x = domain_.point(cell);
  switch (base_) {
    case BaseFunction::ackley:
      return ackley(x, domain_.point(env.center));
    case BaseFunction::schaffer_f7:
      return schaffer_f7(x, env.delta);
    case BaseFunction::optimal_control:
      return control_fitness(x.x(), x.y(), env.delta, ode_steps_);
  }
  throw std::logic_error("unknown base function");
}

double Landscape::value_at(CellCoord cell, int t) const { return evaluate(cell, state(t)); }

const Eigen::ArrayXXd& Landscape::field(int t) {
  const EnvironmentState env = state(t);
  if (cached_state_ && *cached_state_ == env) return cached_field_;

  cached_field_.resize(domain_.width, domain_.height);
  for (int y = 0; y < domain_.height; ++y) {
    for (int x = 0; x < domain_.width; ++x) cached_field_(x, y) = evaluate({x, y}, env);
  }

  Eigen::Index bx = 0;
  Eigen::Index by = 0;
  const double best = objective() == Objective::minimize ? cached_field_.minCoeff(&bx, &by)
                                                         : cached_field_.maxCoeff(&bx, &by);
  cached_optimum_ = {{static_cast<int>(bx), static_cast<int>(by)}, best};
  cached_state_ = env;
  return cached_field_;
}

Optimum Landscape::true_optimum(int t) {
  field(t);
  return cached_optimum_;
}

}  // namespace srs
