#ifndef SRS_ODE_HPP
#define SRS_ODE_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <Eigen/Core>

namespace srs {

template <typename Scalar, int Dim>
using StateVector = Eigen::Matrix<Scalar, Dim, 1>;

/// Fixed-step classical Runge-Kutta over [t0, tf] with `steps` equal steps.
/// `rhs(t, y)` returns dy/dt. Returns nullopt as soon as the state stops being
/// finite.
template <typename Scalar, int Dim, typename Rhs>
std::optional<StateVector<Scalar, Dim>> integrate_rk4(Rhs&& rhs, StateVector<Scalar, Dim> y,
                                                      Scalar t0, Scalar tf, int steps) {
  if (steps < 1) throw std::invalid_argument("integrate_rk4 needs at least one step");
  const Scalar h = (tf - t0) / static_cast<Scalar>(steps);
  const Scalar half = h / Scalar(2);
  for (int i = 0; i < steps; ++i) {
    const Scalar t = t0 + h * static_cast<Scalar>(i);
    const StateVector<Scalar, Dim> k1 = rhs(t, y);
    const StateVector<Scalar, Dim> k2 = rhs(t + half, (y + half * k1).eval());
    const StateVector<Scalar, Dim> k3 = rhs(t + half, (y + half * k2).eval());
    const StateVector<Scalar, Dim> k4 = rhs(t + h, (y + h * k3).eval());
    y += (h / Scalar(6)) * (k1 + Scalar(2) * (k2 + k3) + k4);
    if (!y.allFinite()) return std::nullopt;
  }
  return y;
}

/// (z, dz/dt) of the controlled second-order system.
template <typename Scalar>
using ControlState = StateVector<Scalar, 2>;

/// First-order form of
///   z'' + sin(z) z' + sin(t) cos(z) z^3 = sin(t) U1^2 + cos(t) U2^2 + sin(t) U1 U2
/// with U1, U2 the already-shifted controls.
template <typename Scalar>
ControlState<Scalar> control_rhs(Scalar t, const ControlState<Scalar>& state, Scalar u1,
                                 Scalar u2) {
  using std::cos;
  using std::sin;
  const Scalar z = state(0);
  const Scalar y = state(1);
  const Scalar st = sin(t);
  const Scalar forcing = st * u1 * u1 + cos(t) * u2 * u2 + st * u1 * u2;
  return {y, forcing - sin(z) * y - st * cos(z) * z * z * z};
}

inline constexpr double kControlBound = 5.0;
inline constexpr int kDefaultOdeSteps = 1000;

/// z(1) from z(0) = 2, z'(0) = 2 with controls u_i + delta; nullopt when the
/// integration diverges.
std::optional<double> control_terminal(double u1, double u2, double delta,
                                       int steps = kDefaultOdeSteps);

/// J = z(1)^2, or -infinity when the integration fails. Controls must lie in
/// [-5, 5] before the shift.
double control_fitness(double u1, double u2, double delta, int steps = kDefaultOdeSteps);

}  // namespace srs

#endif  // SRS_ODE_HPP
