#include "srs/ode.hpp"

namespace srs {

std::optional<double> control_terminal(double u1, double u2, double delta, int steps) {
  if (std::abs(u1) > kControlBound || std::abs(u2) > kControlBound) {
    throw std::invalid_argument("controls must lie in [-5, 5]");
  }
  const double U1 = u1 + delta;
  const double U2 = u2 + delta;
  const auto rhs = [U1, U2](double t, const ControlState<double>& s) {
    return control_rhs(t, s, U1, U2);
  };
  const auto end = integrate_rk4<double, 2>(rhs, ControlState<double>(2.0, 2.0), 0.0, 1.0, steps);
  if (!end) return std::nullopt;
  return (*end)(0);
}

double control_fitness(double u1, double u2, double delta, int steps) {
  const auto z = control_terminal(u1, u2, delta, steps);
  if (!z) return -std::numeric_limits<double>::infinity();
  return *z * *z;
}

}  // namespace srs
