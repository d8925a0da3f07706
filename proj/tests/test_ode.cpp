#include <doctest.h>

#include <cmath>

#include "srs/landscape.hpp"
#include "srs/ode.hpp"

using namespace srs;

namespace {

struct Fixture {
  double u1, u2, delta;
  double z1;  // z(1) from DOP853 at rtol = atol = 1e-13
};

// Computed with an independent adaptive 8th-order Dormand-Prince integrator.
constexpr Fixture kFixtures[] = {
    {0.0, 0.0, 0.0, 5.1963258624775},
    {1.0, -2.0, 0.0, 3.96462207522863},
    {-3.0, 2.5, 0.3, 3.13525856260074},
    {4.5, 4.5, 0.0, 2.39869087931061},
    {-5.0, -5.0, 0.7, 2.10675426261821},
};

double exp_error(int steps) {
  const auto rhs = [](double, const StateVector<double, 1>& y) { return StateVector<double, 1>(y); };
  const auto y = integrate_rk4<double, 1>(rhs, StateVector<double, 1>(1.0), 0.0, 1.0, steps);
  return std::abs((*y)(0) - std::exp(1.0));
}

}  // namespace

TEST_CASE("control rhs at t = 0") {
  const ControlState<double> s(2.0, 2.0);
  const auto d0 = control_rhs(0.0, s, 0.0, 0.0);
  CHECK(d0(0) == 2.0);
  CHECK(d0(1) == doctest::Approx(-2.0 * std::sin(2.0)).epsilon(1e-15));
  // only the cos(t) U2^2 forcing survives at t = 0
  const auto d1 = control_rhs(0.0, s, 3.0, 1.5);
  CHECK(d1(1) == doctest::Approx(1.5 * 1.5 - 2.0 * std::sin(2.0)).epsilon(1e-15));
  CHECK(control_rhs(0.4, s, 1.0, 2.0) == control_rhs(0.4, s, 1.0, 2.0));
}

TEST_CASE("rk4 on y' = y") {
  CHECK(exp_error(100) < 1e-7);
}

TEST_CASE("rk4 converges at fourth order") {
  const double e50 = exp_error(50);
  const double e100 = exp_error(100);
  const double e200 = exp_error(200);
  CHECK(std::log2(e50 / e100) == doctest::Approx(4.0).epsilon(0.025));
  CHECK(std::log2(e100 / e200) == doctest::Approx(4.0).epsilon(0.025));
  CHECK(e100 / e200 == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("rk4 reports divergence") {
  const auto blowup = [](double, const StateVector<double, 1>& y) {
    return StateVector<double, 1>(y(0) * y(0));
  };
  CHECK_FALSE(integrate_rk4<double, 1>(blowup, StateVector<double, 1>(1.0), 0.0, 5.0, 50));
  CHECK_THROWS(integrate_rk4<double, 1>(blowup, StateVector<double, 1>(1.0), 0.0, 1.0, 0));
}

TEST_CASE("control terminal state matches the reference integrator") {
  for (const Fixture& f : kFixtures) {
    const auto z = control_terminal(f.u1, f.u2, f.delta, 4000);
    REQUIRE(z.has_value());
    CHECK(*z == doctest::Approx(f.z1).epsilon(1e-11));
    CHECK(control_fitness(f.u1, f.u2, f.delta, 4000) ==
          doctest::Approx(f.z1 * f.z1).epsilon(1e-11));
  }
}

TEST_CASE("control integration self-converges at the default resolution") {
  for (const Fixture& f : kFixtures) {
    const double coarse = *control_terminal(f.u1, f.u2, f.delta, 1000);
    const double fine = *control_terminal(f.u1, f.u2, f.delta, 2000);
    CHECK(std::abs(coarse - fine) < 1e-8);
  }
}

TEST_CASE("control fitness is smooth and non-negative") {
  for (const Fixture& f : kFixtures) {
    const double j = control_fitness(f.u1, f.u2, f.delta);
    CHECK(j >= 0.0);
    const double du1 = f.u1 > 0 ? -1e-6 : 1e-6;
    const double du2 = f.u2 > 0 ? -1e-6 : 1e-6;
    CHECK(std::abs(control_fitness(f.u1 + du1, f.u2, f.delta) - j) < 1e-3);
    CHECK(std::abs(control_fitness(f.u1, f.u2 + du2, f.delta) - j) < 1e-3);
  }
  CHECK_THROWS(control_fitness(5.5, 0.0, 0.0));
}

TEST_CASE("control landscape field equals pointwise evaluation") {
  DomainMap d;
  d.lo = Eigen::Vector2d(-5, -5);
  d.hi = Eigen::Vector2d(5, 5);
  d.width = 20;
  d.height = 20;
  Landscape land(BaseFunction::optimal_control, d, SeverityDrift{0.1, 50}, 200);
  const Eigen::ArrayXXd& f = land.field(60);
  for (int x = 0; x < 20; x += 3) {
    for (int y = 0; y < 20; y += 4) {
      const Eigen::Vector2d u = d.point({x, y});
      REQUIRE(f(x, y) == control_fitness(u.x(), u.y(), 0.1, 200));
    }
  }
}

TEST_CASE("exhaustive control optimum on a 101 x 101 grid is the landscape optimum") {
  // 101 nodes over the closed square [-5, 5]^2 with step 0.1; the 100 x 100
  // habitat uses the first 100 nodes of each axis.
  double best = -1.0;
  int bi = -1;
  int bj = -1;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double v = control_fitness(-5.0 + 0.1 * i, -5.0 + 0.1 * j, 0.0, 250);
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  DomainMap d;
  d.lo = Eigen::Vector2d(-5, -5);
  d.hi = Eigen::Vector2d(5, 5);
  Landscape land(BaseFunction::optimal_control, d, SeverityDrift{0.1, 50}, 250);
  const Optimum opt = land.true_optimum(0);
  double habitat_best = -1.0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      habitat_best = std::max(habitat_best, control_fitness(-5.0 + 0.1 * i, -5.0 + 0.1 * j, 0.0, 250));
    }
  }
  CHECK(opt.value == habitat_best);
  if (bi < 100 && bj < 100) {
    CHECK(opt.cell == CellCoord{bi, bj});
    CHECK(opt.value == best);
  } else {
    CHECK(opt.value <= best);
  }
}
