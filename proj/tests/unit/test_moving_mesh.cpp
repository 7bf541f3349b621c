#include "helpers.hpp"

#include "wbes/metrics.hpp"
#include "wbes/moving_mesh.hpp"

#include <Eigen/Dense>

using namespace wbes;
using testutil::Rng;

namespace {

GridSpec outflow_box(int n1, int n2, double len1 = 1.0, double len2 = 1.0) {
  GridSpec g;
  g.n1 = n1;
  g.n2 = n2;
  g.len1 = len1;
  g.len2 = len2;
  return g;
}

StateField lake_gaussian(const GridSpec& g) {
  StateField U(g.n1, g.n2);
  for (int i = 0; i < g.n1; ++i) {
    const double x = g.xi(0, i), b = 5 * std::exp(-0.4 * (x - 5) * (x - 5));
    U(i, 0) = conserved(10 - b, 0.0, 0.0, b);
  }
  return U;
}

MonitorParams single(MonitorVar v, double theta, double power, int passes = 0) {
  MonitorParams mp;
  mp.terms = {MonitorTerm{v, theta, power, false}};
  mp.smoothing_passes = passes;
  return mp;
}

}  // namespace

TEST_CASE("monitor") {
  GridSpec g = outflow_box(11, 11);
  StateField flat(11, 11, conserved(2.0, 0.0, 0.0, 0.0));
  for (double w : testutil::values(monitor(g, flat, single(MonitorVar::Surface, 100, 2)))) CHECK(w == 1.0);

  GridSpec g1 = outflow_box(101, 1, 10.0);
  const StateField U = lake_gaussian(g1);
  for (double power : {1.0, 2.0}) {
    const ScalarField w = monitor(g1, U, single(MonitorVar::Depth, 100, power));
    double wmax = 0.0;
    int imax = -1;
    for (int i = 0; i < 101; ++i) {
      CHECK(w(i, 0) >= 1.0);
      if (w(i, 0) > wmax) {
        wmax = w(i, 0);
        imax = i;
      }
    }
    CHECK(wmax == doctest::Approx(std::sqrt(101.0)));
    // |b'| peaks at x = 5 +- sqrt(1.25)
    const double xm = g1.xi(0, imax);
    CHECK(std::abs(std::abs(xm - 5.0) - std::sqrt(1.25)) < 0.15);
  }
  // Laplacian term
  MonitorParams lap;
  lap.terms = {MonitorTerm{MonitorVar::Bottom, 10, 1, true}};
  double lmax = 0.0;
  for (double w : testutil::values(monitor(g1, U, lap))) lmax = std::max(lmax, w);
  CHECK(lmax == doctest::Approx(std::sqrt(11.0)));
}

TEST_CASE("monitor parameter validation") {
  MonitorParams mp;
  CHECK_NOTHROW(mp.validate());
  mp.terms[0].theta = 0.0;
  CHECK_THROWS_AS(mp.validate(), ConfigError);
  mp = MonitorParams{};
  mp.jacobi_iterations = 0;
  CHECK_THROWS_AS(mp.validate(), ConfigError);
  CHECK(parse_monitor_var("h+b") == MonitorVar::Surface);
  CHECK(parse_monitor_var("h") == MonitorVar::Depth);
  CHECK_THROWS_AS(parse_monitor_var("v"), ConfigError);
}

TEST_CASE("low-pass filter") {
  GridSpec g = outflow_box(7, 7);
  ScalarField c(7, 7, 3.5);
  for (double v : testutil::values(smooth_monitor(g, c, 4))) CHECK(v == doctest::Approx(3.5).epsilon(1e-15));
  ScalarField spike(7, 7, 0.0);
  spike(3, 3) = 1.0;
  const ScalarField s = smooth_monitor(g, spike, 1);
  CHECK(s(3, 3) == 0.25);
  CHECK(s(2, 3) == 0.125);
  CHECK(s(3, 4) == 0.125);
  CHECK(s(2, 2) == 0.0625);
  CHECK(s(4, 2) == 0.0625);
  CHECK(s(0, 0) == 0.0);
  Rng rng(1);
  ScalarField r(7, 7);
  for (auto& v : r.data()) v = rng.uni(1, 5);
  const double lo = *std::min_element(r.data().begin(), r.data().end());
  const double hi = *std::max_element(r.data().begin(), r.data().end());
  for (double v : testutil::values(smooth_monitor(g, r, 3))) {
    CHECK(v >= lo - 1e-14);
    CHECK(v <= hi + 1e-14);
  }
}

TEST_CASE("Jacobi sweep") {
  GridSpec g = outflow_box(9, 9);
  const Coords x = uniform_coords(g);
  const ScalarField one(9, 9, 1.0);
  const Coords y = jacobi_sweep(g, x, one);
  for (size_t k = 0; k < x.x1.size(); ++k) {
    CHECK(std::abs(y.x1[k] - x.x1[k]) < 1e-15);
    CHECK(std::abs(y.x2[k] - x.x2[k]) < 1e-15);
  }
  // a displaced interior node returns to the mean of its neighbours
  Coords d = x;
  d.x1(4, 4) += 0.05;
  d.x2(4, 4) -= 0.03;
  const Coords e = jacobi_sweep(g, d, one);
  CHECK(e.x1(4, 4) == doctest::Approx(x.x1(4, 4)).epsilon(1e-14));
  CHECK(e.x2(4, 4) == doctest::Approx(x.x2(4, 4)).epsilon(1e-14));
  // corners never move, edge nodes slide along their edge
  Coords r = x;
  Rng rng(2);
  for (int j = 1; j < 8; ++j)
    for (int i = 1; i < 8; ++i) {
      r.x1(i, j) += rng.uni(-0.02, 0.02);
      r.x2(i, j) += rng.uni(-0.02, 0.02);
    }
  const Coords s = jacobi_sweep(g, r, one);
  CHECK(s.x1(0, 0) == 0.0);
  CHECK(s.x2(8, 8) == 1.0);
  for (int k = 0; k < 9; ++k) {
    CHECK(s.x1(0, k) == 0.0);
    CHECK(s.x1(8, k) == 1.0);
    CHECK(s.x2(k, 0) == 0.0);
    CHECK(s.x2(k, 8) == 1.0);
  }
}

TEST_CASE("1D equidistribution matches a direct tridiagonal solve") {
  const int n = 21;
  GridSpec g = outflow_box(n, 1);
  ScalarField w(n, 1);
  for (int i = 0; i < n; ++i) w(i, 0) = i >= n / 2 ? 2.0 : 1.0;
  Coords x = uniform_coords(g);
  for (int it = 0; it < 20000; ++it) x = jacobi_sweep(g, x, w);
  // (w_i + w_{i+1})(x_{i+1} - x_i) - (w_i + w_{i-1})(x_i - x_{i-1}) = 0, ends fixed
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  A(0, 0) = A(n - 1, n - 1) = 1.0;
  rhs(n - 1) = 1.0;
  for (int i = 1; i < n - 1; ++i) {
    const double cp = w(i, 0) + w(i + 1, 0), cm = w(i, 0) + w(i - 1, 0);
    A(i, i - 1) = cm;
    A(i, i) = -(cp + cm);
    A(i, i + 1) = cp;
  }
  const Eigen::VectorXd ref = A.partialPivLu().solve(rhs);
  for (int i = 0; i < n; ++i) CHECK(std::abs(x.x1(i, 0) - ref(i)) < 1e-9);
  CHECK(x.x1(n - 1, 0) - x.x1(n - 2, 0) < x.x1(1, 0) - x.x1(0, 0));
}

TEST_CASE("limiter") {
  GridSpec g = outflow_box(6, 1, 5.0);
  const Coords x = uniform_coords(g);
  auto mv = limit_and_move(g, x, x);
  CHECK(mv.dtau == 1.0);
  for (double d : mv.delta.x1.data()) CHECK(d == 0.0);
  Coords c = x;
  c.x1(2, 0) -= 0.5;  // half the left gap
  CHECK(limit_and_move(g, x, c).dtau == doctest::Approx(1.0));
  c.x1(2, 0) = x.x1(2, 0) - 1.0;  // full gap
  mv = limit_and_move(g, x, c);
  CHECK(mv.dtau <= 0.5);
  CHECK(mv.delta.x1(2, 0) == doctest::Approx(-mv.dtau));
  // any candidate yields a monotone mesh
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    Coords r = x;
    for (int i = 1; i < 5; ++i) r.x1(i, 0) += rng.uni(-3, 3);
    const auto m = limit_and_move(g, x, r);
    const Coords y = add_scaled(x, m.delta, 1.0);
    for (int i = 0; i < 5; ++i) CHECK(y.x1(i + 1, 0) > y.x1(i, 0));
  }
}

TEST_CASE("mesh velocity") {
  GridSpec g = outflow_box(5, 1);
  MeshMove mv;
  mv.delta = Coords{ScalarField(5, 1, 0.0), ScalarField(5, 1, 0.0)};
  for (double v : testutil::values(mesh_velocity(mv, 0.1).x1)) CHECK(v == 0.0);
  mv.delta.x1.fill(0.02);
  const Coords v = mesh_velocity(mv, 0.1);
  for (double q : v.x1.data()) CHECK(q == doctest::Approx(0.2));
  const Coords x = uniform_coords(g);
  const Coords a = add_scaled(x, v, 0.1), b = add_scaled(x, mv.delta, 1.0);
  for (size_t k = 0; k < 5; ++k) CHECK(a.x1[k] == doctest::Approx(b.x1[k]).epsilon(1e-15));
  CHECK_THROWS_AS(mesh_velocity(mv, 0.0), Error);
}

TEST_CASE("adaptation concentrates nodes over the bump and stays untangled") {
  GridSpec g = outflow_box(101, 1, 10.0);
  const StateField U = lake_gaussian(g);
  MonitorParams mp = single(MonitorVar::Depth, 100, 1, 5);
  Coords x = uniform_coords(g);
  for (int it = 0; it < 20; ++it) {
    x = add_scaled(x, adapt_mesh(g, x, U, mp).delta, 1.0);
    CHECK(find_tangled(coordinate_jacobian(g, x, SchemeOrder(3)))[0] == -1);
  }
  double near = 1e9;
  for (int i = 0; i < 100; ++i)
    if (std::abs(x.x1(i, 0) - 5.0) < 2.0) near = std::min(near, x.x1(i + 1, 0) - x.x1(i, 0));
  const double far = x.x1(1, 0) - x.x1(0, 0);
  CHECK(near < far);

  // 2D uniform fixed point
  GridSpec g2 = outflow_box(12, 12);
  StateField flat(12, 12, conserved(1.0, 0.0, 0.0, 0.0));
  const Coords u2 = uniform_coords(g2);
  const auto m = adapt_mesh(g2, u2, flat, MonitorParams{});
  for (int c = 0; c < 2; ++c)
    for (double d : m.delta[c].data()) CHECK(std::abs(d) < 1e-14);
}

TEST_CASE("periodic adaptation keeps the period") {
  GridSpec g;
  g.n1 = 40;
  g.len1 = 2.0;
  g.bc1 = Boundary::Periodic;
  StateField U(40, 1);
  for (int i = 0; i < 40; ++i) U(i, 0) = conserved(2.0 + std::sin(3.14159265358979 * g.xi(0, i)), 0.0, 0.0, 0.0);
  MonitorParams mp = single(MonitorVar::Depth, 50, 1, 3);
  Coords x = uniform_coords(g);
  for (int it = 0; it < 10; ++it) x = add_scaled(x, adapt_mesh(g, x, U, mp).delta, 1.0);
  for (int i = 0; i < 39; ++i) CHECK(x.x1(i + 1, 0) > x.x1(i, 0));
  CHECK(x.x1(0, 0) + 2.0 > x.x1(39, 0));
}
