#include "helpers.hpp"

#include "wbes/problems.hpp"
#include "wbes/time_integration.hpp"

using namespace wbes;

namespace {

GridSpec line(int n, double len, Boundary bc = Boundary::Outflow) {
  GridSpec g;
  g.n1 = n;
  g.len1 = len;
  g.bc1 = bc;
  return g;
}

double wb_error(const SimulationState& s, double C) {
  double e = 0.0;
  for (size_t k = 0; k < s.J.size(); ++k) {
    const Vec4d U = s.calU[k] / s.J[k];
    e = std::max({e, std::abs(U(0) + U(3) - C), std::abs(U(1) / U(0)), std::abs(U(2) / U(0))});
  }
  return e;
}

}  // namespace

TEST_CASE("CFL time step") {
  const GridSpec g = line(11, 1.0);  // dxi = 0.1
  const StateField U(11, 1, conserved(1.0, 0.0, 0.0, 0.0));
  const ScalarField J(11, 1, 1.0);
  const MeshMetrics met = spatial_metrics(g, uniform_coords(g), SchemeOrder(3));
  const double dt = cfl_dt(g, U, J, met, Params(1.0), 0.4);
  CHECK(dt == doctest::Approx(0.04));
  const GridSpec g2 = line(21, 1.0);
  const StateField U2(21, 1, conserved(1.0, 0.0, 0.0, 0.0));
  const MeshMetrics m2 = spatial_metrics(g2, uniform_coords(g2), SchemeOrder(3));
  CHECK(cfl_dt(g2, U2, ScalarField(21, 1, 1.0), m2, Params(1.0), 0.4) == doctest::Approx(0.02));
}

TEST_CASE("solver step uses the CFL rule, the accuracy rule and lands on the stop time") {
  SolverOptions o;
  o.scheme.params = Params(1.0);
  Solver sol(line(11, 1.0), o);
  auto s = sol.initial_state([](double, double) { return Primitive<double>{1.0, 0.0, 0.0, 0.0}; });
  CHECK(sol.step(s, 1.0) == doctest::Approx(0.04));
  CHECK(sol.step(s, 0.05) == doctest::Approx(0.01));
  CHECK(s.t == doctest::Approx(0.05));
  o.accuracy_exponent = 2.0;
  Solver acc(line(11, 1.0), o);
  auto a = acc.initial_state([](double, double) { return Primitive<double>{1.0, 0.0, 0.0, 0.0}; });
  CHECK(acc.step(a, 1.0) == doctest::Approx(0.4 * 0.01));
  // no waves and no dt_max
  SolverOptions z;
  z.scheme.params = Params(1.0);
  CHECK(z.dt_max > 1e300);
}

TEST_CASE("SSP-RK3 stage structure") {
  // source depending only on t: momentum integrates it with Simpson's rule, exact for cubics
  const auto f = [](double t) { return 1.0 + 2.0 * t - 3.0 * t * t + 4.0 * t * t * t; };
  SolverOptions o;
  o.scheme.params = Params(1.0);
  Solver sol(line(10, 1.0, Boundary::Periodic), o,
             [&](double, double, double t) { return Vec4d(0.0, f(t), 0.0, 0.0); });
  auto s = sol.initial_state([](double, double) { return Primitive<double>{2.0, 0.0, 0.0, 0.5}; });
  s.t = 0.3;
  const double dt = 0.2;
  sol.ssp_rk3_step(s, dt, nullptr);
  const auto F = [](double t) { return t + t * t - t * t * t + t * t * t * t; };
  const double exact = F(0.5) - F(0.3);
  for (size_t k = 0; k < s.calU.size(); ++k) {
    CHECK(s.calU[k](1) == doctest::Approx(exact).epsilon(1e-13));
    CHECK(s.calU[k](0) == doctest::Approx(2.0).epsilon(1e-15));
  }
  CHECK(s.t == doctest::Approx(0.5));
  CHECK(s.steps == 1);

  // constant state, flat bottom, static mesh: unchanged
  Solver still(line(10, 1.0, Boundary::Periodic), o);
  auto c = still.initial_state([](double, double) { return Primitive<double>{2.0, 0.3, 0.0, 0.0}; });
  const StateField before = c.calU;
  still.ssp_rk3_step(c, 0.01, nullptr);
  for (size_t k = 0; k < before.size(); ++k) CHECK((c.calU[k] - before[k]).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("mesh moves by dt times the held velocity") {
  SolverOptions o;
  o.scheme.params = Params(1.0);
  const GridSpec g = line(20, 1.0, Boundary::Periodic);
  Solver sol(g, o);
  auto s = sol.initial_state([](double, double) { return Primitive<double>{1.0, 0.0, 0.0, 0.0}; });
  Coords v{ScalarField(20, 1), ScalarField(20, 1, 0.0)};
  for (int i = 0; i < 20; ++i) v.x1(i, 0) = 0.1 * std::sin(2 * 3.14159265358979 * g.xi(0, i));
  const Coords x0 = s.x;
  sol.ssp_rk3_step(s, 0.05, &v);
  for (int i = 0; i < 20; ++i) CHECK(s.x.x1(i, 0) == doctest::Approx(x0.x1(i, 0) + 0.05 * v.x1(i, 0)).epsilon(1e-15));
  // evolved J agrees with the coordinate Jacobian to truncation level
  const ScalarField Jx = coordinate_jacobian(g, s.x, SchemeOrder(3));
  for (int i = 0; i < 20; ++i) CHECK(std::abs(s.J(i, 0) - Jx(i, 0)) < 1e-4);
}

TEST_CASE("fully discrete well-balance on moving meshes") {
  for (const char* topo : {"smooth", "step"}) {
    ProblemConfig cfg = default_config("lake-at-rest-1d");
    cfg.topography = topo;
    cfg.solver.mesh = MeshMode::Moving;
    const auto setup = build_problem(cfg);
    Solver sol(cfg.grid, cfg.solver, setup.source);
    auto s = sol.initial_state(setup.initial);
    for (int k = 0; k < 100; ++k) sol.step(s, 1e9);
    CHECK(wb_error(s, 10.0) < 1e-11);
  }
  for (const char* topo : {"smooth", "step"}) {
    ProblemConfig cfg = default_config("lake-at-rest-2d");
    cfg.topography = topo;
    cfg.grid.n1 = cfg.grid.n2 = 24;
    cfg.solver.mesh = MeshMode::Moving;
    const auto setup = build_problem(cfg);
    Solver sol(cfg.grid, cfg.solver, setup.source);
    auto s = sol.initial_state(setup.initial);
    for (int k = 0; k < 10; ++k) sol.step(s, 1e9);
    CHECK(wb_error(s, 1.0) < 1e-12);
  }
}

TEST_CASE("solver errors") {
  SolverOptions o;
  CHECK_THROWS_AS(Solver(line(5, 1.0), o), ConfigError);  // fewer than 2p+1 nodes
  o.cfl = 0.0;
  CHECK_THROWS_AS(Solver(line(20, 1.0), o), ConfigError);
  CHECK(parse_mesh_mode("moving") == MeshMode::Moving);
  CHECK(parse_mesh_mode("static") == MeshMode::Static);
  CHECK_THROWS_AS(parse_mesh_mode("warp"), ConfigError);

  // an unstable step size on a strong dam break drives the depth negative
  SolverOptions d;
  d.scheme.params = Params(1.0);
  d.cfl = 3.0;
  Solver sol(line(40, 1.0, Boundary::Periodic), d);
  auto s = sol.initial_state([](double x, double) {
    return x < 0.5 ? Primitive<double>{1.0, 0.0, 0.0, 0.0} : Primitive<double>{1e-3, 0.0, 0.0, 0.0};
  });
  bool threw = false;
  try {
    for (int k = 0; k < 50; ++k) sol.step(s, 1e9);
  } catch (const PositivityError& e) {
    threw = true;
    CHECK(e.i() >= 0);
  }
  CHECK(threw);

  // tangled initial mesh
  Coords x = uniform_coords(line(20, 1.0));
  std::swap(x.x1(5, 0), x.x1(6, 0));
  Solver ok(line(20, 1.0), SolverOptions{});
  CHECK_THROWS_AS(ok.initial_state([](double, double) { return Primitive<double>{1.0, 0.0, 0.0, 0.0}; }, &x),
                  MeshTanglingError);
}

TEST_CASE("total energy") {
  SolverOptions o;
  o.scheme.params = Params(2.0, 1.0);
  Solver sol(line(11, 1.0), o);
  const auto s = sol.initial_state([](double, double) { return Primitive<double>{1.0, 0.0, 0.0, 0.0}; });
  // eta = g h^2 / 2 = 1, 11 nodes with weight 0.1
  CHECK(total_energy(sol.grid(), s, o.scheme.params) == doctest::Approx(1.1));
}
