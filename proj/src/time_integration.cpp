#include "wbes/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace wbes {

namespace {

// the 1D rule divides the spectral radius by J, the 2D rule uses it as is
double radius_weight(const GridSpec& g, double J) {
  return g.two_d() ? 1.0 : 1.0 / J;
}

}  // namespace

MeshMode parse_mesh_mode(const std::string& s) {
  if (s == "static" || s == "uniform") return MeshMode::Static;
  if (s == "moving" || s == "adaptive") return MeshMode::Moving;
  throw ConfigError("unknown mesh mode '" + s + "' (expected static or moving)");
}

std::string to_string(MeshMode m) { return m == MeshMode::Static ? "static" : "moving"; }

double cfl_dt(const GridSpec& g, const StateField& U, const ScalarField& J, const MeshMetrics& met, const Params& par,
              double cfl) {
  double denom = 0.0;
  for (int a = 0; a < g.active_axes(); ++a) {
    double rmax = 0.0;
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i)
        rmax = std::max(rmax, spectral_radius(U(i, j), met.triple(a, i, j), par) * radius_weight(g, J(i, j)));
    denom += rmax / g.dxi(a);
  }
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return cfl / denom;
}

double total_energy(const GridSpec& g, const SimulationState& s, const Params& par) {
  const double w = g.dxi(0) * (g.two_d() ? g.dxi(1) : 1.0);
  double e = 0.0;
  for (size_t k = 0; k < s.J.size(); ++k) {
    const Vec4d U = s.calU[k] / s.J[k];
    e += s.J[k] * energy(U, par);
  }
  return e * w;
}

Solver::Solver(GridSpec grid, SolverOptions opt, SourceFn source)
    : grid_(grid), opt_(std::move(opt)), source_(std::move(source)) {
  grid_.validate(2 * opt_.scheme.order.p + 1);
  opt_.monitor.validate();
  if (!(opt_.cfl > 0.0)) throw ConfigError("CFL number must be positive");
}

SimulationState Solver::initial_state(const InitialFn& init, const Coords* x0) const {
  SimulationState s;
  s.x = x0 ? *x0 : uniform_coords(grid_);
  s.J = coordinate_jacobian(grid_, s.x, opt_.scheme.order);
  auto bad = find_tangled(s.J);
  if (bad[0] >= 0) throw MeshTanglingError("initial mesh is tangled", bad[0], bad[1], s.J(bad[0], bad[1]));
  bad = find_inverted_cell(grid_, s.x);
  if (bad[0] >= 0) throw MeshTanglingError("initial mesh has an inverted cell", bad[0], bad[1], s.J(bad[0], bad[1]));
  s.calU = StateField(grid_.n1, grid_.n2);
  for (int j = 0; j < grid_.n2; ++j)
    for (int i = 0; i < grid_.n1; ++i) s.calU(i, j) = s.J(i, j) * conserved(init(s.x.x1(i, j), s.x.x2(i, j)));
  return s;
}

SimulationState Solver::preadapted_state(const InitialFn& init, int iterations) const {
  Coords x = uniform_coords(grid_);
  for (int it = 0; it < iterations; ++it) {
    StateField U(grid_.n1, grid_.n2);
    for (int j = 0; j < grid_.n2; ++j)
      for (int i = 0; i < grid_.n1; ++i) U(i, j) = conserved(init(x.x1(i, j), x.x2(i, j)));
    const MeshMove mv = adapt_mesh(grid_, x, U, opt_.monitor);
    x = add_scaled(x, mv.delta, 1.0);
  }
  return initial_state(init, &x);
}

SemiDiscreteRhs Solver::rhs(const StateField& calU, const ScalarField& J, const Coords& x, const MeshMetrics& met,
                            double t, bool collect) const {
  const StateField U = node_states(calU, J);
  RhsDiagnostics diag;
  diag.want_gates = collect;
  SemiDiscreteRhs r = compute_rhs(grid_, U, met, opt_.scheme, collect ? &diag : nullptr);
  if (source_)
    for (int j = 0; j < grid_.n2; ++j)
      for (int i = 0; i < grid_.n1; ++i) r.dU(i, j) += J(i, j) * source_(x.x1(i, j), x.x2(i, j), t);
  if (collect)
    for (const auto& gr : diag.gates) {
      const int i2 = gr.axis == 0 ? (gr.i + 1) % grid_.n1 : gr.i;
      const int j2 = gr.axis == 1 ? (gr.j + 1) % grid_.n2 : gr.j;
      gates_.push_back({t, 0.5 * (x.x1(gr.i, gr.j) + x.x1(i2, j2)), 0.5 * (x.x2(gr.i, gr.j) + x.x2(i2, j2)), gr.axis});
    }
  return r;
}

namespace {

void axpy(StateField& y, const StateField& a, double s) {
  for (size_t k = 0; k < y.size(); ++k) y[k] += s * a[k];
}
void axpy(ScalarField& y, const ScalarField& a, double s) {
  for (size_t k = 0; k < y.size(); ++k) y[k] += s * a[k];
}
template <class F>
F blend(const F& a, double ca, const F& b, double cb) {
  F out = a;
  for (size_t k = 0; k < out.size(); ++k) out[k] = ca * a[k] + cb * b[k];
  return out;
}

}  // namespace

void Solver::ssp_rk3_step(SimulationState& s, double dt, const Coords* xdot) const {
  const auto& order = opt_.scheme.order;
  const bool moving = xdot != nullptr;
  const MeshMetrics met0 = mesh_metrics(grid_, s.x, xdot, order);

  SemiDiscreteRhs r = rhs(s.calU, s.J, s.x, met0, s.t, opt_.collect_gates);
  StateField U1 = s.calU;
  ScalarField J1 = s.J;
  axpy(U1, r.dU, dt);
  axpy(J1, r.dJ, dt);
  const Coords x1 = moving ? add_scaled(s.x, *xdot, dt) : s.x;

  r = rhs(U1, J1, x1, moving ? mesh_metrics(grid_, x1, xdot, order) : met0, s.t + dt, false);
  axpy(U1, r.dU, dt);
  axpy(J1, r.dJ, dt);
  const StateField U2 = blend(s.calU, 0.75, U1, 0.25);
  const ScalarField J2 = blend(s.J, 0.75, J1, 0.25);
  const Coords x2 = moving ? add_scaled(s.x, *xdot, 0.5 * dt) : s.x;

  r = rhs(U2, J2, x2, moving ? mesh_metrics(grid_, x2, xdot, order) : met0, s.t + 0.5 * dt, false);
  StateField U3 = U2;
  ScalarField J3 = J2;
  axpy(U3, r.dU, dt);
  axpy(J3, r.dJ, dt);
  s.calU = blend(s.calU, 1.0 / 3.0, U3, 2.0 / 3.0);
  s.J = blend(s.J, 1.0 / 3.0, J3, 2.0 / 3.0);
  if (moving) s.x = add_scaled(s.x, *xdot, dt);
  s.t += dt;
  ++s.steps;
  node_states(s.calU, s.J);
}

void Solver::check_mesh(const SimulationState& s) const {
  auto bad = find_tangled(s.J);
  if (bad[0] >= 0) {
    std::ostringstream os;
    os << "evolved Jacobian " << s.J(bad[0], bad[1]) << " at node (" << bad[0] << ", " << bad[1] << ")";
    throw MeshTanglingError(os.str(), bad[0], bad[1], s.J(bad[0], bad[1]));
  }
  const ScalarField Jx = coordinate_jacobian(grid_, s.x, opt_.scheme.order);
  bad = find_tangled(Jx);
  if (bad[0] >= 0) {
    std::ostringstream os;
    os << "mesh Jacobian " << Jx(bad[0], bad[1]) << " at node (" << bad[0] << ", " << bad[1] << ")";
    throw MeshTanglingError(os.str(), bad[0], bad[1], Jx(bad[0], bad[1]));
  }
  bad = find_inverted_cell(grid_, s.x);
  if (bad[0] >= 0) {
    std::ostringstream os;
    os << "inverted cell at node (" << bad[0] << ", " << bad[1] << ")";
    throw MeshTanglingError(os.str(), bad[0], bad[1], Jx(bad[0], bad[1]));
  }
}

double Solver::step(SimulationState& s, double t_stop) {
  const StateField U = node_states(s.calU, s.J);
  const bool moving = opt_.mesh == MeshMode::Moving;
  Coords d;
  if (moving) d = adapt_mesh(grid_, s.x, U, opt_.monitor).delta;

  // dt * sum_l max(|mt_l| + rho_l)/(J dxi_l) <= A + dt * B with A the mesh Courant number
  const MeshMetrics met = spatial_metrics(grid_, s.x, opt_.scheme.order);
  const double C = opt_.cfl;
  double B = 0.0, A = 0.0;
  for (int a = 0; a < grid_.active_axes(); ++a) {
    double rmax = 0.0, mmax = 0.0;
    for (int j = 0; j < grid_.n2; ++j)
      for (int i = 0; i < grid_.n1; ++i) {
        const auto M = met.triple(a, i, j);
        const double w = radius_weight(grid_, s.J(i, j));
        rmax = std::max(rmax, spectral_radius(U(i, j), M, opt_.scheme.params) * w);
        if (moving) mmax = std::max(mmax, std::abs(d.x1(i, j) * M(1) + d.x2(i, j) * M(2)) * w);
      }
    B += rmax / grid_.dxi(a);
    A += mmax / grid_.dxi(a);
  }
  if (A > 0.5 * C) {
    const double scale = 0.5 * C / A;
    for (int c = 0; c < 2; ++c)
      for (size_t k = 0; k < d[c].size(); ++k) d[c][k] *= scale;
    A = 0.5 * C;
  }
  double dt = B > 0.0 ? (C - A) / B : opt_.dt_max;
  dt = std::min(dt, opt_.dt_max);
  // mesh velocity always refers to the Courant step; shorter steps move the mesh part of the way
  const double dt_mesh = dt;
  if (opt_.accuracy_exponent > 0.0) {
    double dmin = grid_.dxi(0);
    if (grid_.two_d()) dmin = std::min(dmin, grid_.dxi(1));
    dt = std::min(dt, C * std::pow(dmin, opt_.accuracy_exponent));
  }
  dt = std::min(dt, opt_.dt_max);
  if (!std::isfinite(dt) || dt <= 0.0) throw Error("no admissible time step (zero wave speed and no dt_max)");
  if (s.t + dt > t_stop) dt = t_stop - s.t;

  if (moving) {
    const Coords xdot = mesh_velocity(MeshMove{d, 1.0}, dt_mesh);
    ssp_rk3_step(s, dt, &xdot);
  } else {
    ssp_rk3_step(s, dt, nullptr);
  }
  if (moving) check_mesh(s);
  return dt;
}

void Solver::advance(SimulationState& s, double t_end, const std::function<void(const SimulationState&)>& after_step) {
  const double tol = 1e-13 * std::max(1.0, std::abs(t_end));
  while (s.t < t_end - tol) {
    step(s, t_end);
    if (after_step) after_step(s);
  }
  s.t = std::max(s.t, t_end);
}

}  // namespace wbes
