#pragma once

#include "wbes/moving_mesh.hpp"
#include "wbes/scheme.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace wbes {

enum class MeshMode { Static, Moving };

MeshMode parse_mesh_mode(const std::string& s);
std::string to_string(MeshMode m);

struct SolverOptions {
  SchemeOptions scheme{};
  MeshMode mesh = MeshMode::Static;
  MonitorParams monitor{};
  double cfl = 0.4;
  // > 0 switches to dt = cfl * (min dxi)^exponent (capped by the CFL bound)
  double accuracy_exponent = 0.0;
  double dt_max = std::numeric_limits<double>::infinity();
  bool collect_gates = false;
};

struct SimulationState {
  StateField calU;  // J U
  ScalarField J;
  Coords x;
  double t = 0.0;
  long steps = 0;
};

// position and direction of an interface where the second dissipation term acted on b
struct GateHit {
  double t, x1, x2;
  int axis;
};

using SourceFn = std::function<Vec4d(double x1, double x2, double t)>;
using InitialFn = std::function<Primitive<double>(double x1, double x2)>;

// C / sum_l max(rho_l) / dxi_l with rho the nodal spectral radius, divided by J in 1D only
double cfl_dt(const GridSpec& g, const StateField& U, const ScalarField& J, const MeshMetrics& met, const Params& par,
              double cfl);

double total_energy(const GridSpec& g, const SimulationState& s, const Params& par);

class Solver {
 public:
  Solver(GridSpec grid, SolverOptions opt, SourceFn source = {});

  const GridSpec& grid() const { return grid_; }
  const SolverOptions& options() const { return opt_; }

  // J U on the given mesh (uniform when null); J from the coordinates
  SimulationState initial_state(const InitialFn& init, const Coords* x0 = nullptr) const;

  // Redistribute the initial mesh `iterations` times, re-sampling the initial data each time.
  SimulationState preadapted_state(const InitialFn& init, int iterations) const;

  // One coupled SSP-RK3 step with fixed mesh velocity (null for a static mesh).
  void ssp_rk3_step(SimulationState& s, double dt, const Coords* xdot) const;

  // Mesh adaptation + time step selection + SSP-RK3. Returns the step size used.
  double step(SimulationState& s, double t_stop);

  void advance(SimulationState& s, double t_end, const std::function<void(const SimulationState&)>& after_step = {});

  const std::vector<GateHit>& gate_hits() const { return gates_; }
  void clear_gate_hits() { gates_.clear(); }

 private:
  SemiDiscreteRhs rhs(const StateField& calU, const ScalarField& J, const Coords& x, const MeshMetrics& met, double t,
                      bool collect) const;
  void check_mesh(const SimulationState& s) const;

  GridSpec grid_;
  SolverOptions opt_;
  SourceFn source_;
  mutable std::vector<GateHit> gates_;
};

}  // namespace wbes
