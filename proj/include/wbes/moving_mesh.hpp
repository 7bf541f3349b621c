#pragma once

#include "wbes/grid.hpp"

#include <string>
#include <vector>

namespace wbes {

enum class MonitorVar { Depth, Surface, Bottom };

MonitorVar parse_monitor_var(const std::string& s);
std::string to_string(MonitorVar v);

// theta * (|grad sigma| / max|grad sigma|)^power, or the Laplacian analogue
struct MonitorTerm {
  MonitorVar var = MonitorVar::Surface;
  double theta = 100.0;
  double power = 2.0;
  bool laplacian = false;
};

struct MonitorParams {
  std::vector<MonitorTerm> terms{MonitorTerm{}};
  int smoothing_passes = 5;
  int jacobi_iterations = 10;
  void validate() const;
};

ScalarField monitor_variable(const StateField& U, MonitorVar v);

ScalarField monitor(const GridSpec& g, const StateField& U, const MonitorParams& mp);

// 9-point low-pass filter, kernel weights (1/2)^(|i1|+|j1|+2)
ScalarField smooth_monitor(const GridSpec& g, const ScalarField& w, int passes);

// one Jacobi sweep of the variable-coefficient mesh equations; boundary nodes slide tangentially
Coords jacobi_sweep(const GridSpec& g, const Coords& x, const ScalarField& w);

struct MeshMove {
  Coords delta;  // already scaled by dtau
  double dtau = 1.0;
};

MeshMove limit_and_move(const GridSpec& g, const Coords& x_old, const Coords& x_candidate);

Coords mesh_velocity(const MeshMove& move, double dt);

// monitor, smoothing, Jacobi sweeps and limiter for the solution on mesh x
MeshMove adapt_mesh(const GridSpec& g, const Coords& x, const StateField& U, const MonitorParams& mp);

Coords add_scaled(const Coords& x, const Coords& d, double s);

}  // namespace wbes
