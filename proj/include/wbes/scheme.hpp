#pragma once

#include "wbes/dissipation.hpp"
#include "wbes/metrics.hpp"

#include <limits>
#include <vector>

namespace wbes {

enum class SchemeKind { EC, ES };

SchemeKind parse_scheme(const std::string& s);
std::string to_string(SchemeKind k);

struct SchemeOptions {
  SchemeKind kind = SchemeKind::ES;
  SchemeOrder order{3};
  bool ring = true;  // second (conservative-variable) dissipation term
  Params params{};
};

// interface between node (i,j) and its +1 neighbour along `axis`
struct GateRecord {
  int axis, i, j;
};

struct RhsDiagnostics {
  bool want_energy = false;
  bool want_gates = false;
  ScalarField energy_flux_div;  // sum over axes of (Q_{+1/2} - Q_{-1/2}) / dxi
  std::vector<GateRecord> gates;
  // smallest dissipation quadratic forms seen: [V~]^T Yhat [V~]^WENO and [V]^T Yring [U]^WENO
  double min_hat_form = std::numeric_limits<double>::infinity();
  double min_ring_form = std::numeric_limits<double>::infinity();
};

struct SemiDiscreteRhs {
  StateField dU;  // d(JU)/dt
  ScalarField dJ;
};

// U = JU / J with the depth guard
StateField node_states(const StateField& calU, const ScalarField& J);

SemiDiscreteRhs compute_rhs(const GridSpec& g, const StateField& U, const MeshMetrics& met, const SchemeOptions& opt,
                            RhsDiagnostics* diag = nullptr);
SemiDiscreteRhs ec_rhs(const GridSpec& g, const StateField& U, const MeshMetrics& met, const SchemeOptions& opt,
                       RhsDiagnostics* diag = nullptr);
SemiDiscreteRhs es_rhs(const GridSpec& g, const StateField& U, const MeshMetrics& met, const SchemeOptions& opt,
                       RhsDiagnostics* diag = nullptr);

// V . d(JU)/dt - phi dJ/dt + energy flux divergence at every node
ScalarField energy_residual(const StateField& U, const SemiDiscreteRhs& rhs, const RhsDiagnostics& diag,
                            const Params& par);

// Interface fields: axis 0 -> (n1+1) x n2, axis 1 -> n1 x (n2+1); entry k sits at k-1/2.
GridField<Vec4d> high_order_interface_flux(const GridSpec& g, const StateField& U, const MeshMetrics& met,
                                           const SchemeOrder& order, const Params& par, int axis);
GridField<Vec4d> high_order_source_flux(const GridSpec& g, const StateField& U, const MeshMetrics& met,
                                        const SchemeOrder& order, int axis);

}  // namespace wbes
