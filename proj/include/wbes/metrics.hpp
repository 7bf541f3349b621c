#pragma once

#include "wbes/ec_flux.hpp"
#include "wbes/grid.hpp"

#include <array>
#include <vector>

namespace wbes {

inline constexpr int kHalo = 3;

// alpha_{p,m}, m = 1..p, from sum m a_m = 1 and sum m^(2s-1) a_m = 0 (s = 2..p)
Eigen::VectorXd alpha_coefficients(int p);

struct SchemeOrder {
  int p;
  Eigen::VectorXd alpha;
  explicit SchemeOrder(int p_ = 3) : p(p_), alpha(alpha_coefficients(p_)) {}
};

// metric fields carried with a halo of kHalo nodes on every active axis
struct MeshMetrics {
  GridSpec grid;
  Padded m11, m12, m21, m22;  // m[l][k] = J dxi_l/dx_k
  Padded mt1, mt2;            // J dxi_l/dt
  ScalarField J;              // m11 m22 - m12 m21 at real nodes

  MetricTriple<double> triple(int axis, int i, int j) const {
    return axis == 0 ? MetricTriple<double>(mt1(i, j), m11(i, j), m12(i, j))
                     : MetricTriple<double>(mt2(i, j), m21(i, j), m22(i, j));
  }
};

MeshMetrics spatial_metrics(const GridSpec& g, const Coords& x, const SchemeOrder& order);

// mt_l = -xdot1 m[l][1] - xdot2 m[l][2]; a null xdot clears the temporal metrics
void temporal_metrics(MeshMetrics& met, const Coords* xdot);

MeshMetrics mesh_metrics(const GridSpec& g, const Coords& x, const Coords* xdot, const SchemeOrder& order);

// Interface values sum_m alpha_m sum_s (a_{i-s} + a_{i-s+m})/2 along a padded line.
// `line` points at node 0 and must be readable on [-p, n-1+p]; out[k] is the value at k-1/2, k = 0..n.
void metric_interface_flux(const double* line, int n, const SchemeOrder& order, double* out);
std::vector<double> metric_interface_flux(const std::vector<double>& padded, int halo, const SchemeOrder& order);

// Discrete surface conservation residuals (k = 1, 2) at real nodes.
std::array<ScalarField, 2> scl_residual(const MeshMetrics& met, const SchemeOrder& order);

// Nodal Jacobian straight from coordinates.
ScalarField coordinate_jacobian(const GridSpec& g, const Coords& x, const SchemeOrder& order);

// First node with J <= 0, or {-1, -1}.
std::array<int, 2> find_tangled(const ScalarField& J);

// First cell (lower-left node) with a non-positive corner area, or {-1, -1}. In 1D, x_{i+1} <= x_i.
std::array<int, 2> find_inverted_cell(const GridSpec& g, const Coords& x);

}  // namespace wbes
