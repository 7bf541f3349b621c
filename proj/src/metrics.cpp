#include "wbes/metrics.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace wbes {

Eigen::VectorXd alpha_coefficients(int p) {
  if (p < 1 || p > 3) throw ConfigError("scheme half-order p must be 1, 2 or 3");
  Eigen::MatrixXd A(p, p);
  for (int s = 1; s <= p; ++s)
    for (int m = 1; m <= p; ++m) A(s - 1, m - 1) = std::pow(double(m), 2 * s - 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p);
  rhs(0) = 1.0;
  return A.fullPivLu().solve(rhs);
}

namespace {

// sum_m alpha_m (f(+m) - f(-m)) / (2 dxi) along one axis of a padded array
double central(const Padded& f, int axis, int i, int j, const SchemeOrder& o, double dxi) {
  double s = 0.0;
  for (int m = 1; m <= o.p; ++m) {
    const double d = axis == 0 ? f(i + m, j) - f(i - m, j) : f(i, j + m) - f(i, j - m);
    s += o.alpha(m - 1) * d;
  }
  return s / (2.0 * dxi);
}

}  // namespace

MeshMetrics spatial_metrics(const GridSpec& g, const Coords& x, const SchemeOrder& order) {
  const int H = kHalo;
  const int P = H + order.p;
  const int h2 = g.two_d() ? H : 0;
  MeshMetrics met;
  met.grid = g;
  met.m11 = Padded(g.n1, g.n2, H, h2);
  met.m12 = met.m11;
  met.m21 = met.m11;
  met.m22 = met.m11;
  met.mt1 = met.m11;
  met.mt2 = met.m11;
  const Padded X1 = pad_coordinate(x.x1, g, 0, P);
  const double d1 = g.dxi(0);
  if (g.two_d()) {
    const Padded X2 = pad_coordinate(x.x2, g, 1, P);
    const double d2 = g.dxi(1);
    for (int j = -H; j < g.n2 + H; ++j)
      for (int i = -H; i < g.n1 + H; ++i) {
        met.m11(i, j) = central(X2, 1, i, j, order, d2);
        met.m12(i, j) = -central(X1, 1, i, j, order, d2);
        met.m21(i, j) = -central(X2, 0, i, j, order, d1);
        met.m22(i, j) = central(X1, 0, i, j, order, d1);
      }
  } else {
    for (int i = -H; i < g.n1 + H; ++i) {
      met.m11(i, 0) = 1.0;
      met.m12(i, 0) = 0.0;
      met.m21(i, 0) = 0.0;
      met.m22(i, 0) = central(X1, 0, i, 0, order, d1);
    }
  }
  met.J = ScalarField(g.n1, g.n2);
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i)
      met.J(i, j) = met.m11(i, j) * met.m22(i, j) - met.m12(i, j) * met.m21(i, j);
  return met;
}

void temporal_metrics(MeshMetrics& met, const Coords* xdot) {
  if (!xdot) {
    met.mt1.a.setZero();
    met.mt2.a.setZero();
    return;
  }
  const GridSpec& g = met.grid;
  if (!xdot->x1.same_shape(met.J) || !xdot->x2.same_shape(met.J))
    throw ShapeError("mesh velocity shape does not match the grid");
  const Padded v1 = pad_velocity(xdot->x1, g, 0, kHalo);
  const Padded v2 = pad_velocity(xdot->x2, g, 1, kHalo);
  met.mt1.a = -v1.a * met.m11.a - v2.a * met.m12.a;
  met.mt2.a = -v1.a * met.m21.a - v2.a * met.m22.a;
}

MeshMetrics mesh_metrics(const GridSpec& g, const Coords& x, const Coords* xdot, const SchemeOrder& order) {
  MeshMetrics met = spatial_metrics(g, x, order);
  temporal_metrics(met, xdot);
  return met;
}

void metric_interface_flux(const double* a, int n, const SchemeOrder& order, double* out) {
  for (int k = 0; k <= n; ++k) {
    const int i = k - 1;
    double s = 0.0;
    for (int m = 1; m <= order.p; ++m) {
      double inner = 0.0;
      for (int q = 0; q < m; ++q) inner += 0.5 * (a[i - q] + a[i - q + m]);
      s += order.alpha(m - 1) * inner;
    }
    out[k] = s;
  }
}

std::vector<double> metric_interface_flux(const std::vector<double>& padded, int halo, const SchemeOrder& order) {
  if (halo < order.p) throw ShapeError("halo narrower than the flux stencil");
  const int n = static_cast<int>(padded.size()) - 2 * halo;
  std::vector<double> out(n + 1);
  metric_interface_flux(padded.data() + halo, n, order, out.data());
  return out;
}

namespace {

void add_flux_divergence(const Padded& f, const GridSpec& g, int axis, const SchemeOrder& order, ScalarField& res) {
  const int n = g.n(axis);
  const int lines = axis == 0 ? g.n2 : g.n1;
  const double inv = 1.0 / g.dxi(axis);
  std::vector<double> line(n + 2 * kHalo), flux(n + 1);
  for (int l = 0; l < lines; ++l) {
    for (int k = -kHalo; k < n + kHalo; ++k) line[k + kHalo] = axis == 0 ? f(k, l) : f(l, k);
    metric_interface_flux(line.data() + kHalo, n, order, flux.data());
    for (int k = 0; k < n; ++k) {
      double& r = axis == 0 ? res(k, l) : res(l, k);
      r += inv * (flux[k + 1] - flux[k]);
    }
  }
}

}  // namespace

std::array<ScalarField, 2> scl_residual(const MeshMetrics& met, const SchemeOrder& order) {
  const GridSpec& g = met.grid;
  std::array<ScalarField, 2> res{ScalarField(g.n1, g.n2, 0.0), ScalarField(g.n1, g.n2, 0.0)};
  add_flux_divergence(met.m11, g, 0, order, res[0]);
  add_flux_divergence(met.m12, g, 0, order, res[1]);
  if (g.two_d()) {
    add_flux_divergence(met.m21, g, 1, order, res[0]);
    add_flux_divergence(met.m22, g, 1, order, res[1]);
  }
  return res;
}

ScalarField coordinate_jacobian(const GridSpec& g, const Coords& x, const SchemeOrder& order) {
  return spatial_metrics(g, x, order).J;
}

std::array<int, 2> find_tangled(const ScalarField& J) {
  for (int j = 0; j < J.n2(); ++j)
    for (int i = 0; i < J.n1(); ++i)
      if (!(J(i, j) > 0.0)) return {i, j};
  return {-1, -1};
}

std::array<int, 2> find_inverted_cell(const GridSpec& g, const Coords& x) {
  const Padded a = pad_coordinate(x.x1, g, 0, 1);
  const Padded b = pad_coordinate(x.x2, g, 1, 1);
  const int c1 = g.bc1 == Boundary::Periodic ? g.n1 : g.n1 - 1;
  if (!g.two_d()) {
    for (int i = 0; i < c1; ++i)
      if (!(a(i + 1, 0) > a(i, 0))) return {i, 0};
    return {-1, -1};
  }
  const int c2 = g.bc2 == Boundary::Periodic ? g.n2 : g.n2 - 1;
  for (int j = 0; j < c2; ++j)
    for (int i = 0; i < c1; ++i) {
      const int ci[4] = {i, i + 1, i + 1, i}, cj[4] = {j, j, j + 1, j + 1};
      for (int k = 0; k < 4; ++k) {
        const int n = (k + 1) % 4, m = (k + 3) % 4;
        const double ex = a(ci[n], cj[n]) - a(ci[k], cj[k]), ey = b(ci[n], cj[n]) - b(ci[k], cj[k]);
        const double fx = a(ci[m], cj[m]) - a(ci[k], cj[k]), fy = b(ci[m], cj[m]) - b(ci[k], cj[k]);
        if (!(ex * fy - ey * fx > 0.0)) return {i, j};
      }
    }
  return {-1, -1};
}

}  // namespace wbes
