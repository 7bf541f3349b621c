#include "wbes/moving_mesh.hpp"

#include <algorithm>
#include <cmath>

namespace wbes {

MonitorVar parse_monitor_var(const std::string& s) {
  if (s == "h" || s == "depth") return MonitorVar::Depth;
  if (s == "h+b" || s == "surface") return MonitorVar::Surface;
  if (s == "b" || s == "bottom") return MonitorVar::Bottom;
  throw ConfigError("unknown monitor variable '" + s + "'");
}

std::string to_string(MonitorVar v) {
  switch (v) {
    case MonitorVar::Depth: return "h";
    case MonitorVar::Surface: return "h+b";
    case MonitorVar::Bottom: return "b";
  }
  return "?";
}

void MonitorParams::validate() const {
  for (const auto& t : terms)
    if (!(t.theta > 0.0) || !(t.power > 0.0)) throw ConfigError("monitor coefficients must be positive");
  if (smoothing_passes < 0) throw ConfigError("smoothing passes must be non-negative");
  if (jacobi_iterations < 1) throw ConfigError("at least one Jacobi iteration is required");
}

ScalarField monitor_variable(const StateField& U, MonitorVar v) {
  ScalarField s(U.n1(), U.n2());
  for (size_t k = 0; k < U.size(); ++k) {
    switch (v) {
      case MonitorVar::Depth: s[k] = U[k](0); break;
      case MonitorVar::Surface: s[k] = U[k](0) + U[k](3); break;
      case MonitorVar::Bottom: s[k] = U[k](3); break;
    }
  }
  return s;
}

namespace {

double at(const GridSpec& g, const ScalarField& f, int i, int j) {
  return f(halo_index(i, g.n1, g.bc1), halo_index(j, g.n2, g.two_d() ? g.bc2 : Boundary::Outflow));
}

}  // namespace

ScalarField monitor(const GridSpec& g, const StateField& U, const MonitorParams& mp) {
  ScalarField w(g.n1, g.n2, 1.0);
  const double d1 = g.dxi(0), d2 = g.dxi(1);
  for (const auto& term : mp.terms) {
    const ScalarField s = monitor_variable(U, term.var);
    ScalarField q(g.n1, g.n2, 0.0);
    double qmax = 0.0;
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) {
        double v;
        if (term.laplacian) {
          v = (at(g, s, i + 1, j) - 2 * s(i, j) + at(g, s, i - 1, j)) / (d1 * d1);
          if (g.two_d()) v += (at(g, s, i, j + 1) - 2 * s(i, j) + at(g, s, i, j - 1)) / (d2 * d2);
          v = std::abs(v);
        } else {
          const double gx = (at(g, s, i + 1, j) - at(g, s, i - 1, j)) / (2 * d1);
          const double gy = g.two_d() ? (at(g, s, i, j + 1) - at(g, s, i, j - 1)) / (2 * d2) : 0.0;
          v = std::sqrt(gx * gx + gy * gy);
        }
        q(i, j) = v;
        qmax = std::max(qmax, v);
      }
    if (qmax == 0.0) continue;
    for (size_t k = 0; k < w.size(); ++k) w[k] += term.theta * std::pow(q[k] / qmax, term.power);
  }
  for (size_t k = 0; k < w.size(); ++k) w[k] = std::sqrt(w[k]);
  return w;
}

ScalarField smooth_monitor(const GridSpec& g, const ScalarField& w, int passes) {
  ScalarField cur = w, next(w.n1(), w.n2());
  for (int p = 0; p < passes; ++p) {
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) {
        double s = 0.0;
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di)
            s += std::ldexp(at(g, cur, i + di, j + dj), -(std::abs(di) + std::abs(dj) + 2));
        next(i, j) = s;
      }
    std::swap(cur, next);
  }
  return cur;
}

namespace {

// coordinate c of the neighbour (i,j) shifted by k along axis; periodic images carry the period offset
double neighbour_coord(const GridSpec& g, const Coords& x, int c, int i, int j, int axis, int k) {
  const int n = g.n(axis);
  int idx = (axis == 0 ? i : j) + k;
  double shift = 0.0;
  if (g.bc(axis) == Boundary::Periodic) {
    if (idx < 0) {
      idx += n;
      if (c == axis) shift = -g.len(axis);
    } else if (idx >= n) {
      idx -= n;
      if (c == axis) shift = g.len(axis);
    }
  }
  return (axis == 0 ? x[c](idx, j) : x[c](i, idx)) + shift;
}

bool on_outflow_edge(const GridSpec& g, int axis, int i, int j) {
  if (g.bc(axis) != Boundary::Outflow) return false;
  const int k = axis == 0 ? i : j;
  return k == 0 || k == g.n(axis) - 1;
}

}  // namespace

Coords jacobi_sweep(const GridSpec& g, const Coords& x, const ScalarField& w) {
  Coords out = x;
  const int axes = g.active_axes();
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) {
      const double wc = w(i, j);
      for (int c = 0; c < axes; ++c) {
        if (on_outflow_edge(g, c, i, j)) continue;
        double num = 0.0, den = 0.0;
        for (int a = 0; a < axes; ++a) {
          if (on_outflow_edge(g, a, i, j)) continue;
          const double inv = 1.0 / (g.dxi(a) * g.dxi(a));
          const double wp = a == 0 ? at(g, w, i + 1, j) : at(g, w, i, j + 1);
          const double wm = a == 0 ? at(g, w, i - 1, j) : at(g, w, i, j - 1);
          num += inv * ((wc + wp) * neighbour_coord(g, x, c, i, j, a, 1) +
                        (wc + wm) * neighbour_coord(g, x, c, i, j, a, -1));
          den += inv * (2 * wc + wp + wm);
        }
        if (den > 0.0) out[c](i, j) = num / den;
      }
    }
  return out;
}

MeshMove limit_and_move(const GridSpec& g, const Coords& x_old, const Coords& x_candidate) {
  const int axes = g.active_axes();
  double dtau = 1.0;
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i)
      for (int a = 0; a < axes; ++a) {
        const double d = x_candidate[a](i, j) - x_old[a](i, j);
        if (d == 0.0) continue;
        const int k = a == 0 ? i : j;
        double gap;
        if (d < 0) {
          if (g.bc(a) == Boundary::Outflow && k == 0) continue;
          gap = x_old[a](i, j) - neighbour_coord(g, x_old, a, i, j, a, -1);
          dtau = std::min(dtau, -gap / (2 * d));
        } else {
          if (g.bc(a) == Boundary::Outflow && k == g.n(a) - 1) continue;
          gap = neighbour_coord(g, x_old, a, i, j, a, 1) - x_old[a](i, j);
          dtau = std::min(dtau, gap / (2 * d));
        }
      }
  dtau = std::max(dtau, 0.0);
  MeshMove mv;
  mv.dtau = dtau;
  mv.delta = Coords{ScalarField(g.n1, g.n2, 0.0), ScalarField(g.n1, g.n2, 0.0)};
  for (int c = 0; c < axes; ++c)
    for (size_t k = 0; k < mv.delta[c].size(); ++k) mv.delta[c][k] = dtau * (x_candidate[c][k] - x_old[c][k]);
  return mv;
}

Coords mesh_velocity(const MeshMove& move, double dt) {
  if (!(dt > 0.0)) throw Error("mesh velocity needs a positive time step");
  Coords v = move.delta;
  for (int c = 0; c < 2; ++c)
    for (size_t k = 0; k < v[c].size(); ++k) v[c][k] /= dt;
  return v;
}

MeshMove adapt_mesh(const GridSpec& g, const Coords& x, const StateField& U, const MonitorParams& mp) {
  const ScalarField w = smooth_monitor(g, monitor(g, U, mp), mp.smoothing_passes);
  Coords cur = x;
  for (int it = 0; it < mp.jacobi_iterations; ++it) cur = jacobi_sweep(g, cur, w);
  return limit_and_move(g, x, cur);
}

Coords add_scaled(const Coords& x, const Coords& d, double s) {
  Coords out = x;
  for (int c = 0; c < 2; ++c)
    for (size_t k = 0; k < out[c].size(); ++k) out[c][k] += s * d[c][k];
  return out;
}

}  // namespace wbes
