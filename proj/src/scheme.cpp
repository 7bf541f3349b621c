#include "wbes/scheme.hpp"

#include <cmath>
#include <sstream>

namespace wbes {

SchemeKind parse_scheme(const std::string& s) {
  if (s == "ec" || s == "EC") return SchemeKind::EC;
  if (s == "es" || s == "ES") return SchemeKind::ES;
  throw ConfigError("unknown scheme '" + s + "' (expected ec or es)");
}

std::string to_string(SchemeKind k) { return k == SchemeKind::EC ? "ec" : "es"; }

StateField node_states(const StateField& calU, const ScalarField& J) {
  StateField U(calU.n1(), calU.n2());
  for (int j = 0; j < calU.n2(); ++j)
    for (int i = 0; i < calU.n1(); ++i) {
      const double jac = J(i, j);
      const Vec4d u = calU(i, j) / jac;
      if (!(u(0) > kDepthFloor) || !std::isfinite(u(0))) {
        std::ostringstream os;
        os << "water depth h = " << u(0) << " at node (" << i << ", " << j << ")";
        throw PositivityError(os.str(), i, j, u(0));
      }
      U(i, j) = u;
    }
  return U;
}

namespace {

constexpr int H = kHalo;
constexpr double kJumpRoundoff = 1e-13;
using Vec2d = Eigen::Vector2d;

// alpha-weighted sum of two-point values over the pairs (i-s, i-s+m); out[k] sits at k-1/2
template <class T, class Fn>
void combine_pairs(int n, const SchemeOrder& o, std::vector<T>& scratch, std::vector<T>& out, const T& zero, Fn pair) {
  out.assign(n + 1, zero);
  for (int m = 1; m <= o.p; ++m) {
    scratch.resize(n + m);
    for (int a = -m; a < n; ++a) scratch[a + m] = pair(a, a + m);
    const double am = o.alpha(m - 1);
    for (int k = 0; k <= n; ++k) {
      const int i = k - 1;
      T s = zero;
      for (int q = 0; q < m; ++q) s += scratch[i - q + m];
      out[k] += am * s;
    }
  }
}

struct Line {
  int n = 0;
  std::vector<Vec4d> U, V;
  std::vector<Primitive<double>> P;
  std::vector<Vec3d> vhat;
  std::vector<MetricTriple<double>> M;
  std::vector<double> mt;
  std::vector<Vec4d> F, Fs;
  std::vector<Vec2d> B, Bs;
  std::vector<double> vcl, Q, Qs;

  void resize(int n_) {
    n = n_;
    const size_t w = n + 2 * H;
    U.resize(w);
    V.resize(w);
    P.resize(w);
    vhat.resize(w);
    M.resize(w);
    mt.resize(w);
  }
};

void gather(Line& L, const GridSpec& g, const StateField& Ug, const MeshMetrics& met, const Params& par, int axis,
            int l) {
  const int n = g.n(axis);
  L.resize(n);
  const Boundary bc = g.bc(axis);
  for (int k = -H; k < n + H; ++k) {
    const int idx = halo_index(k, n, bc);
    const Vec4d& u = axis == 0 ? Ug(idx, l) : Ug(l, idx);
    const size_t s = k + H;
    L.U[s] = u;
    L.P[s] = {u(0), u(1) / u(0), u(2) / u(0), u(3)};
    L.V[s] = energy_variables(L.P[s], par);
    L.vhat[s] = L.V[s].head<3>();
    L.M[s] = axis == 0 ? met.triple(0, k, l) : met.triple(1, l, k);
    L.mt[s] = L.M[s](0);
  }
}

void line_fluxes(Line& L, const SchemeOptions& opt, bool want_energy) {
  const int n = L.n;
  const double g = opt.params.g;
  const auto& o = opt.order;
  combine_pairs(n, o, L.Fs, L.F, Vec4d::Zero().eval(), [&](int a, int b) {
    return detail::ec_flux_prim(L.P[a + H], L.P[b + H], L.M[a + H], L.M[b + H], g);
  });
  combine_pairs(n, o, L.Bs, L.B, Vec2d::Zero().eval(), [&](int a, int b) {
    const Vec4d s = two_point_source(L.U[a + H](3), L.U[b + H](3), L.M[a + H], L.M[b + H]);
    return Vec2d(s(1), s(2));
  });
  L.vcl.resize(n + 1);
  metric_interface_flux(L.mt.data() + H, n, o, L.vcl.data());
  if (want_energy)
    combine_pairs(n, o, L.Qs, L.Q, 0.0, [&](int a, int b) {
      return numerical_energy_flux(L.U[a + H], L.U[b + H], L.M[a + H], L.M[b + H], opt.params);
    });
}

// jumps at rounding level count as zero for the sign gates
Vec4d clean_jump(const Vec4d& a, const Vec4d& b) {
  Vec4d d = b - a;
  for (int c = 0; c < 4; ++c)
    if (std::abs(d(c)) <= kJumpRoundoff * (std::abs(a(c)) + std::abs(b(c)))) d(c) = 0.0;
  return d;
}

void line_dissipation(Line& L, const SchemeOptions& opt, RhsDiagnostics* diag, int axis, int l) {
  const int n = L.n;
  const bool energy = diag && diag->want_energy;
  for (int k = 0; k <= n; ++k) {
    // stencil nodes k-3..k+2 relative to node 0, i.e. i-2..i+3 for i = k-1
    const size_t s0 = k;
    std::array<Vec3d, 6> vh;
    for (int r = 0; r < 6; ++r) vh[r] = L.vhat[s0 + r];
    const Vec4d Ubar = interface_average(L.U[s0 + 2], L.U[s0 + 3]);
    const MetricTriple<double> Mbar = 0.5 * (L.M[s0 + 2] + L.M[s0 + 3]);
    const auto hat = dissipation_hat(vh, Ubar, Mbar, opt.params);
    L.F[k].head<3>() -= hat.d;
    if (diag) diag->min_hat_form = std::min(diag->min_hat_form, hat.jump.dot(hat.gate.cwiseProduct(hat.jump_weno)));
    if (energy) L.Q[k] -= 0.5 * hat.alpha * hat.mean.dot(hat.gate.cwiseProduct(hat.jump_weno));

    const double mt = Mbar(0);
    if (!opt.ring || mt == 0.0) continue;
    Stencil6<double> st;
    for (int r = 0; r < 6; ++r) st[r] = L.U[s0 + r];
    const auto ring = dissipation_ring(st, mt, clean_jump(L.V[s0 + 2], L.V[s0 + 3]));
    L.F[k] -= ring.d;
    if (diag) diag->min_ring_form = std::min(diag->min_ring_form, ring.jump_V.dot(ring.gate.cwiseProduct(ring.jump_weno)));
    if (energy) {
      const Vec4d Vm = 0.5 * (L.V[s0 + 2] + L.V[s0 + 3]);
      L.Q[k] -= 0.5 * std::abs(mt) * Vm.dot(ring.gate.cwiseProduct(ring.jump_weno));
    }
    if (diag && diag->want_gates && ring.gate(3) > 0.0) {
      const double bref = std::max(1.0, std::abs(L.U[s0 + 2](3)));
      if (std::abs(ring.jump_weno(3)) > 1e-10 * bref) {
        // interface k-1/2 between nodes k-1 and k; record the lower node, skipping halo-only faces
        const int lo = k - 1;
        if (lo >= 0 && lo < n - 1) diag->gates.push_back(axis == 0 ? GateRecord{0, lo, l} : GateRecord{1, l, lo});
      }
    }
  }
}

void scatter(const Line& L, const GridSpec& g, const Params& par, int axis, int l, SemiDiscreteRhs& out,
             RhsDiagnostics* diag) {
  const int n = L.n;
  const double inv = 1.0 / g.dxi(axis);
  const bool energy = diag && diag->want_energy;
  for (int k = 0; k < n; ++k) {
    const int i = axis == 0 ? k : l;
    const int j = axis == 0 ? l : k;
    Vec4d d = -inv * (L.F[k + 1] - L.F[k]);
    const Vec2d dB = L.B[k + 1] - L.B[k];
    const double gh = par.g * L.P[k + H].h * inv;
    d(1) -= gh * dB(0);
    d(2) -= gh * dB(1);
    out.dU(i, j) += d;
    out.dJ(i, j) -= inv * (L.vcl[k + 1] - L.vcl[k]);
    if (energy) diag->energy_flux_div(i, j) += inv * (L.Q[k + 1] - L.Q[k]);
  }
}

}  // namespace

SemiDiscreteRhs compute_rhs(const GridSpec& g, const StateField& U, const MeshMetrics& met, const SchemeOptions& opt,
                            RhsDiagnostics* diag) {
  if (!U.same_shape(met.J) || U.n1() != g.n1 || U.n2() != g.n2) throw ShapeError("state and metric shapes differ");
  if (opt.order.p > H) throw ShapeError("halo narrower than the flux stencil");
  SemiDiscreteRhs out{StateField(g.n1, g.n2, Vec4d::Zero()), ScalarField(g.n1, g.n2, 0.0)};
  if (diag) {
    if (diag->want_energy) diag->energy_flux_div = ScalarField(g.n1, g.n2, 0.0);
    diag->gates.clear();
  }
  Line L;
  for (int axis = 0; axis < g.active_axes(); ++axis) {
    const int lines = axis == 0 ? g.n2 : g.n1;
    for (int l = 0; l < lines; ++l) {
      gather(L, g, U, met, opt.params, axis, l);
      line_fluxes(L, opt, diag && diag->want_energy);
      if (opt.kind == SchemeKind::ES) line_dissipation(L, opt, diag, axis, l);
      scatter(L, g, opt.params, axis, l, out, diag);
    }
  }
  return out;
}

SemiDiscreteRhs ec_rhs(const GridSpec& g, const StateField& U, const MeshMetrics& met, const SchemeOptions& opt,
                       RhsDiagnostics* diag) {
  SchemeOptions o = opt;
  o.kind = SchemeKind::EC;
  return compute_rhs(g, U, met, o, diag);
}

SemiDiscreteRhs es_rhs(const GridSpec& g, const StateField& U, const MeshMetrics& met, const SchemeOptions& opt,
                       RhsDiagnostics* diag) {
  SchemeOptions o = opt;
  o.kind = SchemeKind::ES;
  return compute_rhs(g, U, met, o, diag);
}

ScalarField energy_residual(const StateField& U, const SemiDiscreteRhs& rhs, const RhsDiagnostics& diag,
                            const Params& par) {
  if (!diag.energy_flux_div.same_shape(rhs.dJ)) throw ShapeError("energy diagnostics were not collected");
  ScalarField r(U.n1(), U.n2());
  for (size_t k = 0; k < U.size(); ++k) {
    const auto e = energy_pair(U[k], par);
    r[k] = energy_variables(U[k], par).dot(rhs.dU[k]) - e.phi * rhs.dJ[k] + diag.energy_flux_div[k];
  }
  return r;
}

GridField<Vec4d> high_order_interface_flux(const GridSpec& g, const StateField& U, const MeshMetrics& met,
                                           const SchemeOrder& order, const Params& par, int axis) {
  SchemeOptions opt;
  opt.kind = SchemeKind::EC;
  opt.order = order;
  opt.params = par;
  const int n = g.n(axis);
  GridField<Vec4d> out(axis == 0 ? n + 1 : g.n1, axis == 0 ? g.n2 : n + 1);
  Line L;
  const int lines = axis == 0 ? g.n2 : g.n1;
  for (int l = 0; l < lines; ++l) {
    gather(L, g, U, met, par, axis, l);
    line_fluxes(L, opt, false);
    for (int k = 0; k <= n; ++k) (axis == 0 ? out(k, l) : out(l, k)) = L.F[k];
  }
  return out;
}

GridField<Vec4d> high_order_source_flux(const GridSpec& g, const StateField& U, const MeshMetrics& met,
                                        const SchemeOrder& order, int axis) {
  SchemeOptions opt;
  opt.order = order;
  const int n = g.n(axis);
  GridField<Vec4d> out(axis == 0 ? n + 1 : g.n1, axis == 0 ? g.n2 : n + 1);
  Line L;
  const int lines = axis == 0 ? g.n2 : g.n1;
  for (int l = 0; l < lines; ++l) {
    gather(L, g, U, met, opt.params, axis, l);
    line_fluxes(L, opt, false);
    for (int k = 0; k <= n; ++k) (axis == 0 ? out(k, l) : out(l, k)) = Vec4d(0.0, L.B[k](0), L.B[k](1), 0.0);
  }
  return out;
}

}  // namespace wbes
