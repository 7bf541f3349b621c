#pragma once

#include "wbes/ec_flux.hpp"
#include "wbes/state_energy.hpp"
#include "wbes/weno.hpp"

#include <array>
#include <cmath>

namespace wbes {

// six nodes i-2..i+3 around the interface i+1/2
template <typename Scalar>
using Stencil6 = std::array<Vec4<Scalar>, 6>;

template <typename Scalar>
inline int sign_of(Scalar x) {
  return (x > Scalar(0)) - (x < Scalar(0));
}

inline constexpr double kGateRoundoff = 1e-13;

template <typename Scalar>
inline bool sign_gate(Scalar reconstructed_jump, Scalar jump) {
  return sign_of(reconstructed_jump) * sign_of(jump) >= 0;
}

template <typename Scalar>
inline Scalar spectral_radius(const Vec4<Scalar>& U, const MetricTriple<Scalar>& M, const PhysicsParams<Scalar>& par) {
  using std::abs;
  using std::max;
  using std::sqrt;
  const auto p = primitive(U);
  const Scalar L = sqrt(M(1) * M(1) + M(2) * M(2));
  const Scalar vn = M(1) * p.v1 + M(2) * p.v2;
  const Scalar cL = sqrt(par.g * p.h) * L;
  return max(abs(M(0) + vn), max(abs(M(0) + vn + cL), abs(M(0) + vn - cL)));
}

template <typename Scalar>
struct HatDissipation {
  Vec3<Scalar> d;
  Vec3<Scalar> gate;
  Vec3<Scalar> jump_weno;  // [V~]^WENO
  Vec3<Scalar> jump;       // [V~]
  Vec3<Scalar> mean;       // {V~}
  Scalar alpha;
};

template <typename Scalar>
struct RingDissipation {
  Vec4<Scalar> d;
  Vec4<Scalar> gate;
  Vec4<Scalar> jump_weno;  // [U]^WENO
  Vec4<Scalar> jump_V;     // [V]
};

template <typename Scalar>
inline Vec4<Scalar> interface_average(const Vec4<Scalar>& UL, const Vec4<Scalar>& UR) {
  return Scalar(0.5) * (UL + UR);
}

// vhat: original entropy variables on the six stencil nodes; Ubar: interface state
template <typename Scalar>
inline HatDissipation<Scalar> dissipation_hat(const std::array<Vec3<Scalar>, 6>& vhat, const Vec4<Scalar>& Ubar,
                                              const MetricTriple<Scalar>& M, const PhysicsParams<Scalar>& par) {
  using std::abs;
  using std::max;
  using std::sqrt;
  const Mat3<Scalar> T = rotation_matrix(M(1), M(2));
  const Vec3<Scalar> TU = T * Ubar.template head<3>();
  require_depth(TU(0));
  const auto es = eigen_scaling(TU(0), TU(1) / TU(0), TU(2) / TU(0), par);
  const Scalar L = sqrt(M(1) * M(1) + M(2) * M(2));
  HatDissipation<Scalar> out;
  out.alpha = max(abs(M(0) + L * es.lambda(0)), max(abs(M(0) + L * es.lambda(1)), abs(M(0) + L * es.lambda(2))));
  const Mat3<Scalar> P = es.R.transpose() * T;
  Eigen::Matrix<Scalar, 3, 6> Vt;
  for (int r = 0; r < 6; ++r) Vt.col(r) = P * vhat[r];
  const Mat3<Scalar> Pabs = P.cwiseAbs();
  const Vec3<Scalar> scale = Pabs * (vhat[2].cwiseAbs() + vhat[3].cwiseAbs());
  for (int c = 0; c < 3; ++c) {
    const Window5<Scalar> wl = Vt.row(c).template segment<5>(0).transpose();
    const Window5<Scalar> wr = Vt.row(c).template segment<5>(1).transpose();
    out.jump_weno(c) = weno_z_right(wr).value - weno_z_left(wl).value;
    out.jump(c) = Vt(c, 3) - Vt(c, 2);
    // rounding-level jumps count as zero
    if (abs(out.jump(c)) <= Scalar(kGateRoundoff) * scale(c)) out.jump(c) = Scalar(0);
    out.mean(c) = Scalar(0.5) * (Vt(c, 3) + Vt(c, 2));
    out.gate(c) = sign_gate(out.jump_weno(c), out.jump(c)) ? Scalar(1) : Scalar(0);
  }
  out.d = Scalar(0.5) * out.alpha * (T.transpose() * (es.R * out.gate.cwiseProduct(out.jump_weno)));
  return out;
}

template <typename Scalar>
inline HatDissipation<Scalar> dissipation_hat(const Stencil6<Scalar>& st, const MetricTriple<Scalar>& M,
                                              const PhysicsParams<Scalar>& par) {
  std::array<Vec3<Scalar>, 6> vhat;
  for (int r = 0; r < 6; ++r) vhat[r] = original_entropy_variables(st[r], par);
  return dissipation_hat(vhat, interface_average(st[2], st[3]), M, par);
}

// jump_V: V(U_{i+1}) - V(U_i)
template <typename Scalar>
inline RingDissipation<Scalar> dissipation_ring(const Stencil6<Scalar>& st, Scalar mt, const Vec4<Scalar>& jump_V) {
  using std::abs;
  RingDissipation<Scalar> out;
  out.jump_V = jump_V;
  Window5<Scalar> bl, br, hl, hr;
  for (int r = 0; r < 5; ++r) {
    bl(r) = st[r](3);
    br(r) = st[r + 1](3);
    hl(r) = st[r](0);
    hr(r) = st[r + 1](0);
  }
  const auto pl = paired_reconstruct(bl, hl, Side::Left);
  const auto pr = paired_reconstruct(br, hr, Side::Right);
  out.jump_weno(0) = pr.h - pl.h;
  out.jump_weno(3) = pr.b - pl.b;
  for (int c = 1; c <= 2; ++c) {
    Window5<Scalar> wl, wr;
    for (int r = 0; r < 5; ++r) {
      wl(r) = st[r](c);
      wr(r) = st[r + 1](c);
    }
    out.jump_weno(c) = weno_z_right(wr).value - weno_z_left(wl).value;
  }
  const bool g14 = sign_gate(out.jump_weno(0), out.jump_V(0)) && sign_gate(out.jump_weno(3), out.jump_V(3));
  out.gate(0) = out.gate(3) = g14 ? Scalar(1) : Scalar(0);
  for (int c = 1; c <= 2; ++c) out.gate(c) = sign_gate(out.jump_weno(c), out.jump_V(c)) ? Scalar(1) : Scalar(0);
  out.d = Scalar(0.5) * abs(mt) * out.gate.cwiseProduct(out.jump_weno);
  return out;
}

template <typename Scalar>
inline RingDissipation<Scalar> dissipation_ring(const Stencil6<Scalar>& st, Scalar mt, const PhysicsParams<Scalar>& par) {
  return dissipation_ring(st, mt, Vec4<Scalar>(energy_variables(st[3], par) - energy_variables(st[2], par)));
}

template <typename Scalar>
inline Vec4<Scalar> es_interface_flux(const Vec4<Scalar>& ec, const Vec3<Scalar>& d_hat, const Vec4<Scalar>& d_ring) {
  Vec4<Scalar> f = ec - d_ring;
  f.template head<3>() -= d_hat;
  return f;
}

}  // namespace wbes
