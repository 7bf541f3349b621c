#pragma once

#include "wbes/state_energy.hpp"

#include <algorithm>
#include <cmath>

namespace wbes {

template <typename Scalar>
struct MeanJump {
  Scalar mean, jump;
};

template <typename Scalar>
inline MeanJump<Scalar> mean_jump(Scalar l, Scalar r) {
  return {(l + r) * Scalar(0.5), r - l};
}

template <typename Scalar>
inline Scalar mean(Scalar l, Scalar r) {
  return (l + r) * Scalar(0.5);
}

// (J dxi/dt, J dxi/dx1, J dxi/dx2) for one computational direction
template <typename Scalar>
using MetricTriple = Vec3<Scalar>;

namespace detail {

template <typename Scalar>
struct PairMeans {
  Scalar h, v1, v2, b, press;
};

template <typename Scalar>
inline PairMeans<Scalar> pair_means(const Primitive<Scalar>& L, const Primitive<Scalar>& R, Scalar g) {
  PairMeans<Scalar> m;
  m.h = mean(L.h, R.h);
  m.v1 = mean(L.v1, R.v1);
  m.v2 = mean(L.v2, R.v2);
  m.b = mean(L.b, R.b);
  const Scalar h2 = mean(L.h * L.h, R.h * R.h);
  const Scalar hb = mean(L.h * L.b, R.h * R.b);
  m.press = Scalar(0.5) * g * h2 + g * (hb - m.h * m.b);
  return m;
}

// curvilinear EC flux on primitive inputs; the scheme's hot loop calls this directly
template <typename Scalar>
inline Vec4<Scalar> ec_flux_prim(const Primitive<Scalar>& L, const Primitive<Scalar>& R,
                                 const MetricTriple<Scalar>& ML, const MetricTriple<Scalar>& MR, Scalar g) {
  const auto m = pair_means(L, R, g);
  const Scalar mt = mean(ML(0), MR(0));
  const Scalar m1 = mean(ML(1), MR(1));
  const Scalar m2 = mean(ML(2), MR(2));
  const Scalar w = mt + m1 * m.v1 + m2 * m.v2;
  const Scalar hw = m.h * w;
  return Vec4<Scalar>(hw, hw * m.v1 + m1 * m.press, hw * m.v2 + m2 * m.press, mt * m.b);
}

}  // namespace detail

template <typename Scalar>
inline Vec4<Scalar> two_point_U(const Vec4<Scalar>& UL, const Vec4<Scalar>& UR) {
  const auto L = primitive(UL);
  const auto R = primitive(UR);
  const Scalar h = mean(L.h, R.h);
  return Vec4<Scalar>(h, h * mean(L.v1, R.v1), h * mean(L.v2, R.v2), mean(L.b, R.b));
}

template <typename Scalar>
inline Vec4<Scalar> two_point_F(const Vec4<Scalar>& UL, const Vec4<Scalar>& UR, const PhysicsParams<Scalar>& par,
                                int dir) {
  const auto m = detail::pair_means(primitive(UL), primitive(UR), par.g);
  if (dir == 1) return Vec4<Scalar>(m.h * m.v1, m.h * m.v1 * m.v1 + m.press, m.h * m.v1 * m.v2, Scalar(0));
  if (dir == 2) return Vec4<Scalar>(m.h * m.v2, m.h * m.v1 * m.v2, m.h * m.v2 * m.v2 + m.press, Scalar(0));
  throw ShapeError("flux direction must be 1 or 2");
}

template <typename Scalar>
inline Vec4<Scalar> curvilinear_two_point_flux(const Vec4<Scalar>& UL, const Vec4<Scalar>& UR,
                                               const MetricTriple<Scalar>& ML, const MetricTriple<Scalar>& MR,
                                               const PhysicsParams<Scalar>& par) {
  return detail::ec_flux_prim(primitive(UL), primitive(UR), ML, MR, par.g);
}

template <typename Scalar>
inline Vec4<Scalar> two_point_source(Scalar bL, Scalar bR, const MetricTriple<Scalar>& ML,
                                     const MetricTriple<Scalar>& MR) {
  const Scalar bs = bL + bR;
  return Vec4<Scalar>(Scalar(0), Scalar(0.25) * (ML(1) + MR(1)) * bs, Scalar(0.25) * (ML(2) + MR(2)) * bs,
                      Scalar(0));
}

template <typename Scalar>
inline Scalar ec_residual_scale(const Vec4<Scalar>& UL, const Vec4<Scalar>& UR, const MetricTriple<Scalar>& ML,
                                const MetricTriple<Scalar>& MR, const PhysicsParams<Scalar>& par) {
  using std::abs;
  using std::max;
  const auto eL = energy_pair(UL, par);
  const auto eR = energy_pair(UR, par);
  const Scalar mmax = max(ML.cwiseAbs().maxCoeff(), MR.cwiseAbs().maxCoeff());
  const Scalar umax = max(UL.cwiseAbs().maxCoeff(), UR.cwiseAbs().maxCoeff());
  Scalar s = Scalar(1);
  for (Scalar v : {abs(eL.phi), abs(eR.phi), abs(eL.psi1), abs(eR.psi1), abs(eL.psi2), abs(eR.psi2),
                   abs(eL.eta), abs(eR.eta), mmax * umax})
    s = max(s, v);
  return s * max(Scalar(1), mmax);
}

// |[V]^T F - {mt}[phi] - sum {m_k}[psi_k] + sum g/4 (m_kL+m_kR)[h v_k](bL+bR)|
template <typename Scalar>
inline Scalar ec_condition_residual(const Vec4<Scalar>& UL, const Vec4<Scalar>& UR, const MetricTriple<Scalar>& ML,
                                    const MetricTriple<Scalar>& MR, const PhysicsParams<Scalar>& par) {
  using std::abs;
  const Vec4<Scalar> F = curvilinear_two_point_flux(UL, UR, ML, MR, par);
  const Vec4<Scalar> dV = energy_variables(UR, par) - energy_variables(UL, par);
  const auto eL = energy_pair(UL, par);
  const auto eR = energy_pair(UR, par);
  const Scalar bs = UL(3) + UR(3);
  Scalar rhs = mean(ML(0), MR(0)) * (eR.phi - eL.phi) + mean(ML(1), MR(1)) * (eR.psi1 - eL.psi1) +
               mean(ML(2), MR(2)) * (eR.psi2 - eL.psi2);
  rhs -= par.g / Scalar(4) * (ML(1) + MR(1)) * (UR(1) - UL(1)) * bs;
  rhs -= par.g / Scalar(4) * (ML(2) + MR(2)) * (UR(2) - UL(2)) * bs;
  return abs(dV.dot(F) - rhs);
}

// energy flux paired with curvilinear_two_point_flux; mesh-velocity term is 1/4 (mtL+mtR)(phiL+phiR)
template <typename Scalar>
inline Scalar numerical_energy_flux(const Vec4<Scalar>& UL, const Vec4<Scalar>& UR, const MetricTriple<Scalar>& ML,
                                    const MetricTriple<Scalar>& MR, const PhysicsParams<Scalar>& par) {
  const Vec4<Scalar> F = curvilinear_two_point_flux(UL, UR, ML, MR, par);
  const Vec4<Scalar> Vm = Scalar(0.5) * (energy_variables(UL, par) + energy_variables(UR, par));
  const auto eL = energy_pair(UL, par);
  const auto eR = energy_pair(UR, par);
  const Scalar bs = UL(3) + UR(3);
  Scalar q = Vm.dot(F);
  q -= Scalar(0.25) * (ML(0) + MR(0)) * (eL.phi + eR.phi);
  q -= Scalar(0.25) * (ML(1) + MR(1)) * (eL.psi1 + eR.psi1);
  q -= Scalar(0.25) * (ML(2) + MR(2)) * (eL.psi2 + eR.psi2);
  q += par.g / Scalar(8) * (ML(1) + MR(1)) * (UL(1) + UR(1)) * bs;
  q += par.g / Scalar(8) * (ML(2) + MR(2)) * (UL(2) + UR(2)) * bs;
  return q;
}

}  // namespace wbes
