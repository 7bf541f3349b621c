#pragma once

#include "wbes/types.hpp"

#include <cmath>
#include <sstream>

namespace wbes {

template <typename Scalar>
struct PhysicsParams {
  Scalar g;
  Scalar gamma;

  explicit PhysicsParams(Scalar g_ = Scalar(1), Scalar gamma_ = Scalar(1)) : g(g_), gamma(gamma_) {
    using std::abs;
    if (!(g > Scalar(0))) throw ConfigError("gravity must be positive");
    if (abs(gamma - Scalar(0.5)) <= Scalar(1e-12))
      throw ConfigError("gamma = 1/2 makes the energy variables degenerate");
  }
};

using Params = PhysicsParams<double>;

template <typename Scalar>
struct Primitive {
  Scalar h, v1, v2, b;
};

template <typename Scalar>
struct EnergyQuantities {
  Scalar eta, q1, q2, phi, psi1, psi2;
};

template <typename Scalar>
inline void require_depth(Scalar h) {
  if (!(h > Scalar(kDepthFloor))) {
    std::ostringstream os;
    os << "non-positive water depth h = " << h;
    throw PositivityError(os.str(), -1, -1, static_cast<double>(h));
  }
}

template <typename Scalar>
inline Vec4<Scalar> conserved(const Primitive<Scalar>& p) {
  require_depth(p.h);
  return Vec4<Scalar>(p.h, p.h * p.v1, p.h * p.v2, p.b);
}

template <typename Scalar>
inline Vec4<Scalar> conserved(Scalar h, Scalar v1, Scalar v2, Scalar b) {
  return conserved(Primitive<Scalar>{h, v1, v2, b});
}

template <typename Scalar>
inline Primitive<Scalar> primitive(const Vec4<Scalar>& U) {
  require_depth(U(0));
  return {U(0), U(1) / U(0), U(2) / U(0), U(3)};
}

template <typename Scalar>
inline Vec4<Scalar> physical_flux(const Vec4<Scalar>& U, const PhysicsParams<Scalar>& par, int dir) {
  const auto p = primitive(U);
  const Scalar pres = Scalar(0.5) * par.g * p.h * p.h;
  if (dir == 1) return Vec4<Scalar>(U(1), U(1) * p.v1 + pres, U(1) * p.v2, Scalar(0));
  if (dir == 2) return Vec4<Scalar>(U(2), U(2) * p.v1, U(2) * p.v2 + pres, Scalar(0));
  throw ShapeError("flux direction must be 1 or 2");
}

template <typename Scalar>
inline EnergyQuantities<Scalar> energy_pair(const Vec4<Scalar>& U, const PhysicsParams<Scalar>& par) {
  const auto p = primitive(U);
  const Scalar g = par.g;
  const Scalar ke = Scalar(0.5) * p.h * (p.v1 * p.v1 + p.v2 * p.v2);
  EnergyQuantities<Scalar> e;
  e.phi = Scalar(0.5) * g * p.h * p.h + g * p.h * p.b + par.gamma * g * p.b * p.b;
  e.eta = ke + e.phi;
  const Scalar flux_coef = ke + g * p.h * p.h + g * p.h * p.b;
  e.q1 = flux_coef * p.v1;
  e.q2 = flux_coef * p.v2;
  const Scalar psi_coef = Scalar(0.5) * g * p.h * p.h + g * p.h * p.b;
  e.psi1 = psi_coef * p.v1;
  e.psi2 = psi_coef * p.v2;
  return e;
}

template <typename Scalar>
inline Scalar energy(const Vec4<Scalar>& U, const PhysicsParams<Scalar>& par) {
  return energy_pair(U, par).eta;
}

template <typename Scalar>
inline Vec4<Scalar> energy_variables(const Primitive<Scalar>& p, const PhysicsParams<Scalar>& par) {
  const Scalar g = par.g;
  return Vec4<Scalar>(g * (p.h + p.b) - Scalar(0.5) * (p.v1 * p.v1 + p.v2 * p.v2), p.v1, p.v2,
                      g * p.h + Scalar(2) * par.gamma * g * p.b);
}

template <typename Scalar>
inline Vec4<Scalar> energy_variables(const Vec4<Scalar>& U, const PhysicsParams<Scalar>& par) {
  return energy_variables(primitive(U), par);
}

template <typename Scalar>
inline Vec3<Scalar> original_entropy_variables(const Vec4<Scalar>& U, const PhysicsParams<Scalar>& par) {
  return energy_variables(U, par).template head<3>();
}

// (h, hv1, hv2) of the unmodified system
template <typename Scalar>
inline Vec3<Scalar> original_conserved(const Vec4<Scalar>& U) {
  return U.template head<3>();
}

template <typename Scalar>
struct EigenScaling {
  Mat3<Scalar> R;
  Vec3<Scalar> lambda;
};

template <typename Scalar>
inline EigenScaling<Scalar> eigen_scaling(Scalar h, Scalar v1, Scalar v2, const PhysicsParams<Scalar>& par) {
  using std::sqrt;
  require_depth(h);
  const Scalar c = sqrt(par.g * h);
  const Scalar s = Scalar(1) / sqrt(Scalar(2) * par.g);
  const Scalar sh = sqrt(h);
  EigenScaling<Scalar> out;
  out.R << s, s, Scalar(0),
      (v1 + c) * s, (v1 - c) * s, Scalar(0),
      v2 * s, v2 * s, sh;
  out.lambda << v1 + c, v1 - c, v1;
  return out;
}

template <typename Scalar>
inline EigenScaling<Scalar> eigen_scaling(const Vec4<Scalar>& U, const PhysicsParams<Scalar>& par) {
  const auto p = primitive(U);
  return eigen_scaling(p.h, p.v1, p.v2, par);
}

template <typename Scalar>
inline Mat3<Scalar> rotation_matrix(Scalar m1, Scalar m2) {
  using std::hypot;
  if (m1 == Scalar(0) && m2 == Scalar(0))
    throw DegenerateMetricError("rotation requested for a zero metric vector");
  // cos/sin of atan2(m2, m1)
  const Scalar L = hypot(m1, m2);
  const Scalar c = m1 / L, s = m2 / L;
  Mat3<Scalar> T;
  T << Scalar(1), Scalar(0), Scalar(0),
      Scalar(0), c, s,
      Scalar(0), -s, c;
  return T;
}

}  // namespace wbes
