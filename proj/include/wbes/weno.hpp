#pragma once

#include "wbes/types.hpp"

#include <cmath>

namespace wbes {

template <typename Scalar>
using Window5 = Eigen::Matrix<Scalar, 5, 1>;

inline constexpr double kWenoEps = 1e-40;
inline constexpr int kWenoPower = 2;

template <typename Scalar>
struct WenoResult {
  Scalar value;
  Vec3<Scalar> omega;
  // effective coefficients on the window nodes, value == coeff.dot(window)
  Window5<Scalar> coeff;
};

enum class Side { Left, Right };

namespace detail {

template <typename Scalar>
inline void require_finite(const Window5<Scalar>& w) {
  using std::isfinite;
  for (int k = 0; k < 5; ++k)
    if (!isfinite(w(k))) throw Error("non-finite value in reconstruction window");
}

// left-biased value at i+1/2 from f(i-2..i+2)
template <typename Scalar>
inline WenoResult<Scalar> weno_z_core(const Window5<Scalar>& f) {
  using std::abs;
  const Scalar c13 = Scalar(13) / Scalar(12);
  const Scalar b0 = c13 * (f(0) - 2 * f(1) + f(2)) * (f(0) - 2 * f(1) + f(2)) +
                    Scalar(0.25) * (f(0) - 4 * f(1) + 3 * f(2)) * (f(0) - 4 * f(1) + 3 * f(2));
  const Scalar b1 = c13 * (f(1) - 2 * f(2) + f(3)) * (f(1) - 2 * f(2) + f(3)) +
                    Scalar(0.25) * (f(1) - f(3)) * (f(1) - f(3));
  const Scalar b2 = c13 * (f(2) - 2 * f(3) + f(4)) * (f(2) - 2 * f(3) + f(4)) +
                    Scalar(0.25) * (3 * f(2) - 4 * f(3) + f(4)) * (3 * f(2) - 4 * f(3) + f(4));
  const Scalar tau = abs(b0 - b2);
  const Scalar eps = Scalar(kWenoEps);
  const Scalar r0 = tau / (b0 + eps), r1 = tau / (b1 + eps), r2 = tau / (b2 + eps);
  Vec3<Scalar> a(Scalar(0.1) * (1 + r0 * r0), Scalar(0.6) * (1 + r1 * r1), Scalar(0.3) * (1 + r2 * r2));
  WenoResult<Scalar> out;
  out.omega = a / a.sum();
  const Scalar w0 = out.omega(0) / 6, w1 = out.omega(1) / 6, w2 = out.omega(2) / 6;
  out.coeff << 2 * w0, -7 * w0 - w1, 11 * w0 + 5 * w1 + 2 * w2, 2 * w1 + 5 * w2, -w2;
  out.value = out.coeff.dot(f);
  return out;
}

}  // namespace detail

template <typename Scalar>
inline WenoResult<Scalar> weno_z_left(const Window5<Scalar>& f) {
  detail::require_finite(f);
  return detail::weno_z_core(f);
}

// f(i-1..i+3), value at i+1/2 from the right
template <typename Scalar>
inline WenoResult<Scalar> weno_z_right(const Window5<Scalar>& f) {
  detail::require_finite(f);
  const Window5<Scalar> rev = f.reverse();
  auto out = detail::weno_z_core(rev);
  out.coeff = out.coeff.reverse().eval();
  return out;
}

template <typename Scalar>
inline WenoResult<Scalar> weno_z(const Window5<Scalar>& f, Side side) {
  return side == Side::Left ? weno_z_left(f) : weno_z_right(f);
}

template <typename Scalar>
struct PairedValue {
  Scalar b, h;
  WenoResult<Scalar> weights;
};

// b drives the nonlinear weights, h reuses the same effective coefficients
template <typename Scalar>
inline PairedValue<Scalar> paired_reconstruct(const Window5<Scalar>& b, const Window5<Scalar>& h, Side side) {
  detail::require_finite(h);
  auto wb = weno_z(b, side);
  return {wb.value, wb.coeff.dot(h), wb};
}

}  // namespace wbes
