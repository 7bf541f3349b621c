#include "helpers.hpp"

#include "wbes/dissipation.hpp"

using namespace wbes;
using testutil::max_abs_diff;
using testutil::Rng;

namespace {

Stencil6<double> lake_stencil(Rng& rng, double C, bool step) {
  Stencil6<double> st;
  for (int r = 0; r < 6; ++r) {
    const double b = step ? (r >= 3 ? 4.0 : 0.0) + rng.uni(0, 0.5) : rng.uni(-2, 2);
    st[r] = conserved(C - b, 0.0, 0.0, b);
  }
  return st;
}

Stencil6<double> random_stencil(Rng& rng) {
  Stencil6<double> st;
  for (auto& u : st) u = rng.state();
  return st;
}

// straight 1D transcription without the rotation, used as an oracle for axis-aligned metrics
Vec3d hat_1d(const Stencil6<double>& st, double mt, double L, const Params& par) {
  const Vec4d Ub = 0.5 * (st[2] + st[3]);
  const double h = Ub(0), u = Ub(1) / h, v = Ub(2) / h, c = std::sqrt(par.g * h);
  Mat3d R;
  const double s = 1 / std::sqrt(2 * par.g);
  R << s, s, 0, (u + c) * s, (u - c) * s, 0, v * s, v * s, std::sqrt(h);
  const double alpha = std::max({std::abs(mt + L * (u + c)), std::abs(mt + L * (u - c)), std::abs(mt + L * u)});
  Vec3d out = Vec3d::Zero();
  Eigen::Matrix<double, 3, 6> Vt;
  for (int r = 0; r < 6; ++r) Vt.col(r) = R.transpose() * original_entropy_variables(st[r], par);
  Vec3d jw;
  for (int k = 0; k < 3; ++k) {
    Window5<double> l, rr;
    for (int q = 0; q < 5; ++q) {
      l(q) = Vt(k, q);
      rr(q) = Vt(k, q + 1);
    }
    const double jump_w = weno_z_right(rr).value - weno_z_left(l).value;
    const double jump = Vt(k, 3) - Vt(k, 2);
    jw(k) = (jump_w * jump >= 0 || jump == 0 || jump_w == 0) ? jump_w : 0.0;
  }
  out = 0.5 * alpha * R * jw;
  return out;
}

}  // namespace

TEST_CASE("spectral radius examples") {
  const Params par(1.0);
  const MetricTriple<double> id(0, 1, 0);
  CHECK(spectral_radius(conserved(1.0, 0.0, 0.0, 0.0), id, par) == doctest::Approx(1.0));
  CHECK(spectral_radius(conserved(1.0, 2.0, 0.0, 0.0), id, par) == doctest::Approx(3.0));
  CHECK(spectral_radius(conserved(1.0, 0.0, 0.0, 0.0), MetricTriple<double>(-5, 1, 0), par) == doctest::Approx(6.0));
}

TEST_CASE("sign gate convention") {
  CHECK(sign_gate(1.0, 2.0));
  CHECK(sign_gate(-1.0, -2.0));
  CHECK_FALSE(sign_gate(1.0, -2.0));
  CHECK(sign_gate(0.0, -2.0));
  CHECK(sign_gate(3.0, 0.0));
}

TEST_CASE("hat dissipation vanishes at rest and for uniform states") {
  Rng rng(1);
  const Params par(9.812);
  for (int t = 0; t < 500; ++t) {
    const double C = rng.uni(8, 12);
    const auto st = lake_stencil(rng, C, t % 2 == 0);
    const MetricTriple<double> m(rng.uni(-2, 2), rng.uni(0.5, 2), rng.uni(-1, 1));
    CHECK(dissipation_hat(st, m, par).d.cwiseAbs().maxCoeff() < 1e-13 * par.g * C);
    Stencil6<double> uni;
    uni.fill(rng.state());
    CHECK(dissipation_hat(uni, m, par).d.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("hat dissipation on a dam-break stencil") {
  const Params par(1.0);
  Stencil6<double> st;
  const double hs[6] = {10, 10, 10, 1, 1, 1};
  for (int r = 0; r < 6; ++r) st[r] = conserved(hs[r], 0.0, 0.0, 0.0);
  const MetricTriple<double> m(0, 1, 0);
  const auto d = dissipation_hat(st, m, par);
  CHECK(d.d.allFinite());
  CHECK(d.d.cwiseAbs().maxCoeff() > 0.0);
  CHECK(max_abs_diff(d.d, hat_1d(st, 0.0, 1.0, par)) < 1e-12 * d.d.cwiseAbs().maxCoeff());
  // continuity under a tiny perturbation
  Stencil6<double> sp = st;
  sp[3](0) += 1e-8;
  CHECK(max_abs_diff(dissipation_hat(sp, m, par).d, d.d) < 1e-5 * d.d.cwiseAbs().maxCoeff());
}

TEST_CASE("hat dissipation: axis-aligned rotation matches the Cartesian form") {
  Rng rng(2);
  const Params par(9.812);
  for (int t = 0; t < 500; ++t) {
    const auto st = random_stencil(rng);
    const double L = rng.uni(0.2, 3), mt = rng.uni(-2, 2);
    const auto d = dissipation_hat(st, MetricTriple<double>(mt, L, 0.0), par);
    const Vec3d ref = hat_1d(st, mt, L, par);
    CHECK(max_abs_diff(d.d, ref) < 1e-13 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("dissipation quadratic forms are non-negative") {
  Rng rng(3);
  const Params par(9.812);
  for (int t = 0; t < 100000; ++t) {
    const auto st = random_stencil(rng);
    const MetricTriple<double> m(rng.uni(-3, 3), rng.uni(-3, 3), rng.uni(-3, 3));
    if (m(1) == 0 && m(2) == 0) continue;
    const auto dh = dissipation_hat(st, m, par);
    CHECK(dh.jump.dot(dh.gate.cwiseProduct(dh.jump_weno)) >= 0.0);
    const auto dr = dissipation_ring(st, m(0), par);
    const Vec4d dV = energy_variables(st[3], par) - energy_variables(st[2], par);
    CHECK(dV.dot(dr.gate.cwiseProduct(dr.jump_weno)) >= -1e-12 * std::max(1.0, dV.cwiseAbs().maxCoeff() * dr.jump_weno.cwiseAbs().maxCoeff()));
    CHECK(dr.gate(0) == dr.gate(3));
  }
}

TEST_CASE("ring dissipation") {
  Rng rng(4);
  const Params par(9.812);
  // static mesh: nothing
  const auto st = random_stencil(rng);
  CHECK(dissipation_ring(st, 0.0, par).d.cwiseAbs().maxCoeff() == 0.0);
  // lake at rest on a moving mesh: components 1 and 4 cancel, momentum untouched
  for (int t = 0; t < 500; ++t) {
    const double C = rng.uni(8, 12);
    const auto lk = lake_stencil(rng, C, t % 2 == 0);
    const auto d = dissipation_ring(lk, rng.uni(-3, 3), par);
    CHECK(std::abs(d.d(0) + d.d(3)) < 1e-13 * C * 3);
    CHECK(d.d(1) == 0.0);
    CHECK(d.d(2) == 0.0);
  }
}

TEST_CASE("ring gate truth table") {
  // synthetic stencil: step in b, controlled sign of [V] components 1 and 4
  Stencil6<double> st;
  for (int r = 0; r < 6; ++r) st[r] = conserved(r >= 3 ? 2.0 : 1.0, 0.0, 0.0, r >= 3 ? 1.0 : 0.0);
  const double mt = 1.0;
  for (int s1 : {-1, 1})
    for (int s4 : {-1, 1}) {
      const Vec4d jV(s1 * 1.0, 0.0, 0.0, s4 * 1.0);
      const auto d = dissipation_ring(st, mt, jV);
      const bool ok1 = sign_gate(d.jump_weno(0), jV(0));
      const bool ok4 = sign_gate(d.jump_weno(3), jV(3));
      CHECK(d.gate(0) == d.gate(3));
      CHECK((d.gate(0) == 1.0) == (ok1 && ok4));
    }
  // both reconstructed jumps are positive here, so only (+,+) opens the coupled gate
  CHECK(dissipation_ring(st, mt, Vec4d(1, 0, 0, 1)).gate(0) == 1.0);
  CHECK(dissipation_ring(st, mt, Vec4d(-1, 0, 0, 1)).gate(0) == 0.0);
  CHECK(dissipation_ring(st, mt, Vec4d(1, 0, 0, -1)).gate(3) == 0.0);
  CHECK(dissipation_ring(st, mt, Vec4d(-1, 0, 0, -1)).gate(3) == 0.0);
}

TEST_CASE("ES interface flux") {
  Rng rng(5);
  const Vec4d ec = rng.state();
  CHECK(max_abs_diff(es_interface_flux(ec, Vec3d::Zero().eval(), Vec4d::Zero().eval()), ec) == 0.0);
  const Vec3d dh(1, 2, 3);
  const Vec4d dr(0.5, 0.25, 0.125, 4);
  const Vec4d f = es_interface_flux(ec, dh, dr);
  CHECK(max_abs_diff(f, Vec4d(ec(0) - 1.5, ec(1) - 2.25, ec(2) - 3.125, ec(3) - 4)) < 1e-15 * 10);
}
