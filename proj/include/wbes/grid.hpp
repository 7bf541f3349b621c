#pragma once

#include "wbes/types.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <string>
#include <vector>

namespace wbes {

enum class Boundary { Periodic, Outflow };

Boundary parse_boundary(const std::string& s);
std::string to_string(Boundary b);

// Uniform computational grid; the computational box equals the initial physical box.
struct GridSpec {
  int n1 = 1, n2 = 1;
  double a1 = 0, a2 = 0;
  double len1 = 1, len2 = 1;
  Boundary bc1 = Boundary::Outflow, bc2 = Boundary::Outflow;

  bool two_d() const { return n2 > 1; }
  int n(int axis) const { return axis == 0 ? n1 : n2; }
  Boundary bc(int axis) const { return axis == 0 ? bc1 : bc2; }
  double len(int axis) const { return axis == 0 ? len1 : len2; }
  // periodic axes hold N distinct nodes, outflow axes include both end points
  double dxi(int axis) const;
  double xi(int axis, int k) const { return (axis == 0 ? a1 : a2) + k * dxi(axis); }
  int active_axes() const { return two_d() ? 2 : 1; }
  void validate(int min_nodes) const;
};

template <typename T>
class GridField {
 public:
  GridField() = default;
  GridField(int n1, int n2, const T& init = T()) : n1_(n1), n2_(n2), d_(static_cast<size_t>(n1) * n2, init) {}

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  size_t size() const { return d_.size(); }
  T& operator()(int i, int j) { return d_[static_cast<size_t>(i) + static_cast<size_t>(n1_) * j]; }
  const T& operator()(int i, int j) const { return d_[static_cast<size_t>(i) + static_cast<size_t>(n1_) * j]; }
  T& operator[](size_t k) { return d_[k]; }
  const T& operator[](size_t k) const { return d_[k]; }
  std::vector<T>& data() { return d_; }
  const std::vector<T>& data() const { return d_; }
  template <class O>
  bool same_shape(const GridField<O>& o) const { return n1_ == o.n1() && n2_ == o.n2(); }
  void fill(const T& v) { std::fill(d_.begin(), d_.end(), v); }

 private:
  int n1_ = 0, n2_ = 0;
  std::vector<T> d_;
};

using ScalarField = GridField<double>;
using StateField = GridField<Vec4d>;

struct Coords {
  ScalarField x1, x2;
  const ScalarField& operator[](int c) const { return c == 0 ? x1 : x2; }
  ScalarField& operator[](int c) { return c == 0 ? x1 : x2; }
};

Coords uniform_coords(const GridSpec& g);

// Scalar array with a halo of p1 (axis 1) and p2 (axis 2) nodes, indexed by real node indices.
struct Padded {
  Eigen::ArrayXXd a;
  int p1 = 0, p2 = 0;
  Padded() = default;
  Padded(int n1, int n2, int p1_, int p2_) : a(n1 + 2 * p1_, n2 + 2 * p2_), p1(p1_), p2(p2_) { a.setZero(); }
  double& operator()(int i, int j) { return a(i + p1, j + p2); }
  double operator()(int i, int j) const { return a(i + p1, j + p2); }
};

// Extend coordinates / mesh velocities into a halo. Periodic axes wrap (coordinates gain one period per wrap);
// outflow axes mirror across the fixed face half a cell beyond the boundary node, so ghost nodes next to
// a wall never move.
Padded pad_coordinate(const ScalarField& x, const GridSpec& g, int component, int pad);
Padded pad_velocity(const ScalarField& v, const GridSpec& g, int component, int pad);

// periodic wrap or clamp of a node index along one axis
inline int halo_index(int k, int n, Boundary bc) {
  if (bc == Boundary::Periodic) return ((k % n) + n) % n;
  return k < 0 ? 0 : (k >= n ? n - 1 : k);
}

}  // namespace wbes
