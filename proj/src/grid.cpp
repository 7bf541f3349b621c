#include "wbes/grid.hpp"

#include <algorithm>
#include <sstream>

namespace wbes {

Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "outflow") return Boundary::Outflow;
  throw ConfigError("unknown boundary condition '" + s + "'");
}

std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "outflow"; }

double GridSpec::dxi(int axis) const {
  const int nn = n(axis);
  if (axis == 1 && !two_d()) return 1.0;
  return bc(axis) == Boundary::Periodic ? len(axis) / nn : len(axis) / (nn - 1);
}

void GridSpec::validate(int min_nodes) const {
  std::ostringstream os;
  if (n1 < min_nodes) os << "n1 = " << n1 << " below minimum " << min_nodes << "; ";
  if (n2 != 1 && n2 < min_nodes) os << "n2 = " << n2 << " below minimum " << min_nodes << "; ";
  if (!(len1 > 0) || (two_d() && !(len2 > 0))) os << "domain extents must be positive; ";
  if (!os.str().empty()) throw ConfigError(os.str());
}

Coords uniform_coords(const GridSpec& g) {
  Coords c{ScalarField(g.n1, g.n2), ScalarField(g.n1, g.n2)};
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) {
      c.x1(i, j) = g.xi(0, i);
      c.x2(i, j) = g.two_d() ? g.xi(1, j) : 0.0;
    }
  return c;
}

namespace {

enum class Halo { Coordinate, Velocity };

// Outflow axes mirror the field across the fixed face half a cell beyond the boundary node: the
// normal coordinate is odd about that face, the tangential one even; velocities follow.
Padded pad_field(const ScalarField& f, const GridSpec& g, int component, int pad, Halo kind) {
  const int n1 = g.n1, n2 = g.n2;
  const int p2 = g.two_d() ? pad : 0;
  Padded out(n1, n2, pad, p2);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) out(i, j) = f(i, j);
  const double shift[2] = {kind == Halo::Coordinate && component == 0 ? g.len1 : 0.0,
                           kind == Halo::Coordinate && component == 1 ? g.len2 : 0.0};

  auto fill_axis = [&](int axis, int jlo, int jhi) {
    const int n = axis == 0 ? n1 : n2;
    const int p = axis == 0 ? pad : p2;
    const bool odd = axis == component;
    const double half = 0.5 * g.dxi(axis);
    for (int l = jlo; l < jhi; ++l) {
      auto at = [&](int k) -> double& { return axis == 0 ? out(k, l) : out(l, k); };
      const double lo = kind == Halo::Coordinate ? 2.0 * (at(0) - half) : 0.0;
      const double hi = kind == Halo::Coordinate ? 2.0 * (at(n - 1) + half) : 0.0;
      for (int k = 1; k <= p; ++k) {
        if (g.bc(axis) == Boundary::Periodic) {
          const int wl = halo_index(-k, n, Boundary::Periodic);
          const int wh = halo_index(n - 1 + k, n, Boundary::Periodic);
          at(-k) = at(wl) + (-k - wl) / n * shift[axis];
          at(n - 1 + k) = at(wh) + (n - 1 + k - wh) / n * shift[axis];
        } else {
          const int m = std::min(k - 1, n - 1);
          at(-k) = odd ? lo - at(m) : at(m);
          at(n - 1 + k) = odd ? hi - at(n - 1 - m) : at(n - 1 - m);
        }
      }
    }
  };
  fill_axis(0, 0, n2);
  if (p2 > 0) fill_axis(1, -pad, n1 + pad);
  return out;
}

}  // namespace

Padded pad_coordinate(const ScalarField& x, const GridSpec& g, int component, int pad) {
  return pad_field(x, g, component, pad, Halo::Coordinate);
}

Padded pad_velocity(const ScalarField& v, const GridSpec& g, int component, int pad) {
  return pad_field(v, g, component, pad, Halo::Velocity);
}

}  // namespace wbes
