#include "wbes/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wbes {

namespace {

constexpr double pi = std::numbers::pi;

GridSpec line(int n, double a, double len, Boundary bc) {
  GridSpec g;
  g.n1 = n;
  g.n2 = 1;
  g.a1 = a;
  g.len1 = len;
  g.bc1 = bc;
  return g;
}

GridSpec box(int n1, int n2, double a1, double a2, double len1, double len2, Boundary bc) {
  GridSpec g;
  g.n1 = n1;
  g.n2 = n2;
  g.a1 = a1;
  g.a2 = a2;
  g.len1 = len1;
  g.len2 = len2;
  g.bc1 = g.bc2 = bc;
  return g;
}

MonitorParams gradient_monitor(MonitorVar v, double theta) {
  MonitorParams mp;
  mp.terms = {MonitorTerm{v, theta, 1.0, false}};
  return mp;
}

ProblemConfig base(const std::string& name, GridSpec g, double gravity, double t_end, MonitorParams mp) {
  ProblemConfig c;
  c.problem = name;
  c.grid = g;
  c.solver.scheme.params = Params(gravity, 1.0);
  c.solver.monitor = std::move(mp);
  c.t_end = t_end;
  return c;
}

bool inside(double x, double lo, double hi) { return x >= lo && x <= hi; }

double vortex_bump(double t, double period) {
  // shortest periodic image
  return t - period * std::round(t / period);
}

}  // namespace

std::vector<double> ProblemConfig::output_times() const {
  std::vector<double> out;
  for (double t : outputs)
    if (t > 0.0 && t < t_end) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.push_back(t_end);
  return out;
}

Primitive<double> manufactured_exact(double x, double t) {
  const double h = 4.0 + std::cos(pi * x) * std::cos(pi * t);
  return {h, std::sin(pi * x) * std::sin(pi * t) / h, 0.0, 1.5 + std::sin(pi * x)};
}

Vec4d manufactured_source(double x, double t) {
  const double cx = std::cos(pi * x), sx = std::sin(pi * x);
  const double ct = std::cos(pi * t), st = std::sin(pi * t);
  const double d = ct * cx + 4.0;
  const double s = 4 * pi * cx + pi * ct * cx * cx - 3 * pi * ct * sx - pi * ct * ct * cx * sx +
                   pi * ct * st * st * sx * sx * sx / (d * d) + 2 * pi * cx * st * st * sx / d;
  return Vec4d(0.0, s, 0.0, 0.0);
}

const std::vector<ProblemInfo>& problem_registry() {
  static const std::vector<ProblemInfo> reg = [] {
    std::vector<ProblemInfo> r;

    r.push_back({"manufactured-1d", "1D periodic manufactured smooth solution on [0,2] (accuracy test)",
                 [] {
                   auto c = base("manufactured-1d", line(100, 0.0, 2.0, Boundary::Periodic), 1.0, 0.2,
                                 gradient_monitor(MonitorVar::Surface, 10.0));
                   c.solver.accuracy_exponent = -1.0;
                   return c;
                 },
                 [](const ProblemConfig& c) {
                   ProblemSetup s;
                   s.initial = [](double x, double) { return manufactured_exact(x, 0.0); };
                   if (c.manufactured_source) s.source = [](double x, double, double t) { return manufactured_source(x, t); };
                   s.exact = [](double x, double, double t) { return manufactured_exact(x, t); };
                   return s;
                 }});

    r.push_back({"lake-at-rest-1d", "1D lake at rest on [0,10] over a Gaussian (smooth) or square step bottom",
                 [] {
                   auto c = base("lake-at-rest-1d", line(100, 0.0, 10.0, Boundary::Outflow), 1.0, 0.2,
                                 gradient_monitor(MonitorVar::Depth, 100.0));
                   c.topography = "smooth";
                   return c;
                 },
                 [](const ProblemConfig& c) {
                   std::function<double(double)> b;
                   if (c.topography == "smooth")
                     b = [](double x) { return 5.0 * std::exp(-0.4 * (x - 5.0) * (x - 5.0)); };
                   else if (c.topography == "step")
                     b = [](double x) { return inside(x, 4.0, 8.0) ? 4.0 : 0.0; };
                   else
                     throw ConfigError("lake-at-rest-1d topography must be smooth or step");
                   ProblemSetup s;
                   s.initial = [b](double x, double) { return Primitive<double>{10.0 - b(x), 0.0, 0.0, b(x)}; };
                   s.exact = [b](double x, double, double) { return Primitive<double>{10.0 - b(x), 0.0, 0.0, b(x)}; };
                   return s;
                 }});

    r.push_back({"perturbation-1d", "small perturbation of a lake at rest over a cosine hump on [0,2]",
                 [] {
                   auto c = base("perturbation-1d", line(200, 0.0, 2.0, Boundary::Outflow), 9.812, 0.2,
                                 gradient_monitor(MonitorVar::Surface, 100.0));
                   c.perturbation = 0.2;
                   return c;
                 },
                 [](const ProblemConfig& c) {
                   const double eps = c.perturbation;
                   ProblemSetup s;
                   s.initial = [eps](double x, double) {
                     const double b = inside(x, 1.4, 1.6) ? 0.25 * (std::cos(10 * pi * (x - 1.5)) + 1.0) : 0.0;
                     const double h = 1.0 - b + (inside(x, 1.1, 1.2) ? eps : 0.0);
                     return Primitive<double>{h, 0.0, 0.0, b};
                   };
                   return s;
                 }});

    r.push_back({"moving-vortex", "2D vortex advected with velocity (1,1) on the periodic box [-10,10]^2",
                 [] {
                   MonitorParams mp;
                   mp.terms = {MonitorTerm{MonitorVar::Surface, 15.0, 1.0, false},
                               MonitorTerm{MonitorVar::Surface, 10.0, 1.0, true}};
                   auto c = base("moving-vortex", box(40, 40, -10, -10, 20, 20, Boundary::Periodic), 1.0, 2.0, mp);
                   c.solver.accuracy_exponent = -1.0;
                   return c;
                 },
                 [](const ProblemConfig& c) {
                   const double g = c.params().g, L1 = c.grid.len1, L2 = c.grid.len2;
                   const double c1 = c.grid.a1 + 0.5 * L1, c2 = c.grid.a2 + 0.5 * L2;
                   auto exact = [=](double x1, double x2, double t) {
                     const double y1 = vortex_bump(x1 - c1 - t, L1), y2 = vortex_bump(x2 - c2 - t, L2);
                     const double r2 = y1 * y1 + y2 * y2;
                     const double vmax = 0.2;
                     const double h = 1.0 - vmax * vmax * std::exp(1.0 - r2) / (2.0 * g);
                     const double e = vmax * std::exp(0.5 * (1.0 - r2));
                     return Primitive<double>{h, 1.0 - e * y2, 1.0 + e * y1, 0.0};
                   };
                   ProblemSetup s;
                   s.initial = [exact](double x1, double x2) { return exact(x1, x2, 0.0); };
                   s.exact = exact;
                   return s;
                 }});

    r.push_back({"lake-at-rest-2d", "2D lake at rest on [0,1]^2 over a Gaussian (smooth) or square (step) bottom",
                 [] {
                   auto c = base("lake-at-rest-2d", box(100, 100, 0, 0, 1, 1, Boundary::Outflow), 1.0, 0.1,
                                 gradient_monitor(MonitorVar::Depth, 100.0));
                   c.topography = "smooth";
                   return c;
                 },
                 [](const ProblemConfig& c) {
                   std::function<double(double, double)> b;
                   if (c.topography == "smooth")
                     b = [](double x, double y) {
                       return 0.8 * std::exp(-50.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)));
                     };
                   else if (c.topography == "step")
                     b = [](double x, double y) { return inside(x, 0.3, 0.5) && inside(y, 0.3, 0.5) ? 0.5 : 0.0; };
                   else
                     throw ConfigError("lake-at-rest-2d topography must be smooth or step");
                   ProblemSetup s;
                   s.initial = [b](double x, double y) { return Primitive<double>{1.0 - b(x, y), 0.0, 0.0, b(x, y)}; };
                   s.exact = [b](double x, double y, double) {
                     return Primitive<double>{1.0 - b(x, y), 0.0, 0.0, b(x, y)};
                   };
                   return s;
                 }});

    r.push_back({"oval-hump", "perturbed lake at rest over an oval hump on [0,2]x[0,1]",
                 [] {
                   auto c = base("oval-hump", box(300, 150, 0, 0, 2, 1, Boundary::Outflow), 9.812, 0.6,
                                 gradient_monitor(MonitorVar::Surface, 800.0));
                   c.outputs = {0.12, 0.24, 0.36, 0.48};
                   c.perturbation = 0.01;
                   return c;
                 },
                 [](const ProblemConfig& c) {
                   const double eps = c.perturbation;
                   ProblemSetup s;
                   s.initial = [eps](double x, double y) {
                     const double b = 0.8 * std::exp(-5.0 * (x - 0.9) * (x - 0.9) - 50.0 * (y - 0.5) * (y - 0.5));
                     return Primitive<double>{1.0 - b + (inside(x, 0.05, 0.15) ? eps : 0.0), 0.0, 0.0, b};
                   };
                   return s;
                 }});

    r.push_back({"circular-dam", "circular dam break over a flat bottom on [0,50]^2",
                 [] {
                   auto c = base("circular-dam", box(200, 200, 0, 0, 50, 50, Boundary::Outflow), 9.812, 1.0,
                                 gradient_monitor(MonitorVar::Surface, 800.0));
                   c.outputs = {0.2, 0.4, 0.6, 0.8};
                   return c;
                 },
                 [](const ProblemConfig&) {
                   ProblemSetup s;
                   s.initial = [](double x, double y) {
                     const double r = std::hypot(x - 25.0, y - 25.0);
                     return Primitive<double>{r <= 11.0 ? 10.0 : 1.0, 0.0, 0.0, 0.0};
                   };
                   return s;
                 }});

    r.push_back({"dam-on-bump", "circular dam break over a non-flat bed on [0,2]^2",
                 [] {
                   return base("dam-on-bump", box(200, 200, 0, 0, 2, 2, Boundary::Outflow), 9.812, 0.15,
                               gradient_monitor(MonitorVar::Surface, 800.0));
                 },
                 [](const ProblemConfig&) {
                   ProblemSetup s;
                   s.initial = [](double x, double y) {
                     const double b = std::hypot(x - 1.5, y - 1.0) <= 0.5
                                          ? 0.125 * (std::cos(2 * pi * (x - 0.5)) + 1.0) * (std::cos(2 * pi * y) + 1.0)
                                          : 0.0;
                     const double level = std::hypot(x - 1.25, y - 1.0) <= 0.1 ? 1.1 : 0.6;
                     return Primitive<double>{level - b, 0.0, 0.0, b};
                   };
                   return s;
                 }});
    return r;
  }();
  return reg;
}

const ProblemInfo& find_problem(const std::string& name) {
  for (const auto& p : problem_registry())
    if (p.name == name) return p;
  throw ConfigError("unknown problem '" + name + "' (see --list-problems)");
}

ProblemConfig default_config(const std::string& name) { return find_problem(name).defaults(); }

ProblemSetup build_problem(const ProblemConfig& cfg) {
  const auto& info = find_problem(cfg.problem);
  const bool want_2d = info.defaults().grid.two_d();
  if (want_2d != cfg.grid.two_d()) throw ConfigError("problem '" + cfg.problem + "' has a different dimension");
  return info.setup(cfg);
}

}  // namespace wbes
