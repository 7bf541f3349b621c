#include "wbes/driver.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/os.h>

#include <chrono>
#include <cstdlib>
#include <type_traits>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace wbes {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

// ---------------------------------------------------------------- config

std::vector<MonitorTerm> parse_monitor_terms(const std::string& s) {
  std::vector<MonitorTerm> out;
  std::vector<std::string> items;
  boost::split(items, s, boost::is_any_of(";"));
  for (auto item : items) {
    boost::trim(item);
    if (item.empty()) continue;
    std::vector<std::string> parts;
    boost::split(parts, item, boost::is_any_of(":"));
    for (auto& p : parts) boost::trim(p);
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("bad monitor term '" + item + "'");
    MonitorTerm t;
    const std::string& head = parts[0];
    const auto open = head.find('('), close = head.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ConfigError("monitor term '" + item + "' must look like grad(h+b):theta[:power]");
    const std::string kind = head.substr(0, open);
    if (kind == "grad")
      t.laplacian = false;
    else if (kind == "lap")
      t.laplacian = true;
    else
      throw ConfigError("monitor operator must be grad or lap, got '" + kind + "'");
    t.var = parse_monitor_var(head.substr(open + 1, close - open - 1));
    try {
      t.theta = std::stod(parts[1]);
      t.power = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
    } catch (const std::exception&) {
      throw ConfigError("bad number in monitor term '" + item + "'");
    }
    out.push_back(t);
  }
  return out;
}

std::string to_string(const std::vector<MonitorTerm>& terms) {
  std::string s;
  for (const auto& t : terms) {
    if (!s.empty()) s += "; ";
    s += fmt::format("{}({}):{:.17g}:{:.17g}", t.laplacian ? "lap" : "grad", to_string(t.var), t.theta, t.power);
  }
  return s;
}

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::vector<std::string> items;
  boost::split(items, s, boost::is_any_of(", "), boost::token_compress_on);
  for (const auto& it : items) {
    if (it.empty()) continue;
    try {
      out.push_back(std::stod(it));
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + it + "' in list");
    }
  }
  return out;
}

template <class T>
void read(const pt::ptree& t, const char* key, T& v) {
  try {
    if (!t.get_child_optional(key)) return;
    if constexpr (std::is_same_v<T, double>) {
      const std::string txt = boost::algorithm::trim_copy(t.get<std::string>(key));
      char* end = nullptr;
      v = std::strtod(txt.c_str(), &end);
      if (txt.empty() || *end != '\0') throw ConfigError(std::string("bad value for ") + key + ": '" + txt + "'");
    } else {
      v = t.get<T>(key);
    }
  } catch (const pt::ptree_error& e) {
    throw ConfigError(std::string("bad value for ") + key + ": " + e.what());
  }
}

ProblemConfig from_tree(const pt::ptree& t) {
  const auto name = t.get_optional<std::string>("problem.name");
  if (!name) throw ConfigError("config needs [problem] name");
  ProblemConfig c = default_config(*name);

  read(t, "problem.topography", c.topography);
  read(t, "problem.perturbation", c.perturbation);
  read(t, "problem.t_end", c.t_end);
  read(t, "problem.manufactured_source", c.manufactured_source);
  if (auto o = t.get_optional<std::string>("problem.outputs")) c.outputs = parse_list(*o);

  auto& g = c.grid;
  read(t, "grid.n1", g.n1);
  read(t, "grid.n2", g.n2);
  read(t, "grid.a1", g.a1);
  read(t, "grid.a2", g.a2);
  read(t, "grid.len1", g.len1);
  read(t, "grid.len2", g.len2);
  if (auto b = t.get_optional<std::string>("grid.bc1")) g.bc1 = parse_boundary(*b);
  if (auto b = t.get_optional<std::string>("grid.bc2")) g.bc2 = parse_boundary(*b);

  double grav = c.params().g, gamma = c.params().gamma;
  read(t, "physics.g", grav);
  read(t, "physics.gamma", gamma);
  c.solver.scheme.params = Params(grav, gamma);

  if (auto k = t.get_optional<std::string>("scheme.kind")) c.solver.scheme.kind = parse_scheme(*k);
  int order = c.solver.scheme.order.p;
  read(t, "scheme.order", order);
  c.solver.scheme.order = SchemeOrder(order);
  read(t, "scheme.ring", c.solver.scheme.ring);
  read(t, "scheme.cfl", c.solver.cfl);
  read(t, "scheme.accuracy_exponent", c.solver.accuracy_exponent);
  read(t, "scheme.dt_max", c.solver.dt_max);

  if (auto m = t.get_optional<std::string>("mesh.mode")) c.solver.mesh = parse_mesh_mode(*m);
  if (auto m = t.get_optional<std::string>("mesh.monitor")) c.solver.monitor.terms = parse_monitor_terms(*m);
  read(t, "mesh.smoothing_passes", c.solver.monitor.smoothing_passes);
  read(t, "mesh.jacobi_iterations", c.solver.monitor.jacobi_iterations);
  read(t, "mesh.preadapt", c.preadapt_iterations);
  c.solver.monitor.validate();
  return c;
}

}  // namespace

ProblemConfig parse_config(const std::string& text) {
  pt::ptree t;
  std::istringstream in(text);
  try {
    pt::read_ini(in, t);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  return from_tree(t);
}

ProblemConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_ini(const ProblemConfig& c) {
  std::string outs;
  for (double t : c.outputs) outs += (outs.empty() ? "" : ", ") + fmt::format("{:.17g}", t);
  const auto& g = c.grid;
  const auto& s = c.solver;
  std::string r;
  r += "[problem]\n";
  r += fmt::format("name = {}\n", c.problem);
  if (!c.topography.empty()) r += fmt::format("topography = {}\n", c.topography);
  r += fmt::format("perturbation = {:.17g}\nt_end = {:.17g}\noutputs = {}\nmanufactured_source = {}\n\n", c.perturbation,
                   c.t_end, outs, c.manufactured_source ? "true" : "false");
  r += fmt::format("[grid]\nn1 = {}\nn2 = {}\na1 = {:.17g}\na2 = {:.17g}\nlen1 = {:.17g}\nlen2 = {:.17g}\nbc1 = {}\nbc2 = {}\n\n",
                   g.n1, g.n2, g.a1, g.a2, g.len1, g.len2, to_string(g.bc1), to_string(g.bc2));
  r += fmt::format("[physics]\ng = {:.17g}\ngamma = {:.17g}\n\n", c.params().g, c.params().gamma);
  r += fmt::format("[scheme]\nkind = {}\norder = {}\nring = {}\ncfl = {:.17g}\naccuracy_exponent = {:.17g}\ndt_max = {:.17g}\n\n",
                   to_string(s.scheme.kind), s.scheme.order.p, s.scheme.ring ? "true" : "false", s.cfl,
                   s.accuracy_exponent, s.dt_max);
  r += fmt::format("[mesh]\nmode = {}\nmonitor = {}\nsmoothing_passes = {}\njacobi_iterations = {}\npreadapt = {}\n",
                   to_string(s.mesh), to_string(s.monitor.terms), s.monitor.smoothing_passes,
                   s.monitor.jacobi_iterations, c.preadapt_iterations);
  return r;
}

SolverOptions resolved_solver_options(const ProblemConfig& cfg) {
  SolverOptions o = cfg.solver;
  if (o.accuracy_exponent < 0.0) o.accuracy_exponent = o.scheme.kind == SchemeKind::EC ? 2.0 : 5.0 / 3.0;
  return o;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_id(const ProblemConfig& cfg) { return fmt::format("{:016x}", fnv1a(to_ini(cfg))); }

// ---------------------------------------------------------------- errors

ErrorReport error_report(const GridSpec& g, const SimulationState& s, const ExactFn& exact, double t) {
  if (!exact) throw ConfigError("no exact solution for this problem; compare against a reference run instead");
  ErrorReport r;
  r.t = t;
  const double w = g.dxi(0) * (g.two_d() ? g.dxi(1) : 1.0);
  auto acc = [w](Norms& n, double e) {
    e = std::abs(e);
    n.l1 += e * w;
    n.linf = std::max(n.linf, e);
  };
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) {
      const Vec4d U = s.calU(i, j) / s.J(i, j);
      const auto P = primitive(U);
      const auto E = exact(s.x.x1(i, j), s.x.x2(i, j), t);
      acc(r.h, P.h - E.h);
      acc(r.surface, (P.h + P.b) - (E.h + E.b));
      acc(r.v1, P.v1 - E.v1);
      acc(r.v2, P.v2 - E.v2);
    }
  return r;
}

// ---------------------------------------------------------------- csv

Snapshot snapshot(const SimulationState& s) {
  Snapshot o;
  for (size_t k = 0; k < s.J.size(); ++k) {
    const auto P = primitive(Vec4d(s.calU[k] / s.J[k]));
    o.x1.push_back(s.x.x1[k]);
    o.x2.push_back(s.x.x2[k]);
    o.h.push_back(P.h);
    o.v1.push_back(P.v1);
    o.v2.push_back(P.v2);
    o.b.push_back(P.b);
  }
  return o;
}

namespace {

fmt::ostream open_csv(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return fmt::output_file(p.string());
}

}  // namespace

void write_solution_csv(const fs::path& p, const SimulationState& s) {
  auto f = open_csv(p);
  f.print("x1,x2,h,v1,v2,b,h+b\n");
  const Snapshot o = snapshot(s);
  for (size_t k = 0; k < o.h.size(); ++k)
    f.print("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", o.x1[k], o.x2[k], o.h[k], o.v1[k], o.v2[k],
            o.b[k], o.h[k] + o.b[k]);
}

void write_mesh_csv(const fs::path& p, const GridSpec& g, const Coords& x) {
  auto f = open_csv(p);
  f.print("i,j,x1,x2\n");
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) f.print("{},{},{:.17g},{:.17g}\n", i, j, x.x1(i, j), x.x2(i, j));
}

void write_energy_csv(const fs::path& p, const std::vector<std::pair<double, double>>& e) {
  auto f = open_csv(p);
  f.print("t,E\n");
  for (const auto& [t, E] : e) f.print("{:.17g},{:.17g}\n", t, E);
}

void write_gates_csv(const fs::path& p, const std::vector<GateHit>& gates) {
  auto f = open_csv(p);
  f.print("t,x1,x2,axis\n");
  for (const auto& g : gates) f.print("{:.17g},{:.17g},{:.17g},{}\n", g.t, g.x1, g.x2, g.axis + 1);
}

Snapshot read_solution_csv(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot read " + p.string());
  std::string line;
  std::getline(in, line);
  Snapshot o;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    boost::split(f, line, boost::is_any_of(","));
    if (f.size() < 6) throw Error("malformed row in " + p.string());
    o.x1.push_back(std::stod(f[0]));
    o.x2.push_back(std::stod(f[1]));
    o.h.push_back(std::stod(f[2]));
    o.v1.push_back(std::stod(f[3]));
    o.v2.push_back(std::stod(f[4]));
    o.b.push_back(std::stod(f[5]));
  }
  return o;
}

// ---------------------------------------------------------------- run

namespace {

double min_spacing(const GridSpec& g, const Coords& x) {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) {
      if (i + 1 < g.n1) m = std::min(m, std::hypot(x.x1(i + 1, j) - x.x1(i, j), x.x2(i + 1, j) - x.x2(i, j)));
      if (j + 1 < g.n2) m = std::min(m, std::hypot(x.x1(i, j + 1) - x.x1(i, j), x.x2(i, j + 1) - x.x2(i, j)));
    }
  return m;
}

double min_of(const ScalarField& f) { return *std::min_element(f.data().begin(), f.data().end()); }

std::string time_tag(double t) { return fmt::format("{:.6f}", t); }

}  // namespace

RunResult run(const ProblemConfig& cfg, const RunOptions& ro) {
  const auto t0 = std::chrono::steady_clock::now();
  const ProblemSetup setup = build_problem(cfg);
  SolverOptions so = resolved_solver_options(cfg);
  so.collect_gates = so.collect_gates || (ro.output_dir && so.scheme.kind == SchemeKind::ES);
  Solver solver(cfg.grid, so, setup.source);

  RunResult res;
  res.state = cfg.preadapt_iterations > 0 && so.mesh == MeshMode::Moving
                  ? solver.preadapted_state(setup.initial, cfg.preadapt_iterations)
                  : solver.initial_state(setup.initial);
  auto& s = res.state;
  const Params& par = cfg.params();
  res.energy.emplace_back(s.t, total_energy(cfg.grid, s, par));
  res.min_spacing.push_back(min_spacing(cfg.grid, s.x));
  res.min_jacobian = min_of(s.J);

  auto dump = [&](const SimulationState& st) {
    if (!ro.output_dir) return;
    const auto& d = *ro.output_dir;
    write_solution_csv(d / ("solution_t" + time_tag(st.t) + ".csv"), st);
    write_mesh_csv(d / ("mesh_t" + time_tag(st.t) + ".csv"), cfg.grid, st.x);
  };
  dump(s);

  const bool moving = so.mesh == MeshMode::Moving;
  auto after = [&](const SimulationState& st) {
    if (moving) {
      res.min_spacing.push_back(min_spacing(cfg.grid, st.x));
      res.min_jacobian = std::min(res.min_jacobian, min_of(st.J));
    }
    if (ro.energy_every_step) res.energy.emplace_back(st.t, total_energy(cfg.grid, st, par));
  };
  // gate hits are kept only for the last step before each output time
  double T_next = 0.0;
  auto after_step = [&](const SimulationState& st) {
    after(st);
    if (st.t < T_next - 1e-13 * std::max(1.0, T_next)) solver.clear_gate_hits();
  };
  for (double T : cfg.output_times()) {
    T_next = T;
    solver.advance(s, T, after_step);
    if (!ro.energy_every_step) res.energy.emplace_back(s.t, total_energy(cfg.grid, s, par));
    dump(s);
    res.gates.insert(res.gates.end(), solver.gate_hits().begin(), solver.gate_hits().end());
    solver.clear_gate_hits();
  }
  if (setup.exact) res.errors = error_report(cfg.grid, s, setup.exact, s.t);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (ro.output_dir) {
    const auto& d = *ro.output_dir;
    write_energy_csv(d / "energy.csv", res.energy);
    if (so.collect_gates) write_gates_csv(d / "gates.csv", res.gates);
    std::ofstream cf(d / "config.ini");
    cf << to_ini(cfg);
    if (res.errors) {
      auto f = open_csv(d / "errors.txt");
      f.print("# nodal norms: l1 = sum |e| dxi1 dxi2, linf = max |e|; t = {:.17g}\n", res.errors->t);
      f.print("variable,l1,linf\n");
      const std::pair<const char*, const Norms*> rows[] = {
          {"h", &res.errors->h}, {"h+b", &res.errors->surface}, {"v1", &res.errors->v1}, {"v2", &res.errors->v2}};
      for (const auto& [n, v] : rows) f.print("{},{:.6e},{:.6e}\n", n, v->l1, v->linf);
    }
  }
  return res;
}

std::vector<ConvergenceRow> convergence_study(const ProblemConfig& base, int levels) {
  std::vector<ConvergenceRow> rows;
  for (int k = 0; k < levels; ++k) {
    ProblemConfig c = base;
    c.grid.n1 = base.grid.n1 << k;
    if (c.grid.two_d()) c.grid.n2 = base.grid.n2 << k;
    const RunResult r = run(c);
    if (!r.errors) throw ConfigError("convergence study needs a problem with an exact solution");
    ConvergenceRow row{c.grid.n1, c.grid.n2, r.errors->h};
    if (!rows.empty()) {
      row.order_l1 = std::log2(rows.back().err.l1 / row.err.l1);
      row.order_linf = std::log2(rows.back().err.linf / row.err.linf);
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------- references and cut lines

ReferenceRun reference_solution(const ProblemConfig& cfg, const fs::path& cache_dir) {
  ReferenceRun ref;
  ref.id = config_id(cfg);
  ref.grid = cfg.grid;
  const fs::path csv = cache_dir / ("reference_" + ref.id + ".csv");
  const fs::path ini = cache_dir / ("reference_" + ref.id + ".ini");
  if (fs::exists(csv) && fs::exists(ini)) {
    ref.data = read_solution_csv(csv);
    if (ref.data.h.size() != static_cast<size_t>(cfg.grid.n1) * cfg.grid.n2)
      throw Error("cached reference " + csv.string() + " does not match its grid");
    return ref;
  }
  const RunResult r = run(cfg);
  fs::create_directories(cache_dir);
  write_solution_csv(csv, r.state);
  std::ofstream(ini) << to_ini(cfg);
  ref.data = snapshot(r.state);
  return ref;
}

namespace {

struct NodalField {
  const GridSpec& g;
  const std::vector<double>& x1;
  const std::vector<double>& x2;
  std::vector<double> f;
  double X1(int i, int j) const { return x1[i + static_cast<size_t>(g.n1) * j]; }
  double X2(int i, int j) const { return x2[i + static_cast<size_t>(g.n1) * j]; }
  double F(int i, int j) const { return f[i + static_cast<size_t>(g.n1) * j]; }
};

// bilinear inverse map inside quad (i,j)-(i+1,j+1); returns false when the point is outside
bool locate(const NodalField& m, int i, int j, double px, double py, double& out) {
  const double xa = m.X1(i, j), xb = m.X1(i + 1, j), xc = m.X1(i + 1, j + 1), xd = m.X1(i, j + 1);
  const double ya = m.X2(i, j), yb = m.X2(i + 1, j), yc = m.X2(i + 1, j + 1), yd = m.X2(i, j + 1);
  if (px < std::min({xa, xb, xc, xd}) - 1e-12 || px > std::max({xa, xb, xc, xd}) + 1e-12 ||
      py < std::min({ya, yb, yc, yd}) - 1e-12 || py > std::max({ya, yb, yc, yd}) + 1e-12)
    return false;
  double s = 0.5, t = 0.5;
  for (int it = 0; it < 20; ++it) {
    const double x = (1 - s) * (1 - t) * xa + s * (1 - t) * xb + s * t * xc + (1 - s) * t * xd;
    const double y = (1 - s) * (1 - t) * ya + s * (1 - t) * yb + s * t * yc + (1 - s) * t * yd;
    const double xs = (1 - t) * (xb - xa) + t * (xc - xd), xt = (1 - s) * (xd - xa) + s * (xc - xb);
    const double ys = (1 - t) * (yb - ya) + t * (yc - yd), yt = (1 - s) * (yd - ya) + s * (yc - yb);
    const double det = xs * yt - xt * ys;
    if (det == 0.0) return false;
    const double ds = ((px - x) * yt - (py - y) * xt) / det;
    const double dt = (xs * (py - y) - ys * (px - x)) / det;
    s += ds;
    t += dt;
    if (std::abs(ds) + std::abs(dt) < 1e-14) break;
  }
  const double tol = 1e-9;
  if (s < -tol || s > 1 + tol || t < -tol || t > 1 + tol) return false;
  out = (1 - s) * (1 - t) * m.F(i, j) + s * (1 - t) * m.F(i + 1, j) + s * t * m.F(i + 1, j + 1) +
        (1 - s) * t * m.F(i, j + 1);
  return true;
}

std::vector<double> sample_line(const NodalField& m, double c, const std::vector<double>& xs) {
  if (!m.g.two_d()) throw ConfigError("cut lines need a 2D run");
  std::vector<double> out(xs.size(), std::numeric_limits<double>::quiet_NaN());
  // cells straddling x2 = c
  std::vector<std::pair<int, int>> cells;
  for (int j = 0; j + 1 < m.g.n2; ++j)
    for (int i = 0; i + 1 < m.g.n1; ++i) {
      const double lo = std::min({m.X2(i, j), m.X2(i + 1, j), m.X2(i, j + 1), m.X2(i + 1, j + 1)});
      const double hi = std::max({m.X2(i, j), m.X2(i + 1, j), m.X2(i, j + 1), m.X2(i + 1, j + 1)});
      if (c >= lo - 1e-12 && c <= hi + 1e-12) cells.emplace_back(i, j);
    }
  for (size_t k = 0; k < xs.size(); ++k)
    for (const auto& [i, j] : cells)
      if (locate(m, i, j, xs[k], c, out[k])) break;
  for (size_t k = 0; k < xs.size(); ++k)
    if (std::isnan(out[k])) throw Error(fmt::format("cut-line point ({}, {}) lies outside the mesh", xs[k], c));
  return out;
}

std::vector<double> surface(const Snapshot& s) {
  std::vector<double> f(s.h.size());
  for (size_t k = 0; k < f.size(); ++k) f[k] = s.h[k] + s.b[k];
  return f;
}

}  // namespace

std::vector<double> cut_line(const GridSpec& g, const SimulationState& s, double c, const std::vector<double>& x1) {
  const Snapshot snap = snapshot(s);
  NodalField m{g, snap.x1, snap.x2, surface(snap)};
  return sample_line(m, c, x1);
}

std::vector<double> cut_line(const ReferenceRun& ref, double c, const std::vector<double>& x1) {
  NodalField m{ref.grid, ref.data.x1, ref.data.x2, surface(ref.data)};
  return sample_line(m, c, x1);
}

double cut_line_l1(const ReferenceRun& ref, const GridSpec& g, const SimulationState& s, double c, int samples) {
  if (ref.id.empty()) throw ConfigError("comparison requires a declared reference run");
  if (samples < 2) throw ConfigError("cut line needs at least two samples");
  std::vector<double> xs(samples);
  const double a = g.a1, L = g.len1;
  for (int k = 0; k < samples; ++k) xs[k] = a + L * k / (samples - 1);
  const auto u = cut_line(g, s, c, xs);
  const auto r = cut_line(ref, c, xs);
  double e = 0.0;
  for (int k = 0; k < samples; ++k) e += std::abs(u[k] - r[k]);
  return e * L / (samples - 1);
}

}  // namespace wbes
