#include "wbes/driver.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <regex>

using namespace wbes;

namespace {

void apply_resolution(ProblemConfig& c, const std::string& res) {
  static const std::regex two(R"((\d+)\s*[xX]\s*(\d+))"), one(R"(\d+)");
  std::smatch m;
  if (std::regex_match(res, m, two)) {
    if (!c.grid.two_d()) throw ConfigError("a 1D problem takes a single resolution");
    c.grid.n1 = std::stoi(m[1]);
    c.grid.n2 = std::stoi(m[2]);
  } else if (std::regex_match(res, one)) {
    const int n = std::stoi(res);
    if (c.grid.two_d()) c.grid.n2 = std::max(2, static_cast<int>(std::lround(double(n) * c.grid.n2 / c.grid.n1)));
    c.grid.n1 = n;
  } else {
    throw ConfigError("resolution must be N or N1xN2, got '" + res + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order well-balanced energy-stable shallow water solver on adaptive moving meshes"};
  std::string config_path, problem, output = "output", scheme, mesh, resolution, monitor, topography;
  int order = 0, levels = 0, preadapt = -1;
  double t_end = -1, cfl = -1;
  bool list = false, no_ring = false, print_config = false;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--problem", problem, "registry problem name (alternative to --config)");
  app.add_option("--output", output, "output directory")->capture_default_str();
  app.add_option("--scheme", scheme, "ec or es")->check(CLI::IsMember({"ec", "es"}));
  app.add_option("--mesh", mesh, "static or moving")->check(CLI::IsMember({"static", "moving"}));
  app.add_option("--resolution", resolution, "N or N1xN2");
  app.add_option("--order", order, "flux order p")->check(CLI::Range(1, 3));
  app.add_option("--t-end", t_end, "final time");
  app.add_option("--cfl", cfl, "CFL number");
  app.add_option("--topography", topography, "smooth or step (lake-at-rest problems)");
  app.add_option("--monitor", monitor, "monitor terms, e.g. \"grad(h+b):100:1\"");
  app.add_option("--preadapt", preadapt, "initial mesh redistribution iterations");
  app.add_flag("--no-ring", no_ring, "drop the second dissipation term");
  app.add_option("--convergence", levels, "run a refinement study with this many levels");
  app.add_flag("--list-problems", list, "list registered problems and exit");
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  if (list) {
    for (const auto& p : problem_registry()) fmt::print("{:<18} {}\n", p.name, p.description);
    return 0;
  }
  try {
    if (config_path.empty() == problem.empty()) throw ConfigError("give exactly one of --config or --problem");
    ProblemConfig c = config_path.empty() ? default_config(problem) : load_config(config_path);
    if (!scheme.empty()) c.solver.scheme.kind = parse_scheme(scheme);
    if (!mesh.empty()) c.solver.mesh = parse_mesh_mode(mesh);
    if (!resolution.empty()) apply_resolution(c, resolution);
    if (order) c.solver.scheme.order = SchemeOrder(order);
    if (t_end > 0) c.t_end = t_end;
    if (cfl > 0) c.solver.cfl = cfl;
    if (!topography.empty()) c.topography = topography;
    if (!monitor.empty()) c.solver.monitor.terms = parse_monitor_terms(monitor);
    if (preadapt >= 0) c.preadapt_iterations = preadapt;
    if (no_ring) c.solver.scheme.ring = false;
    build_problem(c);

    if (print_config) {
      std::cout << to_ini(c);
      return 0;
    }
    if (levels > 0) {
      const auto rows = convergence_study(c, levels);
      fmt::print("{:>6} {:>6} {:>14} {:>8} {:>14} {:>8}\n", "N1", "N2", "l1(h)", "order", "linf(h)", "order");
      for (const auto& r : rows)
        fmt::print("{:>6} {:>6} {:>14.6e} {:>8.3f} {:>14.6e} {:>8.3f}\n", r.n1, r.n2, r.err.l1, r.order_l1,
                   r.err.linf, r.order_linf);
      return 0;
    }
    RunOptions ro;
    ro.output_dir = output;
    const RunResult r = run(c, ro);
    fmt::print("{} {}-{} {}x{}: t = {:.6g} after {} steps, {:.2f} s\n", c.problem, to_string(c.solver.mesh),
               to_string(c.solver.scheme.kind), c.grid.n1, c.grid.n2, r.state.t, r.state.steps, r.wall_seconds);
    fmt::print("energy {:.17g} -> {:.17g}\n", r.energy.front().second, r.energy.back().second);
    if (r.errors)
      fmt::print("errors: h l1 {:.3e} linf {:.3e}; h+b l1 {:.3e} linf {:.3e}; v1 l1 {:.3e} linf {:.3e}\n",
                 r.errors->h.l1, r.errors->h.linf, r.errors->surface.l1, r.errors->surface.linf, r.errors->v1.l1,
                 r.errors->v1.linf);
    fmt::print("output written to {}\n", output);
    return 0;
  } catch (const PositivityError& e) {
    std::cerr << "positivity failure: " << e.what() << "\n";
    return 2;
  } catch (const MeshTanglingError& e) {
    std::cerr << "mesh tangling: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
