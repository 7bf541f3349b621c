#pragma once

#include "wbes/problems.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wbes {

// INI file with sections [problem] [grid] [physics] [scheme] [mesh]; keys absent from the file keep the
// defaults of the named problem
ProblemConfig load_config(const std::filesystem::path& path);
ProblemConfig parse_config(const std::string& text);
std::string to_ini(const ProblemConfig& cfg);

// "grad(h+b):15:1; lap(h+b):10" -> monitor terms (power defaults to 1)
std::vector<MonitorTerm> parse_monitor_terms(const std::string& s);
std::string to_string(const std::vector<MonitorTerm>& terms);

// accuracy exponent < 0 picks 2 for EC and 5/3 for ES
SolverOptions resolved_solver_options(const ProblemConfig& cfg);

uint64_t fnv1a(const std::string& s);
std::string config_id(const ProblemConfig& cfg);

struct Norms {
  double l1 = 0.0, linf = 0.0;
};

// nodal norms: l1 = sum |e| dxi1 dxi2, linf = max |e|
struct ErrorReport {
  double t = 0.0;
  Norms h, surface, v1, v2;
};

ErrorReport error_report(const GridSpec& g, const SimulationState& s, const ExactFn& exact, double t);

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;
  bool energy_every_step = false;
};

struct RunResult {
  SimulationState state;
  std::vector<std::pair<double, double>> energy;  // (t, E)
  std::vector<GateHit> gates;
  std::vector<double> min_spacing;  // smallest neighbour distance of every accepted mesh
  double min_jacobian = 0.0;        // over all accepted meshes
  std::optional<ErrorReport> errors;
  double wall_seconds = 0.0;
};

RunResult run(const ProblemConfig& cfg, const RunOptions& opt = {});

struct ConvergenceRow {
  int n1 = 0, n2 = 0;
  Norms err;
  double order_l1 = 0.0, order_linf = 0.0;  // vs. the previous row
};

// runs at base, 2x, 4x, ... nodes per axis; errors in h at t_end
std::vector<ConvergenceRow> convergence_study(const ProblemConfig& base, int levels);

// nodal samples (x1, x2, h, v1, v2, b) of a finished run
struct Snapshot {
  std::vector<double> x1, x2, h, v1, v2, b;
};
Snapshot snapshot(const SimulationState& s);

void write_solution_csv(const std::filesystem::path& p, const SimulationState& s);
void write_mesh_csv(const std::filesystem::path& p, const GridSpec& g, const Coords& x);
void write_energy_csv(const std::filesystem::path& p, const std::vector<std::pair<double, double>>& e);
void write_gates_csv(const std::filesystem::path& p, const std::vector<GateHit>& gates);
Snapshot read_solution_csv(const std::filesystem::path& p);

// fine-grid reference produced by this tool and stored under cache_dir by config id
struct ReferenceRun {
  std::string id;
  GridSpec grid;
  Snapshot data;
};
ReferenceRun reference_solution(const ProblemConfig& cfg, const std::filesystem::path& cache_dir);

// values of (h+b) along x2 = c sampled by bilinear interpolation in physical space
std::vector<double> cut_line(const GridSpec& g, const SimulationState& s, double c, const std::vector<double>& x1);
std::vector<double> cut_line(const ReferenceRun& ref, double c, const std::vector<double>& x1);

// mean |a - b| dx over the sample points of a cut line, given a declared reference run
double cut_line_l1(const ReferenceRun& ref, const GridSpec& g, const SimulationState& s, double c, int samples);

}  // namespace wbes
