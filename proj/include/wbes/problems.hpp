#pragma once

#include "wbes/time_integration.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wbes {

struct ProblemConfig {
  std::string problem;
  GridSpec grid;
  SolverOptions solver;
  double t_end = 0.2;
  std::vector<double> outputs;  // besides t_end
  std::string topography;       // "smooth" | "step" where a problem offers both
  double perturbation = 0.0;
  int preadapt_iterations = 0;
  bool manufactured_source = true;

  const Params& params() const { return solver.scheme.params; }
  // all output times in increasing order, t_end last
  std::vector<double> output_times() const;
};

using ExactFn = std::function<Primitive<double>(double x1, double x2, double t)>;

struct ProblemSetup {
  InitialFn initial;
  SourceFn source;  // may be empty
  ExactFn exact;    // may be empty
};

struct ProblemInfo {
  std::string name;
  std::string description;
  std::function<ProblemConfig()> defaults;
  std::function<ProblemSetup(const ProblemConfig&)> setup;
};

const std::vector<ProblemInfo>& problem_registry();
const ProblemInfo& find_problem(const std::string& name);
ProblemConfig default_config(const std::string& name);
ProblemSetup build_problem(const ProblemConfig& cfg);

// extra source of the one-dimensional manufactured solution (momentum component only nonzero)
Vec4d manufactured_source(double x, double t);
Primitive<double> manufactured_exact(double x, double t);

}  // namespace wbes
