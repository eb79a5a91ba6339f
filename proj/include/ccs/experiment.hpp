#pragma once

#include "ccs/diagnostics.hpp"
#include "ccs/psystem.hpp"
#include "ccs/scheme.hpp"

namespace ccs::psystem {

struct ExperimentResult {
  SimulationResult sim;
  diagnostics::ErrorSeries errors;
  double l1_e1 = 0.0;
  double l1_e2 = 0.0;
  double dt = 0.0;
  double relax_rate = 0.0;
};

// Nodal solver for the experiment: rebuilds the coupling from the outtake
// schedule each step; approaches 1-3 use the closed-form linear solve,
// approach 4 the sequential closed form.
NodeSolver make_node_solver(const CouplingApproach& approach, double a,
                            const OuttakeSchedule& schedule);

ExperimentResult run_experiment(const Experiment& exp, int approach_id,
                                std::size_t cells, double epsilon = 0.0);

struct ConvergenceRow {
  std::size_t cells = 0;
  double l1_e1 = 0.0;
  double l1_e2 = 0.0;
};

std::vector<ConvergenceRow> convergence_sweep(const Experiment& exp,
                                              int approach_id,
                                              const std::vector<std::size_t>& cells);

}  // namespace ccs::psystem
