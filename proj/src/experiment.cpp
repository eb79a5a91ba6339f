#include "ccs/experiment.hpp"

namespace ccs::psystem {

NodeSolver make_node_solver(const CouplingApproach& approach, double a,
                            const OuttakeSchedule& schedule) {
  return [approach, a, schedule](double t, const RelaxState& q0_minus,
                                 const RelaxState& q0_plus) {
    const double e = outtake(t, schedule);
    if (approach.nonlinear_v2) return solve_approach4(q0_minus, q0_plus, a, e);
    return solve_linear_psystem(approach, q0_minus, q0_plus, a, e);
  };
}

ExperimentResult run_experiment(const Experiment& exp, int approach_id,
                                std::size_t cells, double epsilon) {
  const PSystemModel model{exp.alpha, exp.gamma, /*rho_max=*/2.0 * exp.rho0};
  const double a = relax_rate_a(model);
  const FluxModel fm = make_flux_model(model);
  const RelaxMatrix a_left({a, a}, Side::left);
  const RelaxMatrix a_right({a, a}, Side::right);
  const Grid grid(cells, exp.x_min, exp.x_max);
  const CouplingApproach approach = CouplingApproach::make(approach_id);
  const NodeSolver rs = make_node_solver(approach, a, exp.schedule);

  SchemeConfig config;
  config.cfl = exp.cfl;
  config.epsilon = epsilon;
  config.end_time = exp.end_time;
  config.output_times = exp.output_times;

  const double rho0 = exp.rho0, mom0 = exp.momentum0;
  ExperimentResult result;
  result.relax_rate = a;
  result.sim = run_simulation(config, grid, fm, fm, a_left, a_right, rs,
                              [rho0, mom0](double) { return StateVec{rho0, mom0}; });
  result.dt = result.sim.dt_nominal;
  const OuttakeSchedule schedule = exp.schedule;
  result.errors = diagnostics::build_error_series(
      result.sim.trace_times, result.sim.trace_left, result.sim.trace_right,
      [schedule](double t) { return outtake(t, schedule); }, result.dt);
  std::tie(result.l1_e1, result.l1_e2) =
      diagnostics::l1_time_norm(result.errors, exp.end_time);
  return result;
}

std::vector<ConvergenceRow> convergence_sweep(const Experiment& exp,
                                              int approach_id,
                                              const std::vector<std::size_t>& cells) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(cells.size());
  for (std::size_t n : cells) {
    const ExperimentResult r = run_experiment(exp, approach_id, n);
    rows.push_back({n, r.l1_e1, r.l1_e2});
  }
  return rows;
}

}  // namespace ccs::psystem
