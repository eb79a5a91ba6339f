#pragma once

#include <optional>

#include "ccs/riemann.hpp"

namespace ccs {

// Uniform two-sided mesh with the coupling interface at x = 0, which must
// coincide with a cell boundary. Array cell k covers
// [x_min + k dx, x_min + (k+1) dx); the cells adjacent to the interface are
// k = left_cells()-1 and k = left_cells().
class Grid {
public:
  Grid(std::size_t n_cells, double x_min, double x_max)
      : n_cells_(n_cells), x_min_(x_min), x_max_(x_max),
        dx_((x_max - x_min) / static_cast<double>(n_cells)) {
    if (!(x_min < 0.0 && 0.0 < x_max)) throw std::invalid_argument("interface x=0 must be interior");
    const double cells_left = -x_min / dx_;
    left_cells_ = static_cast<std::size_t>(std::llround(cells_left));
    if (std::abs(cells_left - static_cast<double>(left_cells_)) > 1e-9)
      throw std::invalid_argument("x=0 must coincide with a cell boundary");
  }

  std::size_t n_cells() const { return n_cells_; }
  std::size_t left_cells() const { return left_cells_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double dx() const { return dx_; }
  double cell_center(std::size_t k) const {
    return x_min_ + (static_cast<double>(k) + 0.5) * dx_;
  }

private:
  std::size_t n_cells_;
  double x_min_, x_max_, dx_;
  std::size_t left_cells_;
};

struct GridState {
  double time = 0.0;
  std::vector<StateVec> u;
  std::optional<std::vector<StateVec>> v;  // present only for eps > 0 runs
};

struct SchemeConfig {
  double cfl = 0.49;
  double epsilon = 0.0;  // 0 selects the central scheme
  double end_time = 0.0;
  std::vector<double> output_times;
};

// Nodal solver handle; the time argument lets time-dependent couplings
// (e.g. a momentum outtake schedule) rebuild their condition per step.
using NodeSolver =
    std::function<RiemannSolution(double t, const RelaxState& q0_minus,
                                  const RelaxState& q0_plus)>;

struct BlowUpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double cfl_dt(double cfl, double dx, const RelaxMatrix& a_left,
              const RelaxMatrix& a_right);

// One step of the relaxed (central) scheme; state carries U only.
GridState central_step(const GridState& state, const Grid& grid,
                       const FluxModel& flux_left, const FluxModel& flux_right,
                       const RelaxMatrix& a_left, const RelaxMatrix& a_right,
                       const NodeSolver& rs, double dt);

// One step of the IMEX relaxation scheme; state carries U and V and the
// stiff source is resolved algebraically after the explicit U update.
GridState relaxation_step(const GridState& state, const Grid& grid,
                          const FluxModel& flux_left, const FluxModel& flux_right,
                          const RelaxMatrix& a_left, const RelaxMatrix& a_right,
                          const NodeSolver& rs, double dt, double epsilon);

struct SimulationResult {
  std::vector<GridState> snapshots;
  Vec trace_times;
  std::vector<StateVec> trace_left;   // U_{-1}^n
  std::vector<StateVec> trace_right;  // U_0^n
  double dt_nominal = 0.0;
};

SimulationResult run_simulation(const SchemeConfig& config, const Grid& grid,
                                const FluxModel& flux_left,
                                const FluxModel& flux_right,
                                const RelaxMatrix& a_left,
                                const RelaxMatrix& a_right, const NodeSolver& rs,
                                const std::function<StateVec(double)>& initial);

}  // namespace ccs
