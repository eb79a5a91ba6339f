#include "ccs/scheme.hpp"

#include <algorithm>

namespace ccs {

namespace {

void check_finite(const std::vector<StateVec>& field, double t) {
  for (const StateVec& u : field)
    for (double x : u)
      if (!std::isfinite(x))
        throw BlowUpError("non-finite state at t = " + std::to_string(t));
}

// Ghost cell value: copy of the adjacent interior cell (homogeneous Neumann).
const StateVec& clamped(const std::vector<StateVec>& u, std::ptrdiff_t k) {
  if (k < 0) return u.front();
  if (k >= static_cast<std::ptrdiff_t>(u.size())) return u.back();
  return u[static_cast<std::size_t>(k)];
}

}  // namespace

double cfl_dt(double cfl, double dx, const RelaxMatrix& a_left,
              const RelaxMatrix& a_right) {
  double smax = 0.0;
  for (double s : a_left.sqrt_diag()) smax = std::max(smax, s);
  for (double s : a_right.sqrt_diag()) smax = std::max(smax, s);
  return cfl * dx / smax;
}

GridState central_step(const GridState& state, const Grid& grid,
                       const FluxModel& flux_left, const FluxModel& flux_right,
                       const RelaxMatrix& a_left, const RelaxMatrix& a_right,
                       const NodeSolver& rs, double dt) {
  const std::size_t nc = grid.n_cells();
  const std::size_t nl = grid.left_cells();
  const std::size_t n = flux_left.dim;
  const double lam = dt / grid.dx();
  const auto& u = state.u;

  // flux F_i(U) cached per cell
  std::vector<StateVec> f(nc);
  for (std::size_t k = 0; k < nc; ++k)
    f[k] = (k < nl ? flux_left.flux(u[k]) : flux_right.flux(u[k]));

  auto rusanov = [n](const StateVec& fl, const StateVec& fr, const StateVec& ul,
                     const StateVec& ur, const Vec& sqrt_a) {
    StateVec h(n);
    for (std::size_t j = 0; j < n; ++j)
      h[j] = 0.5 * (fl[j] + fr[j]) - 0.5 * sqrt_a[j] * (ur[j] - ul[j]);
    return h;
  };

  // interface coupling data from the limit RS on lifted traces
  RiemannSolution node;
  try {
    node = rs(state.time, RelaxState{u[nl - 1], f[nl - 1]}, RelaxState{u[nl], f[nl]});
  } catch (const RiemannSolverError& e) {
    throw RiemannSolverError(std::string(e.what()) + " (interface, t = " +
                             std::to_string(state.time) + ")");
  }

  GridState next;
  next.time = state.time + dt;
  next.u.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const bool left = k < nl;
    const RelaxMatrix& a = left ? a_left : a_right;
    const FluxModel& model = left ? flux_left : flux_right;
    const auto flux_at = [&](std::ptrdiff_t m) -> StateVec {
      if (m < 0 || m >= static_cast<std::ptrdiff_t>(nc)) return model.flux(clamped(u, m));
      return f[static_cast<std::size_t>(m)];
    };
    StateVec h_left, h_right;
    if (k == nl) {
      // H_{-1/2}^+ feeds the first right cell
      h_left.resize(n);
      for (std::size_t j = 0; j < n; ++j)
        h_left[j] = 0.5 * (node.q_l.v[j] + f[k][j]) -
                    0.5 * a_right.sqrt_diag()[j] * (u[k][j] - node.q_l.u[j]);
    } else {
      h_left = rusanov(flux_at(static_cast<std::ptrdiff_t>(k) - 1), f[k],
                       clamped(u, static_cast<std::ptrdiff_t>(k) - 1), u[k],
                       a.sqrt_diag());
    }
    if (k + 1 == nl) {
      // H_{-1/2}^- leaves the last left cell
      h_right.resize(n);
      for (std::size_t j = 0; j < n; ++j)
        h_right[j] = 0.5 * (f[k][j] + node.q_r.v[j]) -
                     0.5 * a_left.sqrt_diag()[j] * (node.q_r.u[j] - u[k][j]);
    } else {
      h_right = rusanov(f[k], flux_at(static_cast<std::ptrdiff_t>(k) + 1), u[k],
                        clamped(u, static_cast<std::ptrdiff_t>(k) + 1),
                        a.sqrt_diag());
    }
    next.u[k].resize(n);
    for (std::size_t j = 0; j < n; ++j)
      next.u[k][j] = u[k][j] - lam * (h_right[j] - h_left[j]);
  }
  check_finite(next.u, next.time);
  return next;
}

GridState relaxation_step(const GridState& state, const Grid& grid,
                          const FluxModel& flux_left, const FluxModel& flux_right,
                          const RelaxMatrix& a_left, const RelaxMatrix& a_right,
                          const NodeSolver& rs, double dt, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("relaxation_step requires eps > 0");
  if (!state.v) throw std::invalid_argument("relaxation_step requires V field");
  const std::size_t nc = grid.n_cells();
  const std::size_t nl = grid.left_cells();
  const std::size_t n = flux_left.dim;
  const double lam = dt / grid.dx();
  const auto& u = state.u;
  const auto& v = *state.v;

  RiemannSolution node;
  try {
    node = rs(state.time, RelaxState{u[nl - 1], v[nl - 1]}, RelaxState{u[nl], v[nl]});
  } catch (const RiemannSolverError& e) {
    throw RiemannSolverError(std::string(e.what()) + " (interface, t = " +
                             std::to_string(state.time) + ")");
  }

  GridState next;
  next.time = state.time + dt;
  next.u.resize(nc);
  next.v.emplace(nc);
  const double r = dt / epsilon;
  for (std::size_t k = 0; k < nc; ++k) {
    const bool left = k < nl;
    const RelaxMatrix& a = left ? a_left : a_right;
    const FluxModel& model = left ? flux_left : flux_right;
    // neighbor states; interface neighbors are replaced by coupling data
    StateVec um = clamped(u, static_cast<std::ptrdiff_t>(k) - 1);
    StateVec vm = clamped(v, static_cast<std::ptrdiff_t>(k) - 1);
    StateVec up = clamped(u, static_cast<std::ptrdiff_t>(k) + 1);
    StateVec vp = clamped(v, static_cast<std::ptrdiff_t>(k) + 1);
    if (k == nl) {
      um = node.q_l.u;
      vm = node.q_l.v;
    }
    if (k + 1 == nl) {
      up = node.q_r.u;
      vp = node.q_r.v;
    }
    next.u[k].resize(n);
    (*next.v)[k].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double sj = a.sqrt_diag()[j];
      next.u[k][j] = u[k][j] - 0.5 * lam * (vp[j] - vm[j]) +
                     0.5 * lam * sj * (up[j] - 2.0 * u[k][j] + um[j]);
    }
    const StateVec fnew = model.flux(next.u[k]);
    for (std::size_t j = 0; j < n; ++j) {
      const double aj = a.diag()[j];
      const double sj = a.sqrt_diag()[j];
      const double v_transport = v[k][j] - 0.5 * lam * aj * (up[j] - um[j]) +
                                 0.5 * lam * sj * (vp[j] - 2.0 * v[k][j] + vm[j]);
      // implicit source resolved algebraically; U^{n+1} is already known
      (*next.v)[k][j] = (v_transport + r * fnew[j]) / (1.0 + r);
    }
  }
  check_finite(next.u, next.time);
  check_finite(*next.v, next.time);
  return next;
}

SimulationResult run_simulation(const SchemeConfig& config, const Grid& grid,
                                const FluxModel& flux_left,
                                const FluxModel& flux_right,
                                const RelaxMatrix& a_left,
                                const RelaxMatrix& a_right, const NodeSolver& rs,
                                const std::function<StateVec(double)>& initial) {
  const std::size_t nc = grid.n_cells();
  const std::size_t nl = grid.left_cells();
  const bool relaxing = config.epsilon > 0.0;

  GridState state;
  state.time = 0.0;
  state.u.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) state.u[k] = initial(grid.cell_center(k));
  if (relaxing) {
    state.v.emplace(nc);
    for (std::size_t k = 0; k < nc; ++k)
      (*state.v)[k] = (k < nl ? flux_left.flux(state.u[k])
                              : flux_right.flux(state.u[k]));
  }

  SimulationResult result;
  result.dt_nominal = cfl_dt(config.cfl, grid.dx(), a_left, a_right);
  auto record = [&](const GridState& s) {
    result.trace_times.push_back(s.time);
    result.trace_left.push_back(s.u[nl - 1]);
    result.trace_right.push_back(s.u[nl]);
  };
  record(state);

  std::vector<double> marks = config.output_times;
  std::sort(marks.begin(), marks.end());
  if (marks.empty() || marks.back() < config.end_time) marks.push_back(config.end_time);
  std::size_t next_mark = 0;
  while (next_mark < marks.size() && marks[next_mark] <= 1e-14) {
    result.snapshots.push_back(state);
    ++next_mark;
  }

  const double t_end = config.end_time;
  std::size_t step = 0;
  while (state.time < t_end - 1e-14) {
    double dt = result.dt_nominal;
    // shorten (never lengthen) the step to land on the next output time
    if (next_mark < marks.size()) dt = std::min(dt, marks[next_mark] - state.time);
    dt = std::min(dt, t_end - state.time);
    try {
      state = relaxing
                  ? relaxation_step(state, grid, flux_left, flux_right, a_left,
                                    a_right, rs, dt, config.epsilon)
                  : central_step(state, grid, flux_left, flux_right, a_left,
                                 a_right, rs, dt);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("step " + std::to_string(step) + ": " + e.what());
    }
    ++step;
    record(state);
    while (next_mark < marks.size() && state.time >= marks[next_mark] - 1e-12) {
      result.snapshots.push_back(state);
      ++next_mark;
    }
  }
  return result;
}

}  // namespace ccs
