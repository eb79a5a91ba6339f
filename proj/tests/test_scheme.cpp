#include <doctest.h>

#include <random>

#include "ccs/scheme.hpp"

using namespace ccs;

namespace {

FluxModel identity_flux() {
  FluxModel fm;
  fm.dim = 1;
  fm.flux = [](const StateVec& u) { return u; };
  fm.jacobian = [](const StateVec&) {
    Mat m(1, 1);
    m(0, 0) = 1.0;
    return m;
  };
  return fm;
}

NodeSolver kirchhoff_solver(double a) {
  const RelaxMatrix am({a}, Side::left);
  return [am](double, const RelaxState& qm, const RelaxState& qp) {
    return solve_kirchhoff(qm, qp, am);
  };
}

}  // namespace

TEST_CASE("cfl_dt") {
  const RelaxMatrix a1({1.0}, Side::left);
  CHECK(cfl_dt(1.0, 1.0, a1, a1) == doctest::Approx(1.0));
  const RelaxMatrix big({146820.4, 146820.4}, Side::left);
  CHECK(cfl_dt(0.49, 0.4, big, big) ==
        doctest::Approx(0.49 * 0.4 / std::sqrt(146820.4)).epsilon(1e-12));
  const RelaxMatrix a4({4.0}, Side::right);
  CHECK(cfl_dt(1.0, 1.0, a1, a4) == doctest::Approx(0.5));
}

TEST_CASE("grid layout") {
  const Grid g(10, -4.0, 6.0);
  CHECK(g.dx() == doctest::Approx(1.0));
  CHECK(g.left_cells() == 4);
  CHECK(g.cell_center(3) == doctest::Approx(-0.5));
  CHECK(g.cell_center(4) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Grid(10, -4.3, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(10, 1.0, 6.0), std::invalid_argument);
}

TEST_CASE("central_step keeps constant data constant") {
  const FluxModel fm = identity_flux();
  const RelaxMatrix a({1.0}, Side::left);
  const Grid grid(8, -4.0, 4.0);
  GridState state;
  state.u.assign(8, StateVec{0.7});
  for (int step = 0; step < 5; ++step)
    state = central_step(state, grid, fm, fm, a, a, kirchhoff_solver(1.0), 0.4);
  for (const auto& u : state.u) CHECK(u[0] == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("central_step matches a hand-assembled single step") {
  // N=4 cells on [-2,2], F(u)=u, a=1, Kirchhoff node: interior fluxes are
  // H = (u_l + u_r)/2 - (u_r - u_l)/2 = u_l (pure upwind for this flux)
  const FluxModel fm = identity_flux();
  const RelaxMatrix a({1.0}, Side::left);
  const Grid grid(4, -2.0, 2.0);
  GridState state;
  state.u = {{1.0}, {2.0}, {4.0}, {8.0}};
  const double dt = 0.5;  // lambda = 0.5
  const auto next = central_step(state, grid, fm, fm, a, a, kirchhoff_solver(1.0), dt);
  // ghost left = 1, interface flux also reduces to the upwind value 2
  CHECK(next.u[0][0] == doctest::Approx(1.0));          // 1 - 0.5 (1 - 1)
  CHECK(next.u[1][0] == doctest::Approx(1.5));          // 2 - 0.5 (2 - 1)
  CHECK(next.u[2][0] == doctest::Approx(3.0));          // 4 - 0.5 (4 - 2)
  CHECK(next.u[3][0] == doctest::Approx(6.0));          // 8 - 0.5 (8 - 4)
}

TEST_CASE("interface flux equals the Kirchhoff closed form") {
  // single step with piecewise constant data differing across the interface
  const FluxModel fm = identity_flux();
  const double a = 4.0;
  const RelaxMatrix am({a}, Side::left);
  const Grid grid(4, -2.0, 2.0);
  GridState state;
  state.u = {{1.0}, {1.0}, {3.0}, {3.0}};
  const double dt = 0.1;
  const auto next = central_step(state, grid, fm, fm, am, am, kirchhoff_solver(a), dt);
  // H_interface = (F(1)+F(3))/2 - sqrt(a)/2 (3-1) = 2 - 2 = 0
  const double h_iface = 0.0;
  const double h_left_inner = 1.0;   // equal states
  const double h_right_inner = 3.0;  // equal states
  CHECK(next.u[1][0] == doctest::Approx(1.0 - 0.1 * (h_iface - h_left_inner)));
  CHECK(next.u[2][0] == doctest::Approx(3.0 - 0.1 * (h_right_inner - h_iface)));
}

TEST_CASE("relaxation_step fixed point on compatible constant data") {
  const FluxModel fm = identity_flux();
  const RelaxMatrix a({1.0}, Side::left);
  const Grid grid(8, -4.0, 4.0);
  GridState state;
  state.u.assign(8, StateVec{0.7});
  state.v.emplace(8, StateVec{0.7});  // V = F(U)
  const auto next = relaxation_step(state, grid, fm, fm, a, a,
                                    kirchhoff_solver(1.0), 0.4, 1e-3);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(next.u[k][0] == doctest::Approx(0.7).epsilon(1e-13));
    CHECK((*next.v)[k][0] == doctest::Approx(0.7).epsilon(1e-13));
  }
}

TEST_CASE("relaxation_step reduces to pure transport for huge epsilon") {
  const FluxModel fm = identity_flux();
  const RelaxMatrix a({1.0}, Side::left);
  const Grid grid(8, -4.0, 4.0);
  GridState state;
  state.u = {{1.0}, {2.0}, {3.0}, {4.0}, {3.0}, {2.0}, {1.0}, {0.5}};
  state.v.emplace(
      std::vector<StateVec>{{0.5}, {1.0}, {1.5}, {2.0}, {1.5}, {1.0}, {0.5}, {0.2}});
  const double dt = 0.2;
  const auto next = relaxation_step(state, grid, fm, fm, a, a,
                                    kirchhoff_solver(1.0), dt, 1e12);
  // with dt/eps ~ 0 the V update is the explicit transport stencil
  const auto& u = state.u;
  const auto& v = *state.v;
  const double lam = dt / grid.dx();
  for (std::size_t k = 1; k + 1 < 8; ++k) {
    if (k == grid.left_cells() || k + 1 == grid.left_cells()) continue;
    const double expect = v[k][0] - 0.5 * lam * (u[k + 1][0] - u[k - 1][0]) +
                          0.5 * lam * (v[k + 1][0] - 2 * v[k][0] + v[k - 1][0]);
    CHECK((*next.v)[k][0] == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("conservation with Kirchhoff coupling and equal fluxes") {
  const FluxModel fm = identity_flux();
  const RelaxMatrix a({1.0}, Side::left);
  const std::size_t nc = 240;
  const Grid grid(nc, -120.0, 120.0);
  GridState state;
  state.u.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const double x = grid.cell_center(k);
    state.u[k] = {1.0 + 0.5 * std::exp(-0.05 * x * x)};
  }
  double total0 = 0.0;
  for (const auto& u : state.u) total0 += u[0] * grid.dx();
  const double dt = cfl_dt(0.49, grid.dx(), a, a);
  for (int step = 0; step < 100; ++step)
    state = central_step(state, grid, fm, fm, a, a, kirchhoff_solver(1.0), dt);
  double total = 0.0;
  for (const auto& u : state.u) total += u[0] * grid.dx();
  CHECK(std::abs(total - total0) <= 1e-11 * std::abs(total0));
}

TEST_CASE("run_simulation") {
  const FluxModel fm = identity_flux();
  const RelaxMatrix a({1.0}, Side::left);
  const Grid grid(8, -4.0, 4.0);
  SUBCASE("end_time 0 returns only the initial snapshot") {
    SchemeConfig config;
    config.end_time = 0.0;
    const auto res = run_simulation(config, grid, fm, fm, a, a,
                                    kirchhoff_solver(1.0),
                                    [](double x) { return StateVec{x > 0 ? 1.0 : 2.0}; });
    REQUIRE(res.snapshots.size() == 1);
    CHECK(res.snapshots[0].time == 0.0);
    CHECK(res.trace_times.size() == 1);
  }
  SUBCASE("output times are landed exactly") {
    SchemeConfig config;
    config.cfl = 0.49;
    config.end_time = 1.0;
    config.output_times = {0.37, 1.0};
    const auto res = run_simulation(config, grid, fm, fm, a, a,
                                    kirchhoff_solver(1.0),
                                    [](double) { return StateVec{1.0}; });
    REQUIRE(res.snapshots.size() == 2);
    CHECK(res.snapshots[0].time == doctest::Approx(0.37).epsilon(1e-12));
    CHECK(res.snapshots[1].time == doctest::Approx(1.0).epsilon(1e-12));
    // no step exceeded the CFL bound
    for (std::size_t k = 0; k + 1 < res.trace_times.size(); ++k)
      CHECK(res.trace_times[k + 1] - res.trace_times[k] <=
            res.dt_nominal + 1e-14);
  }
  SUBCASE("halving the CFL number changes results only at O(dt)") {
    auto solve_at = [&](double cfl) {
      SchemeConfig config;
      config.cfl = cfl;
      config.end_time = 1.0;
      config.output_times = {1.0};
      return run_simulation(config, grid, fm, fm, a, a, kirchhoff_solver(1.0),
                            [](double x) { return StateVec{std::sin(0.5 * x)}; });
    };
    const auto coarse = solve_at(0.8);
    const auto fine = solve_at(0.4);
    double diff = 0.0;
    for (std::size_t k = 0; k < 8; ++k)
      diff = std::max(diff, std::abs(coarse.snapshots[0].u[k][0] -
                                     fine.snapshots[0].u[k][0]));
    CHECK(diff <= 1.0);  // bounded
    CHECK(diff <= 5.0 * coarse.dt_nominal);
  }
}

TEST_CASE("interior flux consistency H(U, U) = F(U)") {
  // a constant field stays constant under one step for any flux model
  FluxModel fm;
  fm.dim = 2;
  fm.flux = [](const StateVec& u) {
    return StateVec{u[1], u[0] * u[0] + 1.0};
  };
  fm.jacobian = [](const StateVec& u) {
    Mat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 2.0 * u[0];
    return m;
  };
  const RelaxMatrix a({9.0, 9.0}, Side::left);
  const Grid grid(6, -3.0, 3.0);
  GridState state;
  state.u.assign(6, StateVec{1.3, -0.4});
  const NodeSolver rs = [&](double, const RelaxState& qm, const RelaxState& qp) {
    return solve_kirchhoff(qm, qp, a);
  };
  const auto next = central_step(state, grid, fm, fm, a, a, rs, 0.1);
  for (const auto& u : next.u) {
    CHECK(u[0] == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(u[1] == doctest::Approx(-0.4).epsilon(1e-14));
  }
}
