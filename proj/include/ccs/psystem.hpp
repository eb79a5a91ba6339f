#pragma once

#include "ccs/riemann.hpp"

namespace ccs::psystem {

// gamma-law pressure p(rho) = alpha rho^gamma on [0, rho_max].
struct PSystemModel {
  double alpha = 1.0;
  double gamma = 1.0;
  double rho_max = 1.0;

  double pressure(double rho) const { return alpha * std::pow(rho, gamma); }
  double pressure_derivative(double rho) const {
    return alpha * gamma * std::pow(rho, gamma - 1.0);
  }
};

// Piecewise linear momentum outtake profile -E(t): ramp up, plateau, ramp
// down to zero.
struct OuttakeSchedule {
  double ramp_rate = 3.0;
  double plateau = 0.6;
  double ramp_down_start = 0.3;
  double zero_time = 0.5;
};

struct CouplingApproach {
  int id = 3;
  double beta1 = 1.0;
  double beta2 = 1.0;
  bool nonlinear_v2 = false;

  static CouplingApproach make(int id) {
    switch (id) {
      case 1: return {1, 1.0, 0.0, false};
      case 2: return {2, 0.0, 1.0, false};
      case 3: return {3, 1.0, 1.0, false};
      case 4: return {4, 1.0, 1.0, true};
      default: throw std::invalid_argument("coupling approach must be 1-4");
    }
  }
};

inline constexpr double kRhoFloor = 1e-12;

// F(rho, rho v) = (rho v, (rho v)^2/rho + p(rho)); the convective term is 0
// at exact vacuum.
StateVec psystem_flux(const StateVec& u, const PSystemModel& model);

Mat psystem_jacobian(const StateVec& u, const PSystemModel& model);

FluxModel make_flux_model(const PSystemModel& model);

// a = max p'(rho) over [0, rho_max]; gamma < 1 needs a positive floor.
double relax_rate_a(const PSystemModel& model, double rho_min = 0.0);

// Momentum outtake E(t) <= 0 from the trapezoidal profile.
double outtake(double t, const OuttakeSchedule& s);

LinearCoupling build_linear_coupling(const CouplingApproach& approach,
                                     double e_value);

GeneralCoupling build_coupling(const CouplingApproach& approach, double e_value,
                               double a);

// Closed-form Sigma and coupling data for the linear approaches 1-3
// (B_R = B_L = I, A_1 = A_2 = aI).
RiemannSolution solve_linear_psystem(const CouplingApproach& approach,
                                     const RelaxState& q0_minus,
                                     const RelaxState& q0_plus, double a,
                                     double e_value);

// Sequential closed-form solver for the nonlinear approach 4.
RiemannSolution solve_approach4(const RelaxState& q0_minus,
                                const RelaxState& q0_plus, double a,
                                double e_value);

// Original coupling condition: momentum jump by E and continuous pressure.
Vec psi_u(const StateVec& u_r, const StateVec& u_l, double e_value,
          const PSystemModel& model);

// Constants of the reference experiment.
struct Experiment {
  double alpha = 146820.4;
  double gamma = 1.0;
  double rho0 = 1.0;
  double momentum0 = 1.0;
  double x_min = -200.0;
  double x_max = 200.0;
  double cfl = 0.49;
  std::vector<double> output_times{0.0716, 0.2864, 0.55};
  double end_time = 0.55;
  OuttakeSchedule schedule{};
};

}  // namespace ccs::psystem
