#include "ccs/psystem.hpp"

namespace ccs::psystem {

StateVec psystem_flux(const StateVec& u, const PSystemModel& model) {
  const double rho = u[0], mom = u[1];
  if (rho < 0.0) throw std::domain_error("psystem_flux: negative density");
  if (rho == 0.0 && mom != 0.0)
    throw std::domain_error("psystem_flux: nonzero momentum at vacuum");
  const double convective = (rho == 0.0) ? 0.0 : mom * mom / rho;
  return {mom, convective + model.pressure(rho)};
}

Mat psystem_jacobian(const StateVec& u, const PSystemModel& model) {
  const double rho = u[0], mom = u[1];
  if (rho <= 0.0) throw std::domain_error("psystem_jacobian: requires rho > 0");
  const double v = mom / rho;
  Mat df(2, 2);
  df(0, 0) = 0.0;
  df(0, 1) = 1.0;
  df(1, 0) = -v * v + model.pressure_derivative(rho);
  df(1, 1) = 2.0 * v;
  return df;
}

FluxModel make_flux_model(const PSystemModel& model) {
  FluxModel fm;
  fm.dim = 2;
  fm.flux = [model](const StateVec& u) { return psystem_flux(u, model); };
  fm.jacobian = [model](const StateVec& u) { return psystem_jacobian(u, model); };
  fm.box_lo = {1e-3, -model.rho_max};
  fm.box_hi = {model.rho_max, model.rho_max};
  return fm;
}

double relax_rate_a(const PSystemModel& model, double rho_min) {
  double a;
  if (model.gamma >= 1.0) {
    a = model.pressure_derivative(model.rho_max);
  } else if (rho_min > 0.0) {
    a = model.pressure_derivative(rho_min);
  } else {
    throw std::domain_error(
        "relax_rate_a: p' unbounded for gamma < 1 without a density floor");
  }
  if (!(a > 0.0)) throw std::domain_error("relax_rate_a: nonpositive rate");
  return a;
}

double outtake(double t, const OuttakeSchedule& s) {
  double minus_e;
  if (t < s.ramp_down_start) {
    minus_e = std::min(s.plateau, s.ramp_rate * t);
  } else {
    minus_e = std::max(0.0, -s.ramp_rate * t + s.ramp_rate * s.zero_time);
  }
  return -minus_e;
}

LinearCoupling build_linear_coupling(const CouplingApproach& approach,
                                     double e_value) {
  LinearCoupling c;
  c.b_r = Mat::identity(4);
  c.b_l = Mat::identity(4);
  c.p = {0.0, approach.beta1 * e_value, approach.beta2 * e_value, 0.0};
  return c;
}

GeneralCoupling build_coupling(const CouplingApproach& approach, double e_value,
                               double a) {
  (void)a;
  if (!approach.nonlinear_v2) return as_general(build_linear_coupling(approach, e_value));
  const Vec p = {0.0, approach.beta1 * e_value, approach.beta2 * e_value, 0.0};
  GeneralCoupling g;
  g.residual = [p, e_value](const RelaxState& q_r, const RelaxState& q_l) {
    const double rho_l = q_l.u[0];
    if (std::abs(rho_l) < kRhoFloor)
      throw RiemannSolverError("approach-4 coupling: vacuum density at interface");
    const double gv2 = e_value * (2.0 * q_l.u[1] + e_value) / rho_l;
    Vec r = q_r.stacked() - q_l.stacked() - p;
    r[3] -= gv2;
    return r;
  };
  g.differentiable = true;
  return g;
}

RiemannSolution solve_linear_psystem(const CouplingApproach& approach,
                                     const RelaxState& q0_minus,
                                     const RelaxState& q0_plus, double a,
                                     double e_value) {
  const double s = std::sqrt(a);
  const Vec pu = {0.0, approach.beta1 * e_value};
  const Vec pv = {approach.beta2 * e_value, 0.0};
  RiemannSolution sol;
  sol.sigma_minus.resize(2);
  sol.sigma_plus.resize(2);
  for (std::size_t j = 0; j < 2; ++j) {
    const double du = pu[j] + q0_plus.u[j] - q0_minus.u[j];
    const double dv = pv[j] + q0_plus.v[j] - q0_minus.v[j];
    sol.sigma_minus[j] = -0.5 * s * du + 0.5 * dv;
    sol.sigma_plus[j] = -0.5 * s * du - 0.5 * dv;
  }
  const RelaxMatrix am({a, a}, Side::left), ap({a, a}, Side::right);
  std::tie(sol.q_r, sol.q_l) = lax_parametrize(sol.sigma_minus, sol.sigma_plus,
                                               q0_minus, q0_plus, am, ap);
  const GeneralCoupling c = build_coupling(approach, e_value, a);
  sol.residual_norm = norm_inf(c.residual(sol.q_r, sol.q_l));
  sol.iterations = 0;
  return sol;
}

RiemannSolution solve_approach4(const RelaxState& q0_minus,
                                const RelaxState& q0_plus, double a,
                                double e_value) {
  const double s = std::sqrt(a);
  const double e = e_value;
  // d = U0- - U0+ - P^U, rhs = V0+ - V0- + P^V with P^U=(0,E), P^V=(E,0)
  const double d1 = q0_minus.u[0] - q0_plus.u[0];
  const double d2 = q0_minus.u[1] - q0_plus.u[1] - e;
  const double rhs1 = q0_plus.v[0] - q0_minus.v[0] + e;
  const double rhs2 = q0_plus.v[1] - q0_minus.v[1];

  const double sigma1_plus = 0.5 * (s * d1 - rhs1);
  const double rho_l = q0_plus.u[0] + sigma1_plus / s;
  if (rho_l <= kRhoFloor)
    throw RiemannSolverError("approach-4 RS: vacuum density at interface");
  const double coeff = -2.0 - 2.0 * e / (s * rho_l);
  if (std::abs(coeff) < 1e-12)
    throw RiemannSolverError("approach-4 RS: degenerate linear coefficient");
  const double sigma2_plus =
      (rhs2 - s * d2 + e * (2.0 * q0_plus.u[1] + e) / rho_l) / coeff;

  RiemannSolution sol;
  sol.sigma_plus = {sigma1_plus, sigma2_plus};
  sol.sigma_minus = {s * d1 - sigma1_plus, s * d2 - sigma2_plus};
  const RelaxMatrix am({a, a}, Side::left), ap({a, a}, Side::right);
  std::tie(sol.q_r, sol.q_l) = lax_parametrize(sol.sigma_minus, sol.sigma_plus,
                                               q0_minus, q0_plus, am, ap);
  const GeneralCoupling c = build_coupling(CouplingApproach::make(4), e_value, a);
  sol.residual_norm = norm_inf(c.residual(sol.q_r, sol.q_l));
  sol.iterations = 0;
  return sol;
}

Vec psi_u(const StateVec& u_r, const StateVec& u_l, double e_value,
          const PSystemModel& model) {
  return {u_r[1] - u_l[1] - e_value,
          model.pressure(u_r[0]) - model.pressure(u_l[0])};
}

}  // namespace ccs::psystem
