#pragma once

#include "ccs/core.hpp"

namespace ccs {

// Affine linear coupling  Psi_Q[Q_R, Q_L] = B_R Q_R - B_L Q_L - P.
struct LinearCoupling {
  Mat b_r;  // 2n x 2n
  Mat b_l;  // 2n x 2n
  Vec p;    // 2n
};

// General coupling residual Psi_Q with l = 2n, plus the preconditioner
// A(Q0) used by the fixed-point iteration. An empty preconditioner selects
// Newton with a finite-difference Jacobian.
struct GeneralCoupling {
  std::function<Vec(const RelaxState& q_r, const RelaxState& q_l)> residual;
  std::function<Mat(const RelaxState& q0_minus, const RelaxState& q0_plus,
                    const Vec& sigma)>
      preconditioner;
  bool differentiable = true;
};

struct RiemannSolution {
  RelaxState q_r;
  RelaxState q_l;
  StateVec sigma_minus;
  StateVec sigma_plus;
  double residual_norm = 0.0;
  int iterations = 0;
};

struct RiemannSolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Defaults for the fixed-point solver (absolute inf-norm residual).
inline constexpr double kRsTolerance = 1e-12;
inline constexpr int kRsMaxIterations = 100;
inline constexpr double kConditionLimit = 1e12;

GeneralCoupling as_general(const LinearCoupling& c);

RiemannSolution solve_linear(const LinearCoupling& c, const RelaxState& q0_minus,
                             const RelaxState& q0_plus, const RelaxMatrix& a_left,
                             const RelaxMatrix& a_right);

// Inverse of [[b11,b12],[b21,b22]] via the block LU closed form; throws when
// b11 or the Schur complement is singular so the caller can fall back to a
// pivoted dense solve.
Mat block_lu_inverse(const Mat& b11, const Mat& b12, const Mat& b21, const Mat& b22);

RiemannSolution solve_fixed_point(const GeneralCoupling& c,
                                  const RelaxState& q0_minus,
                                  const RelaxState& q0_plus,
                                  const RelaxMatrix& a_left,
                                  const RelaxMatrix& a_right,
                                  const Vec& sigma0 = {},
                                  double tol = kRsTolerance,
                                  int max_iter = kRsMaxIterations);

// Q_R = Q_L with flux equality; requires A_1 = A_2.
RiemannSolution solve_kirchhoff(const RelaxState& q0_minus, const RelaxState& q0_plus,
                                const RelaxMatrix& a);

// max over samples of || I - A(Q0) D_Sigma Psi~ ||_inf; < 1 certifies the
// contraction hypothesis on the sampled set.
double contraction_bound(const GeneralCoupling& c, const RelaxState& q0_minus,
                         const RelaxState& q0_plus, const RelaxMatrix& a_left,
                         const RelaxMatrix& a_right,
                         const std::vector<Vec>& sigma_samples);

struct ConsistencyCounterexample {
  StateVec u_r, u_l;
  double psi_u_norm = 0.0;
  double psi_q_norm = 0.0;
};

struct ConsistencyReport {
  bool forward_ok = true;
  std::vector<ConsistencyCounterexample> forward_counterexamples;
  std::vector<ConsistencyCounterexample> reverse_counterexamples;
  double kappa = 1.0;
};

// Checks the two directions of the consistency equivalence on samples:
// Psi_U = 0 must imply the lifted Psi_Q = 0 and vice versa, with the lift
// V_i = F_i(U_i).
ConsistencyReport check_consistency(
    const std::function<Vec(const StateVec&, const StateVec&)>& psi_u,
    const GeneralCoupling& c, const FluxModel& flux_left,
    const FluxModel& flux_right,
    const std::vector<std::pair<StateVec, StateVec>>& u_samples, double tol);

// Parametrized residual Psi~[Sigma; Q0] for a general coupling.
Vec parametrized_residual(const GeneralCoupling& c, const Vec& sigma,
                          const RelaxState& q0_minus, const RelaxState& q0_plus,
                          const RelaxMatrix& a_left, const RelaxMatrix& a_right);

// Central finite-difference Jacobian of Psi~ in Sigma.
Mat parametrized_jacobian_fd(const GeneralCoupling& c, const Vec& sigma,
                             const RelaxState& q0_minus, const RelaxState& q0_plus,
                             const RelaxMatrix& a_left, const RelaxMatrix& a_right);

}  // namespace ccs
