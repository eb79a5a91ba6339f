#include "ccs/riemann.hpp"

namespace ccs {

namespace {

// B_R R~- - B_L R~+ assembled column-wise from the truncated eigenvector blocks.
Mat system_matrix(const LinearCoupling& c, const RelaxMatrix& a_left,
                  const RelaxMatrix& a_right) {
  const std::size_t n = a_left.dim();
  Mat b(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // column j of B_R R_1^-: -(sqrt A1)^-1 in row j, 1 in row n+j
      b(i, j) = -c.b_r(i, j) * a_left.inv_sqrt_diag()[j] + c.b_r(i, n + j);
      // column n+j of -B_L R_2^+
      b(i, n + j) = -(c.b_l(i, j) * a_right.inv_sqrt_diag()[j] + c.b_l(i, n + j));
    }
  return b;
}

Vec linear_residual(const LinearCoupling& c, const RelaxState& q_r,
                    const RelaxState& q_l) {
  return (c.b_r * q_r.stacked()) - (c.b_l * q_l.stacked()) - c.p;
}

}  // namespace

GeneralCoupling as_general(const LinearCoupling& c) {
  GeneralCoupling g;
  g.residual = [c](const RelaxState& q_r, const RelaxState& q_l) {
    return linear_residual(c, q_r, q_l);
  };
  g.differentiable = true;
  return g;
}

RiemannSolution solve_linear(const LinearCoupling& c, const RelaxState& q0_minus,
                             const RelaxState& q0_plus, const RelaxMatrix& a_left,
                             const RelaxMatrix& a_right) {
  const std::size_t n = a_left.dim();
  const Mat b = system_matrix(c, a_left, a_right);
  if (condition_inf(b) > kConditionLimit)
    throw RiemannSolverError("RS ill-posed for this coupling: singular system matrix");
  const Vec rhs = c.p + (c.b_l * q0_plus.stacked()) - (c.b_r * q0_minus.stacked());
  const Vec sigma = solve(b, rhs);
  RiemannSolution sol;
  sol.sigma_minus.assign(sigma.begin(), sigma.begin() + n);
  sol.sigma_plus.assign(sigma.begin() + n, sigma.end());
  std::tie(sol.q_r, sol.q_l) = lax_parametrize(sol.sigma_minus, sol.sigma_plus,
                                               q0_minus, q0_plus, a_left, a_right);
  sol.residual_norm = norm_inf(linear_residual(c, sol.q_r, sol.q_l));
  sol.iterations = 0;
  return sol;
}

Mat block_lu_inverse(const Mat& b11, const Mat& b12, const Mat& b21, const Mat& b22) {
  const std::size_t n = b11.rows();
  Mat inv_b11;
  try {
    inv_b11 = inverse(b11);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "block LU: singular upper-left block, fall back to pivoted dense solve");
  }
  const Mat schur = b22 - b21 * inv_b11 * b12;
  Mat inv_s;
  try {
    inv_s = inverse(schur);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "block LU: singular Schur complement, fall back to pivoted dense solve");
  }
  const Mat top_left = inv_b11 * (Mat::identity(n) + b12 * inv_s * b21 * inv_b11);
  const Mat top_right = (inv_b11 * b12 * inv_s) * -1.0;
  const Mat bottom_left = (inv_s * b21 * inv_b11) * -1.0;
  Mat out(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = top_left(i, j);
      out(i, n + j) = top_right(i, j);
      out(n + i, j) = bottom_left(i, j);
      out(n + i, n + j) = inv_s(i, j);
    }
  return out;
}

Vec parametrized_residual(const GeneralCoupling& c, const Vec& sigma,
                          const RelaxState& q0_minus, const RelaxState& q0_plus,
                          const RelaxMatrix& a_left, const RelaxMatrix& a_right) {
  const std::size_t n = a_left.dim();
  const StateVec sm(sigma.begin(), sigma.begin() + n);
  const StateVec sp(sigma.begin() + n, sigma.end());
  auto [q_r, q_l] = lax_parametrize(sm, sp, q0_minus, q0_plus, a_left, a_right);
  return c.residual(q_r, q_l);
}

Mat parametrized_jacobian_fd(const GeneralCoupling& c, const Vec& sigma,
                             const RelaxState& q0_minus, const RelaxState& q0_plus,
                             const RelaxMatrix& a_left, const RelaxMatrix& a_right) {
  const std::size_t m = sigma.size();
  Mat jac(m, m);
  Vec s = sigma;
  for (std::size_t k = 0; k < m; ++k) {
    const double h = 1e-6 * std::max(1.0, std::abs(sigma[k]));
    s[k] = sigma[k] + h;
    const Vec fp = parametrized_residual(c, s, q0_minus, q0_plus, a_left, a_right);
    s[k] = sigma[k] - h;
    const Vec fm = parametrized_residual(c, s, q0_minus, q0_plus, a_left, a_right);
    s[k] = sigma[k];
    for (std::size_t i = 0; i < m; ++i) jac(i, k) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return jac;
}

RiemannSolution solve_fixed_point(const GeneralCoupling& c,
                                  const RelaxState& q0_minus,
                                  const RelaxState& q0_plus,
                                  const RelaxMatrix& a_left,
                                  const RelaxMatrix& a_right, const Vec& sigma0,
                                  double tol, int max_iter) {
  const std::size_t n = a_left.dim();
  Vec sigma = sigma0.empty() ? Vec(2 * n, 0.0) : sigma0;
  Vec res = parametrized_residual(c, sigma, q0_minus, q0_plus, a_left, a_right);
  int iter = 0;
  while (norm_inf(res) > tol) {
    if (iter >= max_iter)
      throw RiemannSolverError("fixed-point iteration did not converge, residual " +
                               std::to_string(norm_inf(res)));
    Mat precond;
    if (c.preconditioner) {
      precond = c.preconditioner(q0_minus, q0_plus, sigma);
    } else {
      // Newton: invert the finite-difference Jacobian at the current iterate
      const Mat jac =
          parametrized_jacobian_fd(c, sigma, q0_minus, q0_plus, a_left, a_right);
      try {
        precond = inverse(jac);
      } catch (const SingularMatrixError&) {
        throw RiemannSolverError("fixed-point iteration: singular Jacobian");
      }
    }
    sigma = sigma - precond * res;
    for (double x : sigma)
      if (!std::isfinite(x))
        throw RiemannSolverError("fixed-point iteration diverged to non-finite state");
    res = parametrized_residual(c, sigma, q0_minus, q0_plus, a_left, a_right);
    ++iter;
  }
  RiemannSolution sol;
  sol.sigma_minus.assign(sigma.begin(), sigma.begin() + n);
  sol.sigma_plus.assign(sigma.begin() + n, sigma.end());
  std::tie(sol.q_r, sol.q_l) = lax_parametrize(sol.sigma_minus, sol.sigma_plus,
                                               q0_minus, q0_plus, a_left, a_right);
  sol.residual_norm = norm_inf(res);
  sol.iterations = iter;
  return sol;
}

RiemannSolution solve_kirchhoff(const RelaxState& q0_minus, const RelaxState& q0_plus,
                                const RelaxMatrix& a) {
  const std::size_t n = a.dim();
  if (q0_minus.dim() != n || q0_plus.dim() != n)
    throw std::invalid_argument("solve_kirchhoff: dimension mismatch");
  RiemannSolution sol;
  sol.q_r.u.resize(n);
  sol.q_r.v.resize(n);
  sol.sigma_minus.resize(n);
  sol.sigma_plus.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = a.sqrt_diag()[j];
    const double is = a.inv_sqrt_diag()[j];
    sol.q_r.u[j] = 0.5 * (q0_minus.u[j] + q0_plus.u[j]) +
                   0.5 * is * (q0_minus.v[j] - q0_plus.v[j]);
    sol.q_r.v[j] = 0.5 * (q0_minus.v[j] + q0_plus.v[j]) +
                   0.5 * s * (q0_minus.u[j] - q0_plus.u[j]);
    sol.sigma_minus[j] = sol.q_r.v[j] - q0_minus.v[j];
    sol.sigma_plus[j] = sol.q_r.v[j] - q0_plus.v[j];
  }
  sol.q_l = sol.q_r;
  sol.residual_norm = 0.0;
  sol.iterations = 0;
  return sol;
}

double contraction_bound(const GeneralCoupling& c, const RelaxState& q0_minus,
                         const RelaxState& q0_plus, const RelaxMatrix& a_left,
                         const RelaxMatrix& a_right,
                         const std::vector<Vec>& sigma_samples) {
  double bound = 0.0;
  for (const Vec& sigma : sigma_samples) {
    const Mat jac =
        parametrized_jacobian_fd(c, sigma, q0_minus, q0_plus, a_left, a_right);
    Mat precond;
    if (c.preconditioner) {
      precond = c.preconditioner(q0_minus, q0_plus, sigma);
    } else {
      precond = inverse(jac);
    }
    const Mat m = Mat::identity(sigma.size()) - precond * jac;
    bound = std::max(bound, m.norm_inf());
  }
  return bound;
}

ConsistencyReport check_consistency(
    const std::function<Vec(const StateVec&, const StateVec&)>& psi_u,
    const GeneralCoupling& c, const FluxModel& flux_left,
    const FluxModel& flux_right,
    const std::vector<std::pair<StateVec, StateVec>>& u_samples, double tol) {
  ConsistencyReport report;
  report.kappa = 1e3;
  for (const auto& [u_r, u_l] : u_samples) {
    const RelaxState q_r{u_r, flux_left.flux(u_r)};
    const RelaxState q_l{u_l, flux_right.flux(u_l)};
    const double psi_u_norm = norm_inf(psi_u(u_r, u_l));
    const double psi_q_norm = norm_inf(c.residual(q_r, q_l));
    if (psi_u_norm <= tol && psi_q_norm > tol * report.kappa) {
      report.forward_ok = false;
      report.forward_counterexamples.push_back({u_r, u_l, psi_u_norm, psi_q_norm});
    }
    if (psi_q_norm <= tol && psi_u_norm > tol * report.kappa) {
      report.reverse_counterexamples.push_back({u_r, u_l, psi_u_norm, psi_q_norm});
    }
  }
  return report;
}

}  // namespace ccs
