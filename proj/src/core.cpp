#include "ccs/core.hpp"

namespace ccs {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

EigenStructure eigenstructure(const RelaxMatrix& a) {
  const std::size_t n = a.dim();
  EigenStructure es;
  es.r_minus = Mat(2 * n, n);
  es.r_plus = Mat(2 * n, n);
  es.l_minus = Mat(n, 2 * n);
  es.l_plus = Mat(n, 2 * n);
  es.lambdas.resize(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = a.sqrt_diag()[j];
    const double is = a.inv_sqrt_diag()[j];
    es.lambdas[j] = -s;
    es.lambdas[n + j] = s;
    // R^- stacks -(sqrt A)^-1 over I, R^+ stacks (sqrt A)^-1 over I
    es.r_minus(j, j) = -is;
    es.r_minus(n + j, j) = 1.0;
    es.r_plus(j, j) = is;
    es.r_plus(n + j, j) = 1.0;
    // L∓ = [∓ sqrt(A)/2, I/2]
    es.l_minus(j, j) = -0.5 * s;
    es.l_minus(j, n + j) = 0.5;
    es.l_plus(j, j) = 0.5 * s;
    es.l_plus(j, n + j) = 0.5;
  }
  return es;
}

std::pair<StateVec, StateVec> characteristic_vars(const RelaxState& q,
                                                  const RelaxMatrix& a) {
  require(q.u.size() == q.v.size() && q.u.size() == a.dim(),
          "characteristic_vars: dimension mismatch");
  const std::size_t n = a.dim();
  StateVec wm(n), wp(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = a.sqrt_diag()[j];
    wm[j] = 0.5 * (q.v[j] - s * q.u[j]);
    wp[j] = 0.5 * (q.v[j] + s * q.u[j]);
  }
  return {wm, wp};
}

RelaxState reconstruct_from_characteristics(const StateVec& w_minus,
                                            const StateVec& w_plus,
                                            const RelaxMatrix& a) {
  require(w_minus.size() == w_plus.size() && w_minus.size() == a.dim(),
          "reconstruct: dimension mismatch");
  const std::size_t n = a.dim();
  RelaxState q{StateVec(n), StateVec(n)};
  for (std::size_t j = 0; j < n; ++j) {
    q.u[j] = a.inv_sqrt_diag()[j] * (w_plus[j] - w_minus[j]);
    q.v[j] = w_plus[j] + w_minus[j];
  }
  return q;
}

SubcharReport check_subcharacteristic(const RelaxMatrix& a, const FluxModel& model,
                                      const std::vector<StateVec>& samples,
                                      double tol_psd) {
  const std::size_t n = a.dim();
  SubcharReport report;
  for (const StateVec& u : samples) {
    const Mat df = model.jacobian(u);
    Mat m = Mat::diagonal(a.diag()) - df * df;
    // symmetric part carries the quadratic form
    Mat sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (m(i, j) + m(j, i));
    const Vec ev = symmetric_eigenvalues(sym);
    double lo = ev[0];
    for (double e : ev) lo = std::min(lo, e);
    if (lo < report.worst_eigenvalue) {
      report.worst_eigenvalue = lo;
      report.worst_state = u;
    }
    if (lo < -tol_psd) report.ok = false;
  }
  return report;
}

std::pair<RelaxState, RelaxState> lax_parametrize(
    const StateVec& sigma_minus, const StateVec& sigma_plus,
    const RelaxState& q0_minus, const RelaxState& q0_plus,
    const RelaxMatrix& a_left, const RelaxMatrix& a_right) {
  const std::size_t n = a_left.dim();
  require(sigma_minus.size() == n && sigma_plus.size() == n &&
              q0_minus.dim() == n && q0_plus.dim() == n && a_right.dim() == n,
          "lax_parametrize: dimension mismatch");
  RelaxState qr{StateVec(n), StateVec(n)}, ql{StateVec(n), StateVec(n)};
  for (std::size_t j = 0; j < n; ++j) {
    qr.u[j] = q0_minus.u[j] - a_left.inv_sqrt_diag()[j] * sigma_minus[j];
    qr.v[j] = q0_minus.v[j] + sigma_minus[j];
    ql.u[j] = q0_plus.u[j] + a_right.inv_sqrt_diag()[j] * sigma_plus[j];
    ql.v[j] = q0_plus.v[j] + sigma_plus[j];
  }
  return {qr, ql};
}

}  // namespace ccs
