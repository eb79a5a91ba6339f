#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

#include "ccs/linalg.hpp"

namespace ccs {

using StateVec = Vec;

// Relaxation unknown Q = (U, V).
struct RelaxState {
  StateVec u;
  StateVec v;

  std::size_t dim() const { return u.size(); }

  Vec stacked() const {
    Vec q(u);
    q.insert(q.end(), v.begin(), v.end());
    return q;
  }

  static RelaxState from_stacked(const Vec& q) {
    const std::size_t n = q.size() / 2;
    return {Vec(q.begin(), q.begin() + n), Vec(q.begin() + n, q.end())};
  }
};

enum class Side { left, right };

// Diagonal relaxation matrix A with strictly positive entries.
class RelaxMatrix {
public:
  RelaxMatrix(Vec diag, Side side) : diag_(std::move(diag)), side_(side) {
    if (diag_.empty()) throw std::domain_error("relaxation matrix needs n >= 1");
    sqrt_.resize(diag_.size());
    inv_sqrt_.resize(diag_.size());
    for (std::size_t j = 0; j < diag_.size(); ++j) {
      if (!(diag_[j] > 0.0))
        throw std::domain_error("relaxation matrix entries must be positive");
      sqrt_[j] = std::sqrt(diag_[j]);
      inv_sqrt_[j] = 1.0 / sqrt_[j];
    }
  }

  std::size_t dim() const { return diag_.size(); }
  Side side() const { return side_; }
  const Vec& diag() const { return diag_; }
  const Vec& sqrt_diag() const { return sqrt_; }
  const Vec& inv_sqrt_diag() const { return inv_sqrt_; }

private:
  Vec diag_;
  Side side_;
  Vec sqrt_, inv_sqrt_;
};

// Flux map and Jacobian for one half-axis, with component-wise bounds
// used when sampling admissible states.
struct FluxModel {
  std::size_t dim;
  std::function<StateVec(const StateVec&)> flux;
  std::function<Mat(const StateVec&)> jacobian;
  Vec box_lo, box_hi;
};

// Eigenvector blocks and eigenvalues of S = [[0, I], [A, 0]].
struct EigenStructure {
  Mat r_minus;   // 2n x n
  Mat r_plus;    // 2n x n
  Mat l_minus;   // n x 2n
  Mat l_plus;    // n x 2n
  Vec lambdas;   // -sqrt(a_j) first, then +sqrt(a_j), each block by index j
};

EigenStructure eigenstructure(const RelaxMatrix& a);

// w∓ = (V ∓ sqrt(A) U) / 2
std::pair<StateVec, StateVec> characteristic_vars(const RelaxState& q,
                                                  const RelaxMatrix& a);

RelaxState reconstruct_from_characteristics(const StateVec& w_minus,
                                            const StateVec& w_plus,
                                            const RelaxMatrix& a);

struct SubcharReport {
  bool ok = true;
  double worst_eigenvalue = std::numeric_limits<double>::infinity();
  StateVec worst_state;
};

// Tests A - (DF)^2 >= 0 (symmetric part) on the given samples.
SubcharReport check_subcharacteristic(const RelaxMatrix& a, const FluxModel& model,
                                      const std::vector<StateVec>& samples,
                                      double tol_psd = 1e-10);

// Q_R = Q0- + R1^- Sigma^-,  Q_L = Q0+ + R2^+ Sigma^+
std::pair<RelaxState, RelaxState> lax_parametrize(
    const StateVec& sigma_minus, const StateVec& sigma_plus,
    const RelaxState& q0_minus, const RelaxState& q0_plus,
    const RelaxMatrix& a_left, const RelaxMatrix& a_right);

}  // namespace ccs
