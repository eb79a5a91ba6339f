#include "ccs/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace ccs::diagnostics {

std::pair<double, double> coupling_errors(const StateVec& u_left,
                                          const StateVec& u_right,
                                          double e_value) {
  if (u_left.size() != 2 || u_right.size() != 2)
    throw std::invalid_argument("coupling_errors: expects n = 2 states");
  const double e1 = std::abs((u_left[1] - u_right[1]) - e_value);
  const double e2 = std::abs(u_left[0] - u_right[0]);
  return {e1, e2};
}

ErrorSeries build_error_series(const Vec& times,
                               const std::vector<StateVec>& trace_left,
                               const std::vector<StateVec>& trace_right,
                               const std::function<double(double)>& e_of_t,
                               double dt_nominal) {
  const std::size_t m = times.size();
  ErrorSeries s;
  s.dt = dt_nominal;
  s.times = times;
  s.e1.resize(m);
  s.e2.resize(m);
  s.weights.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::tie(s.e1[k], s.e2[k]) =
        coupling_errors(trace_left[k], trace_right[k], e_of_t(times[k]));
    // each sample weighted by the step leaving it; the last one by the
    // nominal step, matching the uniform printed sum up to O(dt)
    s.weights[k] = (k + 1 < m) ? times[k + 1] - times[k] : dt_nominal;
  }
  return s;
}

std::pair<double, double> l1_time_norm(const ErrorSeries& s, double horizon) {
  if (s.times.empty() || s.times.back() < horizon - 1e-12)
    throw std::invalid_argument("l1_time_norm: series does not cover the horizon");
  double l1_e1 = 0.0, l1_e2 = 0.0;
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    if (s.times[k] > horizon + 1e-12) break;
    l1_e1 += s.weights[k] * s.e1[k];
    l1_e2 += s.weights[k] * s.e2[k];
  }
  return {l1_e1, l1_e2};
}

std::vector<double> eoc(const std::vector<std::pair<std::size_t, double>>& errors) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    if (errors[k + 1].first != 2 * errors[k].first)
      throw std::invalid_argument("eoc: cell counts must double between rows");
    const double e0 = errors[k].second, e1 = errors[k + 1].second;
    if (!(e0 > 0.0) || !(e1 >= 0.0))
      throw std::invalid_argument("eoc: errors must be positive");
    out.push_back(e1 == 0.0 ? std::numeric_limits<double>::infinity()
                            : std::log2(e0 / e1));
  }
  return out;
}

}  // namespace ccs::diagnostics
