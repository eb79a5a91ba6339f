#pragma once

#include "ccs/linalg.hpp"
#include "ccs/core.hpp"

namespace ccs::diagnostics {

// Interface coupling-error time series; weights carry the actual step
// increments so shortened landing steps enter the quadrature correctly.
struct ErrorSeries {
  Vec times;
  Vec e1;  // momentum-condition error
  Vec e2;  // density-condition error
  Vec weights;
  double dt = 0.0;  // nominal step
};

// E^1 = |(U_{-1} - U_0)_2 - E|, E^2 = |(U_{-1} - U_0)_1|
std::pair<double, double> coupling_errors(const StateVec& u_left,
                                          const StateVec& u_right,
                                          double e_value);

ErrorSeries build_error_series(const Vec& times,
                               const std::vector<StateVec>& trace_left,
                               const std::vector<StateVec>& trace_right,
                               const std::function<double(double)>& e_of_t,
                               double dt_nominal);

// Discrete L^1-in-time norms of both error components over [0, horizon].
std::pair<double, double> l1_time_norm(const ErrorSeries& s,
                                       double horizon = 0.55);

// EOC_k = log2(value_k / value_{k+1}) for consecutive rows under mesh doubling.
std::vector<double> eoc(const std::vector<std::pair<std::size_t, double>>& errors);

}  // namespace ccs::diagnostics
