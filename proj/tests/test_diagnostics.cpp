#include <doctest.h>

#include <cmath>
#include <random>

#include "ccs/diagnostics.hpp"

using namespace ccs;
using namespace ccs::diagnostics;

TEST_CASE("coupling_errors") {
  SUBCASE("exact coupling data gives zero errors") {
    const auto [e1, e2] = coupling_errors({1.0, 0.5}, {1.0, 1.0}, -0.5);
    CHECK(e1 == 0.0);
    CHECK(e2 == 0.0);
  }
  SUBCASE("sign convention: left-minus-right against E") {
    // (u_left - u_right)_2 = 0.7 and E = -0.5 -> E1 = 1.2
    const auto [e1, e2] = coupling_errors({2.0, 1.7}, {1.5, 1.0}, -0.5);
    CHECK(e1 == doctest::Approx(1.2));
    CHECK(e2 == doctest::Approx(0.5));
  }
  SUBCASE("absolute values") {
    const auto [e1, e2] = coupling_errors({1.0, 0.0}, {3.0, 1.0}, 0.0);
    CHECK(e1 == doctest::Approx(1.0));
    CHECK(e2 == doctest::Approx(2.0));
  }
  SUBCASE("only n = 2 states are accepted") {
    CHECK_THROWS_AS(coupling_errors({1.0}, {1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(coupling_errors({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("build_error_series") {
  const Vec times{0.0, 0.1, 0.25, 0.3};
  const std::vector<StateVec> left{{1.0, 1.0}, {1.0, 0.8}, {1.2, 0.5}, {1.0, 1.0}};
  const std::vector<StateVec> right{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  const auto e_of_t = [](double) { return -0.5; };
  const auto s = build_error_series(times, left, right, e_of_t, 0.05);
  REQUIRE(s.times.size() == 4);
  CHECK(s.e1[0] == doctest::Approx(0.5));
  CHECK(s.e1[1] == doctest::Approx(0.3));
  CHECK(s.e2[2] == doctest::Approx(0.2));
  // weights are the actual step sizes, last one the nominal dt
  CHECK(s.weights[0] == doctest::Approx(0.1));
  CHECK(s.weights[1] == doctest::Approx(0.15));
  CHECK(s.weights[2] == doctest::Approx(0.05));
  CHECK(s.weights[3] == doctest::Approx(0.05));
}

TEST_CASE("l1_time_norm") {
  SUBCASE("constant integrand on a uniform series") {
    const std::size_t m = 56;
    ErrorSeries s;
    s.dt = 0.01;
    for (std::size_t k = 0; k < m; ++k) {
      s.times.push_back(0.01 * static_cast<double>(k));
      s.e1.push_back(2.0);
      s.e2.push_back(3.0);
      s.weights.push_back(0.01);
    }
    const auto [l1, l2] = l1_time_norm(s, 0.55);
    // (k_T + 1) dt c with k_T = 55
    CHECK(l1 == doctest::Approx(0.56 * 2.0));
    CHECK(l2 == doctest::Approx(0.56 * 3.0));
  }
  SUBCASE("samples past the horizon are ignored") {
    ErrorSeries s;
    s.dt = 0.1;
    s.times = {0.0, 0.1, 0.2, 0.8};
    s.e1 = {1.0, 1.0, 1.0, 100.0};
    s.e2 = {0.0, 0.0, 0.0, 0.0};
    s.weights = {0.1, 0.1, 0.6, 0.1};
    const auto [l1, l2] = l1_time_norm(s, 0.2);
    CHECK(l1 == doctest::Approx(0.8));
    CHECK(l2 == 0.0);
  }
  SUBCASE("series must cover the horizon") {
    ErrorSeries s;
    s.times = {0.0, 0.1};
    s.e1 = {0.0, 0.0};
    s.e2 = {0.0, 0.0};
    s.weights = {0.1, 0.1};
    CHECK_THROWS_AS(l1_time_norm(s, 0.55), std::invalid_argument);
  }
  SUBCASE("scaling the errors scales the norm") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    ErrorSeries s;
    s.dt = 0.05;
    for (std::size_t k = 0; k < 20; ++k) {
      s.times.push_back(0.05 * static_cast<double>(k));
      s.e1.push_back(dist(rng));
      s.e2.push_back(dist(rng));
      s.weights.push_back(0.05);
    }
    ErrorSeries scaled = s;
    for (double& x : scaled.e1) x *= 7.0;
    for (double& x : scaled.e2) x *= 7.0;
    const auto [a1, a2] = l1_time_norm(s, 0.9);
    const auto [b1, b2] = l1_time_norm(scaled, 0.9);
    CHECK(b1 == doctest::Approx(7.0 * a1));
    CHECK(b2 == doctest::Approx(7.0 * a2));
  }
}

TEST_CASE("eoc") {
  SUBCASE("exact halving gives order one") {
    const auto r = eoc({{100, 8e-2}, {200, 4e-2}, {400, 2e-2}});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(1.0));
  }
  SUBCASE("reference table row") {
    const auto r = eoc({{100, 1.278e-2}, {200, 6.325e-3}});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1.015).epsilon(5e-3));
  }
  SUBCASE("second order sequence") {
    const auto r = eoc({{50, 1.6e-3}, {100, 4e-4}, {200, 1e-4}});
    CHECK(r[0] == doctest::Approx(2.0));
    CHECK(r[1] == doctest::Approx(2.0));
  }
  SUBCASE("stagnation gives near-zero rates") {
    const auto r = eoc({{100, 9.0e-2}, {200, 9.0e-2}});
    CHECK(r[0] == doctest::Approx(0.0));
  }
  SUBCASE("zero fine error maps to infinity") {
    const auto r = eoc({{100, 1.0}, {200, 0.0}});
    CHECK(std::isinf(r[0]));
  }
  SUBCASE("contract violations") {
    CHECK_THROWS_AS(eoc({{100, 1.0}, {300, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(eoc({{100, -1.0}, {200, 0.5}}), std::invalid_argument);
    CHECK(eoc({{100, 1.0}}).empty());
  }
  SUBCASE("rates are invariant under scaling of the errors") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<std::pair<std::size_t, double>> rows;
      std::size_t cells = 100;
      double err = dist(rng);
      for (int k = 0; k < 4; ++k) {
        rows.push_back({cells, err});
        cells *= 2;
        err *= dist(rng) * 0.5;
      }
      auto scaled = rows;
      for (auto& [c, e] : scaled) e *= 13.0;
      const auto a = eoc(rows);
      const auto b = eoc(scaled);
      for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
    }
  }
}
