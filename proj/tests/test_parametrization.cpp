#include <doctest.h>

#include <cmath>

#include "hyperdiam/errors.hpp"
#include "hyperdiam/parametrization.hpp"

using namespace hyperdiam;

TEST_CASE("graph mode closed form") {
  const auto rp = solve_p(2, 2, 1.0, 100, RegimeMode::graph_bollobas);
  CHECK(rp.p == doctest::Approx(0.3034854).epsilon(1e-6));
  CHECK(rp.residual <= 1e-12);
  CHECK(static_cast<double>(rp.n_sub_choose) == 99.0);
}

TEST_CASE("hypergraph mode closed form") {
  const auto rp = solve_p(3, 2, 1.0, 300, RegimeMode::hypergraph_general);
  CHECK(static_cast<double>(rp.n_sub_choose) == 44551.0);
  CHECK(rp.p == doctest::Approx(6.5655e-4).epsilon(1e-3));
  CHECK(rp.residual <= 1e-12);
}

TEST_CASE("residuals stay at working precision across a grid") {
  for (std::uint64_t n : {50ULL, 300ULL, 1000ULL, 20000ULL}) {
    for (std::uint32_t d : {2u, 3u, 4u}) {
      const auto g = solve_p(2, d, 1.0, n, RegimeMode::graph_bollobas);
      CHECK(g.residual <= 1e-12);
      const auto h = solve_p(2, d, 1.0, n, RegimeMode::hypergraph_general);
      CHECK(h.residual <= 1e-12);
      if (n >= 300) {
        const auto h3 = solve_p(3, d, 1.0, n, RegimeMode::hypergraph_general);
        CHECK(h3.residual <= 1e-12);
      }
    }
  }
  // Large t exercises the log-domain path: N^d would overflow doubles.
  const auto big = solve_p(12, 3, 2.0, 100000, RegimeMode::hypergraph_general);
  CHECK(big.residual <= 1e-12);
  CHECK(big.p > 0.0);
  CHECK(big.p < 1.0);
}

TEST_CASE("the two t=2 normalizations differ by exactly n/(n-1)") {
  for (std::uint64_t n : {100ULL, 1000ULL, 4321ULL}) {
    for (std::uint32_t d : {2u, 3u}) {
      const auto g = solve_p(2, d, 1.0, n, RegimeMode::graph_bollobas);
      const auto h = solve_p(2, d, 1.0, n, RegimeMode::hypergraph_general);
      const double expect =
          static_cast<double>(n) / static_cast<double>(n - 1);
      CHECK(h.p / g.p == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("solve_p error taxonomy") {
  CHECK_THROWS_AS(solve_p(2, 2, 10000.0, 100, RegimeMode::graph_bollobas),
                  RegimeError);  // c = n^2: nonpositive log
  CHECK_THROWS_AS(solve_p(2, 2, 20000.0, 100, RegimeMode::graph_bollobas),
                  RegimeError);
  CHECK_THROWS_AS(solve_p(3, 2, 1.0, 100, RegimeMode::graph_bollobas),
                  ParameterError);  // graph mode needs t = 2
  CHECK_THROWS_AS(solve_p(2, 2, 0.01, 3, RegimeMode::graph_bollobas),
                  RegimeError);  // p would reach 1
  CHECK_THROWS_AS(solve_p(2, 1, 1.0, 100, RegimeMode::graph_bollobas),
                  ParameterError);
  CHECK_THROWS_AS(solve_p(2, 2, -1.0, 100, RegimeMode::graph_bollobas),
                  ParameterError);
  CHECK_THROWS_AS(solve_p(2, 2, 1.0, 2, RegimeMode::graph_bollobas),
                  ParameterError);  // n must exceed t
}

TEST_CASE("p is strictly decreasing in c") {
  double prev = 1.0;
  for (double c : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto rp = solve_p(2, 2, c, 500, RegimeMode::graph_bollobas);
    CHECK(rp.p < prev);
    prev = rp.p;
  }
}

TEST_CASE("acceptance-grid parameters stay in the meaningful regime") {
  for (std::uint64_t n : {250ULL, 500ULL, 1000ULL, 2000ULL}) {
    CHECK(solve_p(2, 2, 1.0, n, RegimeMode::graph_bollobas).p < 0.5);
  }
  CHECK(solve_p(3, 2, 1.0, 300, RegimeMode::hypergraph_general).p < 0.5);
}

TEST_CASE("expected remote pairs") {
  RegimeParams rp;
  rp.n = 1000;
  rp.c = 2.0;
  CHECK(expected_remote_pairs(rp) == doctest::Approx(0.999).epsilon(1e-12));
  rp.c = 1e-12;
  CHECK(expected_remote_pairs(rp) <= 1e-12);
  rp.n = 100000000;
  rp.c = 1.0;
  CHECK(expected_remote_pairs(rp) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("target probabilities") {
  const auto [p2, q2] = target_probabilities(2.0);
  CHECK(p2 == doctest::Approx(0.3678794).epsilon(1e-6));
  CHECK(q2 == doctest::Approx(0.6321206).epsilon(1e-6));
  const auto [p1, q1] = target_probabilities(1.0);
  CHECK(p1 == doctest::Approx(0.6065307).epsilon(1e-6));
  CHECK(q1 == doctest::Approx(0.3934693).epsilon(1e-6));
  const auto [p0, q0] = target_probabilities(1e-14);
  CHECK(p0 == doctest::Approx(1.0));
  CHECK(q0 == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(p0 + q0 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(target_probabilities(0.0), ParameterError);
}

TEST_CASE("analytic side-check for the d=2 graph mean") {
  const auto rp = solve_p(2, 2, 1.0, 1000, RegimeMode::graph_bollobas);
  CHECK(exact_mean_remote_pairs_graph_d2(1000, rp.p) ==
        doctest::Approx(0.411606489).epsilon(1e-6));
}
