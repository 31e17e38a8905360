#include <doctest.h>

#include <cmath>

#include "hyperdiam/errors.hpp"
#include "hyperdiam/metrics.hpp"
#include "hyperdiam/oracle.hpp"
#include "test_support.hpp"

using namespace hyperdiam;

TEST_CASE("exact law of the triangle") {
  const auto law = enumerate_exact(3, 2, 0.5, 1);
  // diam = 1 iff complete: p^3.
  CHECK(law.diameter_marginal.at(1) == doctest::Approx(0.125).epsilon(1e-14));
  // W at d=1 counts absent edges: Binomial(3, 1/2).
  CHECK(law.remote_marginal.at(0) == doctest::Approx(1.0 / 8).epsilon(1e-14));
  CHECK(law.remote_marginal.at(1) == doctest::Approx(3.0 / 8).epsilon(1e-14));
  CHECK(law.remote_marginal.at(2) == doctest::Approx(3.0 / 8).epsilon(1e-14));
  CHECK(law.remote_marginal.at(3) == doctest::Approx(1.0 / 8).epsilon(1e-14));
  CHECK(std::fabs(law.total_probability - 1.0) <= 1e-12);
}

TEST_CASE("exact law: binomial W for asymmetric p") {
  const auto law = enumerate_exact(3, 2, 0.3, 1);
  const double q = 0.7;
  CHECK(law.remote_marginal.at(0) ==
        doctest::Approx(0.3 * 0.3 * 0.3).epsilon(1e-13));
  CHECK(law.remote_marginal.at(3) == doctest::Approx(q * q * q).epsilon(1e-13));
  CHECK(law.single_pair_remote_prob == doctest::Approx(q).epsilon(1e-13));
}

TEST_CASE("probabilities close to one and exchangeable mean") {
  for (const auto& [n, t, p, d] :
       {std::tuple{5u, 2u, 0.3, 2u}, std::tuple{5u, 3u, 0.25, 1u},
        std::tuple{4u, 2u, 0.9, 1u}}) {
    const auto law = enumerate_exact(n, t, p, d);
    CHECK(std::fabs(law.total_probability - 1.0) <= 1e-12);
    const double pairs = n * (n - 1) / 2.0;
    CHECK(std::fabs(law.mean_remote_from_joint() -
                    pairs * law.single_pair_remote_prob) <= 1e-12);
  }
}

TEST_CASE("exact coupling monotonicity in p") {
  for (std::uint32_t r = 1; r <= 3; ++r) {
    double prev = -1.0;
    for (int pi = 1; pi <= 9; ++pi) {
      const double cur = enumerate_exact(4, 2, pi / 10.0, 2).diameter_cdf(r);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("enumeration cap is enforced") {
  CHECK_THROWS_AS(enumerate_exact(10, 3, 0.5, 1), FeasibilityError);
  CHECK_THROWS_AS(enumerate_exact(6, 2, 0.5, 1, 14), FeasibilityError);
  CHECK_NOTHROW(enumerate_exact(6, 2, 0.5, 1, 15));  // C(6,2) = 15 just fits
}

TEST_CASE("fkg gap is nonnegative") {
  CHECK(exact_fkg_check(4, 2, 0.5, 1) >= -1e-12);
  CHECK(exact_fkg_check(5, 3, 0.3, 1) >= -1e-12);
  CHECK(exact_fkg_check(5, 2, 0.35, 2) >= -1e-12);
  CHECK(exact_fkg_check(4, 2, 0.0, 1) == doctest::Approx(0.0));
  CHECK(exact_fkg_check(4, 2, 1.0, 1) == doctest::Approx(0.0));
}

TEST_CASE("exact size-biased dominance") {
  const auto r1 = exact_size_biased_check(4, 2, 0.5, 1);
  CHECK(r1.dominance_holds);
  CHECK(r1.mean_w > 0.0);
  const auto r2 = exact_size_biased_check(5, 2, 0.4, 2);
  CHECK(r2.dominance_holds);
  // CDFs are proper: end at 1.
  CHECK(r2.cdf_w_plus.back() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r2.cdf_w_star.back() == doctest::Approx(1.0).epsilon(1e-12));
  // p = 1 leaves no remote pair at d = 1: degenerate.
  CHECK_THROWS_AS(exact_size_biased_check(4, 2, 1.0, 1), ParameterError);
}

TEST_CASE("brute-force path search on hand instances") {
  const UniformHypergraph one(4, 3, {{0, 1, 2}});
  CHECK(brute_force_distance(one, 0, 2) == 1);
  CHECK(brute_force_distance(one, 0, 3) == kUnreachable);
  CHECK(brute_force_distance(one, 0, 0) == 0);

  const UniformHypergraph chain(5, 3, {{0, 1, 2}, {2, 3, 4}});
  CHECK(brute_force_distance(chain, 0, 4) == 2);
  CHECK(brute_force_distance(chain, 1, 3) == 2);
}

TEST_CASE("brute-force equals incidence BFS on random instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::uint32_t t = 2 + seed % 2;
    UniformHypergraph g = testsupport::random_hypergraph(
        8, t, 0.12, 90000 + seed);
    if (g.edge_count() > 12) continue;
    for (std::uint32_t x = 0; x < g.vertex_count(); ++x) {
      const auto brute = brute_force_distances_from(g, x);
      const auto fast = bfs_distances(g, x);
      CHECK(brute == fast.dist);
    }
  }
}

TEST_CASE("brute-force rejects oversized instances") {
  const auto big = testsupport::random_hypergraph(10, 2, 0.9, 5);
  REQUIRE(big.edge_count() > 12);
  CHECK_THROWS_AS(brute_force_distance(big, 0, 1), FeasibilityError);
}
