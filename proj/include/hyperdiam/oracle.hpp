#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "hyperdiam/hypergraph.hpp"
#include "hyperdiam/metrics.hpp"

namespace hyperdiam {

/// Largest C(n, t) the exhaustive enumerators accept by default.
inline constexpr std::uint32_t kOracleDefaultCap = 24;

/// Exact joint law of (diameter, remote-pair count) over all 2^C(n,t)
/// hypergraphs, each weighted p^m (1-p)^(C(n,t)-m). Diameter keys use the
/// kUnreachable encoding for the infinity bucket. Probabilities accumulate
/// through compensated summation so the 1e-12 closure invariants hold.
struct ExactJointDistribution {
  std::uint32_t n = 0;
  std::uint32_t t = 2;
  double p = 0.0;
  std::uint32_t d = 1;

  std::map<std::pair<std::uint32_t, std::uint64_t>, double> joint;
  std::map<std::uint32_t, double> diameter_marginal;
  std::map<std::uint64_t, double> remote_marginal;
  double single_pair_remote_prob = 0.0;  // P(X_alpha = 1) for one fixed pair
  double total_probability = 0.0;

  double mean_remote_from_joint() const;
  /// P(diam <= r) over the finite buckets.
  double diameter_cdf(std::uint32_t r) const;
};

ExactJointDistribution enumerate_exact(std::uint32_t n, std::uint32_t t,
                                       double p, std::uint32_t d,
                                       std::uint32_t cap = kOracleDefaultCap);

/// min over ordered pairs alpha != beta of
/// P(X_alpha = 1, X_beta = 1) - P(X_alpha = 1) P(X_beta = 1), exactly.
/// The Harris-FKG inequality says this is >= 0 for the increasing events
/// {X_alpha = 1}; anything below -1e-12 flags a defect.
double exact_fkg_check(std::uint32_t n, std::uint32_t t, double p,
                       std::uint32_t d, std::uint32_t cap = kOracleDefaultCap);

/// Exact laws of W + 1 - X_J (J uniform over the pair index set, by
/// exchangeability) and of the size-biased W*, with their pointwise CDF gap.
struct SizeBiasedReport {
  double mean_w = 0.0;
  std::vector<double> cdf_w_plus;   // CDF of W + 1 - X_J at 0,1,...
  std::vector<double> cdf_w_star;   // CDF of W*
  double max_cdf_gap = 0.0;         // max_k [CDF(W*) - CDF(W+1-X_J)](k)
  bool dominance_holds = false;     // gap <= 1e-12 everywhere
};

SizeBiasedReport exact_size_biased_check(std::uint32_t n, std::uint32_t t,
                                         double p, std::uint32_t d,
                                         std::uint32_t cap = kOracleDefaultCap);

/// Minimum alternating-sequence length from x to y with distinct vertices and
/// distinct hyperedges, by exhaustive state search (vertex, used-edge set)
/// with memoized pruning. kUnreachable if no such sequence exists.
/// Refuses instances with more than 12 edges.
std::uint32_t brute_force_distance(const UniformHypergraph& g, std::uint32_t x,
                                   std::uint32_t y);

/// Same search from a single source to every vertex at once.
std::vector<std::uint32_t> brute_force_distances_from(
    const UniformHypergraph& g, std::uint32_t x);

/// Visits every hypergraph of the product space with its probability weight.
/// Subset masks run 0..2^C(n,t)-1 in order; the structure is rebuilt per
/// subset.
void for_each_hypergraph(
    std::uint32_t n, std::uint32_t t, double p, std::uint32_t cap,
    const std::function<void(const UniformHypergraph&, double weight)>& fn);

}  // namespace hyperdiam
