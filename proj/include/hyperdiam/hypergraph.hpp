#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "hyperdiam/binomial.hpp"
#include "hyperdiam/rng.hpp"

namespace hyperdiam {

/// Immutable t-uniform hypergraph on vertices 0..n-1.
///
/// Edges are strictly increasing t-tuples, stored flat in ascending
/// colexicographic rank order with no duplicates; a per-vertex incidence
/// index lists the ids of the edges containing each vertex. Safe to share
/// across concurrent readers.
class UniformHypergraph {
 public:
  UniformHypergraph(std::uint32_t n, std::uint32_t t,
                    std::vector<std::vector<std::uint32_t>> edges);

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::uint32_t edge_size() const noexcept { return t_; }
  std::size_t edge_count() const noexcept { return flat_.size() / t_; }

  std::span<const std::uint32_t> edge(std::size_t id) const noexcept {
    return {flat_.data() + id * t_, t_};
  }

  const std::vector<std::uint32_t>& incident_edges(std::uint32_t v) const {
    return incidence_[v];
  }

  /// True iff the strictly increasing tuple s is an edge (binary search).
  bool has_edge(std::span<const std::uint32_t> s) const;

  /// True iff every edge of this hypergraph is an edge of other.
  bool subhypergraph_of(const UniformHypergraph& other) const;

  friend bool operator==(const UniformHypergraph& a,
                         const UniformHypergraph& b) {
    return a.n_ == b.n_ && a.t_ == b.t_ && a.flat_ == b.flat_;
  }

 private:
  struct TrustedTag {};
  UniformHypergraph(std::uint32_t n, std::uint32_t t,
                    std::vector<std::uint32_t> flat_sorted, TrustedTag);
  void build_incidence();

  friend UniformHypergraph sample_from_flat(std::uint32_t, std::uint32_t,
                                            std::vector<std::uint32_t>&&);

  std::uint32_t n_;
  std::uint32_t t_;
  std::vector<std::uint32_t> flat_;  // edge tuples, stride t, colex ascending
  std::vector<std::vector<std::uint32_t>> incidence_;
};

/// Wraps an already-canonical flat edge buffer (strictly increasing tuples in
/// ascending colex order) without re-validating. For samplers and enumerators
/// whose construction guarantees the invariants.
UniformHypergraph sample_from_flat(std::uint32_t n, std::uint32_t t,
                                   std::vector<std::uint32_t>&& flat);

/// Parameters of one H(n, t, p) draw. t = 2 gives G(n, p).
struct SampleConfig {
  std::uint32_t n = 0;
  std::uint32_t t = 2;
  double p = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// How a sample was produced, for reporting.
struct SampleInfo {
  bool dense_path = false;    // per-rank Bernoulli sweep over all C(n,t) ranks
  bool normal_approx = false; // edge count drawn via normal approximation
  std::uint64_t realized_edges = 0;
};

/// Draws H(n, t, p): every one of the C(n, t) possible edges is present
/// independently with probability p. Deterministic given cfg.seed.
///
/// Strategy: when C(n, t) <= 2^23 the whole rank universe is swept with one
/// Bernoulli draw per rank. Beyond that the edge count m ~ Binomial(C(n,t), p)
/// is drawn first and m distinct ranks are then sampled uniformly without
/// replacement and unranked; the regimes of interest have a huge universe but
/// few realized edges, so rejection is cheap.
UniformHypergraph sample_uniform_hypergraph(const SampleConfig& cfg,
                                            SampleInfo* info = nullptr);

/// Monotone coupling: one uniform variate per potential edge, edge in H1 iff
/// the variate falls below p1 and in H2 iff below p2. Requires p1 <= p2, so
/// edges(H1) is a subset of edges(H2) on every invocation.
std::pair<UniformHypergraph, UniformHypergraph> coupled_sample(
    std::uint32_t n, std::uint32_t t, double p1, double p2,
    std::uint64_t seed);

/// Binomial(m_trials, p) variate. Exact CDF inversion unless the variance
/// exceeds 1e6, in which case a continuity-corrected normal approximation is
/// used (the absolute error is far below sampling noise at those sizes).
std::uint64_t sample_binomial_count(u128 m_trials, double p, Xoshiro256pp& rng,
                                    bool* used_normal_approx = nullptr);

/// Standard normal quantile (Acklam's rational approximation, |rel err| ~ 1e-9).
double normal_quantile(double u);

/// Ranks above which the dense per-rank sweep is abandoned.
inline constexpr u128 kDenseUniverseCap = u128{1} << 23;

/// Text format: header "n t m", then m lines of t space-separated vertex ids,
/// edges in ascending colex order.
void write_hypergraph(std::ostream& os, const UniformHypergraph& g);

/// Parses the text format; throws FormatError with a 1-based line number on
/// malformed headers, bad tuples, or duplicate edges.
UniformHypergraph read_hypergraph(std::istream& is);

}  // namespace hyperdiam
