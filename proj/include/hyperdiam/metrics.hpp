#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "hyperdiam/hypergraph.hpp"
#include "hyperdiam/parametrization.hpp"

namespace hyperdiam {

/// Sentinel distance for unreachable vertices.
inline constexpr std::uint32_t kUnreachable =
    std::numeric_limits<std::uint32_t>::max();

struct DistanceProfile {
  std::uint32_t source = 0;
  std::vector<std::uint32_t> dist;  // kUnreachable marks no path
};

/// Finite diameter value or the infinity marker (disconnected hypergraph).
class DiameterResult {
 public:
  static DiameterResult finite(std::uint32_t v) { return DiameterResult(v); }
  static DiameterResult infinite() { return DiameterResult(kUnreachable); }

  bool is_finite() const noexcept { return value_ != kUnreachable; }
  std::uint32_t value() const noexcept { return value_; }  // finite only

  /// Encoded form: the finite value, or kUnreachable for infinity.
  std::uint32_t encoded() const noexcept { return value_; }

  friend bool operator==(const DiameterResult&,
                         const DiameterResult&) = default;

 private:
  explicit DiameterResult(std::uint32_t v) : value_(v) {}
  std::uint32_t value_;
};

/// Single-source distances by vertex-frontier BFS over the incidence index:
/// the neighbors of a frontier vertex are the union of its edges' vertices.
/// Equals the alternating-path distance with distinct vertices and distinct
/// hyperedges (cross-checked against the exhaustive oracle on small cases).
DistanceProfile bfs_distances(const UniformHypergraph& g, std::uint32_t source);

/// max over all pairs of bfs distances; infinite iff disconnected.
DiameterResult diameter(const UniformHypergraph& g);

/// Number of unordered pairs x < y with d(x, y) > d; unreachable pairs count
/// as remote for every d.
std::uint64_t count_remote_pairs(const UniformHypergraph& g, std::uint32_t d);

/// Per-source layer census: |Gamma_k|, |N_k| for k = 0..K, and optionally the
/// frontier edge families. frontier_edges[k] is E_k for graphs and H_k for
/// t >= 3 (the two definitions coincide at t = 2); single-contact data is
/// populated for t >= 3 only.
struct LayerProfile {
  std::uint32_t source = 0;
  std::uint32_t t = 2;
  std::vector<std::uint64_t> gamma;       // |Gamma_k|, k = 0..K
  std::vector<std::uint64_t> cumulative;  // |N_k|
  bool has_frontiers = false;
  std::vector<std::uint64_t> frontier_edges;        // index k, [0] unused
  std::vector<std::uint64_t> single_contact_edges;  // |H_k^1|, t >= 3
  // Multiset {|H_k^1(x,v)| : v in Gamma_{k-1}}, sorted ascending, per k.
  std::vector<std::vector<std::uint64_t>> single_contact_per_vertex;

  std::uint32_t depth() const noexcept {
    return static_cast<std::uint32_t>(gamma.size()) - 1;
  }
};

LayerProfile layer_profile(const UniformHypergraph& g, std::uint32_t source,
                           std::uint32_t max_layer, bool with_frontiers);

/// The concentration constants of the layer-growth analysis:
///   delta_k = sqrt(L log n / mu^k), mu = np (t=2) or (t-1)Np (t>=3),
///   epsilon_k = 2 delta_1  (constant in k, as defined),
///   eta_k = exp(sum_{l<=k} epsilon_l) - 1.
/// Default L is 72 for t = 2 and 72(t-1) otherwise.
struct ConcentrationParams {
  double big_l = 72.0;
  std::vector<double> delta;    // index 1..d-1, [0] unused
  std::vector<double> epsilon;  // constant 2*delta[1]
  std::vector<double> eta;

  static ConcentrationParams make(const RegimeParams& params,
                                  std::optional<double> big_l_override = {});
};

/// Mean layer growth factor: np or (t-1)Np depending on mode.
double layer_growth_factor(const RegimeParams& params);

/// True iff |Gamma_l| lies within the eta_l band around mu^l for every
/// l = 1..k.
bool omega_star_holds(const LayerProfile& profile, const RegimeParams& params,
                      const ConcentrationParams& conc, std::uint32_t k);

/// |Gamma_k(x) ∩ Gamma_k(z)|.
std::uint64_t layer_intersection(const UniformHypergraph& g, std::uint32_t x,
                                 std::uint32_t z, std::uint32_t k);

/// Diagnostic ceiling for |Gamma_{d-1}(x) ∩ Gamma_{d-1}(z)|: 10 mu^(2d-2) / n,
/// i.e. 10 n^(2d-3) p^(2d-2) in the graph case.
double layer_intersection_threshold(const RegimeParams& params);

/// Diameter and remote-pair count of one sample in a single pass.
struct TrialStats {
  DiameterResult diam = DiameterResult::infinite();
  std::uint64_t remote_pairs = 0;
};

/// Equivalent to {diameter(g), count_remote_pairs(g, d)} but runs the n
/// single-source BFS passes over bit-packed neighborhood sets when n is small
/// enough for that to pay off. Read-only; safe to call concurrently.
TrialStats trial_statistics(const UniformHypergraph& g, std::uint32_t d);

}  // namespace hyperdiam
