#include "hyperdiam/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hyperdiam/errors.hpp"

namespace hyperdiam {

namespace {

void check_source(const UniformHypergraph& g, std::uint32_t source) {
  if (source >= g.vertex_count()) {
    throw ParameterError("source vertex out of range");
  }
}

// BFS with edge marking: an edge is expanded the first time one of its
// vertices leaves the queue; later visits cannot improve any distance.
void bfs_into(const UniformHypergraph& g, std::uint32_t source,
              std::vector<std::uint32_t>& dist,
              std::vector<std::uint32_t>& queue,
              std::vector<bool>& edge_used) {
  dist.assign(g.vertex_count(), kUnreachable);
  edge_used.assign(g.edge_count(), false);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    const std::uint32_t dv = dist[v];
    for (std::uint32_t eid : g.incident_edges(v)) {
      if (edge_used[eid]) continue;
      edge_used[eid] = true;
      for (std::uint32_t w : g.edge(eid)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dv + 1;
          queue.push_back(w);
        }
      }
    }
  }
}

}  // namespace

DistanceProfile bfs_distances(const UniformHypergraph& g,
                              std::uint32_t source) {
  check_source(g, source);
  DistanceProfile out;
  out.source = source;
  std::vector<std::uint32_t> queue;
  std::vector<bool> edge_used;
  bfs_into(g, source, out.dist, queue, edge_used);
  return out;
}

DiameterResult diameter(const UniformHypergraph& g) {
  const std::uint32_t n = g.vertex_count();
  std::uint32_t best = 0;
  std::vector<std::uint32_t> dist, queue;
  std::vector<bool> edge_used;
  for (std::uint32_t x = 0; x < n; ++x) {
    bfs_into(g, x, dist, queue, edge_used);
    for (std::uint32_t y = 0; y < n; ++y) {
      if (dist[y] == kUnreachable) return DiameterResult::infinite();
      best = std::max(best, dist[y]);
    }
  }
  return DiameterResult::finite(best);
}

std::uint64_t count_remote_pairs(const UniformHypergraph& g, std::uint32_t d) {
  if (d < 1) throw ParameterError("distance threshold d must be >= 1");
  const std::uint32_t n = g.vertex_count();
  std::uint64_t remote = 0;
  std::vector<std::uint32_t> dist, queue;
  std::vector<bool> edge_used;
  for (std::uint32_t x = 0; x < n; ++x) {
    bfs_into(g, x, dist, queue, edge_used);
    for (std::uint32_t y = x + 1; y < n; ++y) {
      if (dist[y] > d) ++remote;  // kUnreachable compares greater than any d
    }
  }
  return remote;
}

LayerProfile layer_profile(const UniformHypergraph& g, std::uint32_t source,
                           std::uint32_t max_layer, bool with_frontiers) {
  check_source(g, source);
  LayerProfile out;
  out.source = source;
  out.t = g.edge_size();
  out.has_frontiers = with_frontiers;

  std::vector<std::uint32_t> dist, queue;
  std::vector<bool> edge_used;
  bfs_into(g, source, dist, queue, edge_used);

  out.gamma.assign(max_layer + 1, 0);
  out.cumulative.assign(max_layer + 1, 0);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] != kUnreachable && dist[v] <= max_layer) ++out.gamma[dist[v]];
  }
  std::uint64_t running = 0;
  for (std::uint32_t k = 0; k <= max_layer; ++k) {
    running += out.gamma[k];
    out.cumulative[k] = running;
  }
  if (!with_frontiers) return out;

  out.frontier_edges.assign(max_layer + 1, 0);
  const bool track_single = g.edge_size() >= 3;
  // Per-vertex tallies of single-contact edges, keyed by the contact vertex.
  std::vector<std::uint64_t> contact_count;
  if (track_single) {
    out.single_contact_edges.assign(max_layer + 1, 0);
    contact_count.assign(g.vertex_count(), 0);
  }

  for (std::size_t eid = 0; eid < g.edge_count(); ++eid) {
    std::uint32_t dmin = kUnreachable;
    std::uint32_t dmax = 0;
    for (std::uint32_t v : g.edge(eid)) {
      dmin = std::min(dmin, dist[v]);
      dmax = std::max(dmax, dist[v]);
    }
    if (dmin == kUnreachable) continue;
    // Members of an edge meeting Gamma_{k-1} sit in layers k-1 and k only,
    // so the families reduce to (dmin, dmax) = (k-1, k).
    const std::uint32_t k = dmin + 1;
    if (k > max_layer || dmax <= dmin) continue;
    ++out.frontier_edges[k];
    if (track_single) {
      std::uint32_t contacts = 0;
      std::uint32_t contact_vertex = 0;
      for (std::uint32_t v : g.edge(eid)) {
        if (dist[v] == dmin) {
          ++contacts;
          contact_vertex = v;
        }
      }
      if (contacts == 1) {
        ++out.single_contact_edges[k];
        ++contact_count[contact_vertex];
      }
    }
  }

  if (track_single) {
    out.single_contact_per_vertex.assign(max_layer + 1, {});
    for (std::uint32_t k = 1; k <= max_layer; ++k) {
      auto& bag = out.single_contact_per_vertex[k];
      bag.reserve(out.gamma[k - 1]);
      for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (dist[v] == k - 1) bag.push_back(contact_count[v]);
      }
      // contact_count mixes all layers; a vertex in Gamma_{k-1} only ever
      // hosts contacts of H_k, so the per-layer split is already disjoint.
      std::sort(bag.begin(), bag.end());
    }
  }
  return out;
}

double layer_growth_factor(const RegimeParams& params) {
  if (params.mode == RegimeMode::graph_bollobas) {
    return static_cast<double>(params.n) * params.p;
  }
  return static_cast<double>((params.t - 1) * params.n_sub_choose *
                             static_cast<long double>(params.p));
}

ConcentrationParams ConcentrationParams::make(
    const RegimeParams& params, std::optional<double> big_l_override) {
  ConcentrationParams out;
  out.big_l = big_l_override.value_or(
      params.t == 2 ? 72.0 : 72.0 * static_cast<double>(params.t - 1));
  const double mu = layer_growth_factor(params);
  const double ln_n = std::log(static_cast<double>(params.n));
  const std::uint32_t top = params.d - 1;
  out.delta.assign(top + 1, 0.0);
  out.epsilon.assign(top + 1, 0.0);
  out.eta.assign(top + 1, 0.0);
  for (std::uint32_t k = 1; k <= top; ++k) {
    out.delta[k] = std::sqrt(out.big_l * ln_n / std::pow(mu, k));
  }
  for (std::uint32_t k = 1; k <= top; ++k) {
    out.epsilon[k] = 2.0 * out.delta[1];
    out.eta[k] = std::expm1(static_cast<double>(k) * 2.0 * out.delta[1]);
  }
  return out;
}

bool omega_star_holds(const LayerProfile& profile, const RegimeParams& params,
                      const ConcentrationParams& conc, std::uint32_t k) {
  if (k > profile.depth() || k >= conc.eta.size()) {
    throw ParameterError("layer index exceeds profile depth");
  }
  const double mu = layer_growth_factor(params);
  for (std::uint32_t l = 1; l <= k; ++l) {
    const double center = std::pow(mu, l);
    const double gap =
        std::fabs(static_cast<double>(profile.gamma[l]) - center);
    if (gap > conc.eta[l] * center) return false;
  }
  return true;
}

std::uint64_t layer_intersection(const UniformHypergraph& g, std::uint32_t x,
                                 std::uint32_t z, std::uint32_t k) {
  check_source(g, x);
  check_source(g, z);
  if (x == z) throw ParameterError("layer intersection needs distinct sources");
  std::vector<std::uint32_t> dx, dz, queue;
  std::vector<bool> edge_used;
  bfs_into(g, x, dx, queue, edge_used);
  bfs_into(g, z, dz, queue, edge_used);
  std::uint64_t overlap = 0;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (dx[v] == k && dz[v] == k) ++overlap;
  }
  return overlap;
}

double layer_intersection_threshold(const RegimeParams& params) {
  const double mu = layer_growth_factor(params);
  return 10.0 * std::pow(mu, 2.0 * (params.d - 1)) /
         static_cast<double>(params.n);
}

namespace {

constexpr std::uint32_t kBitsetMaxVertices = 1u << 13;

// Bit-packed co-membership adjacency; one n-bit row per vertex.
class BitRows {
 public:
  BitRows(const UniformHypergraph& g)
      : n_(g.vertex_count()), words_((n_ + 63) / 64) {
    rows_.assign(static_cast<std::size_t>(n_) * words_, 0);
    const std::uint32_t t = g.edge_size();
    for (std::size_t eid = 0; eid < g.edge_count(); ++eid) {
      const auto e = g.edge(eid);
      for (std::uint32_t i = 0; i < t; ++i) {
        std::uint64_t* row = row_ptr(e[i]);
        for (std::uint32_t j = 0; j < t; ++j) {
          if (j != i) row[e[j] >> 6] |= std::uint64_t{1} << (e[j] & 63);
        }
      }
    }
  }

  std::uint64_t* row_ptr(std::uint32_t v) {
    return rows_.data() + static_cast<std::size_t>(v) * words_;
  }
  const std::uint64_t* row_ptr(std::uint32_t v) const {
    return rows_.data() + static_cast<std::size_t>(v) * words_;
  }
  std::uint32_t words() const noexcept { return words_; }

 private:
  std::uint32_t n_;
  std::uint32_t words_;
  std::vector<std::uint64_t> rows_;
};

TrialStats trial_statistics_bitset(const UniformHypergraph& g,
                                   std::uint32_t d) {
  const std::uint32_t n = g.vertex_count();
  const BitRows adj(g);
  const std::uint32_t words = adj.words();
  std::vector<std::uint64_t> visited(words), frontier(words), next(words);
  const std::uint64_t full_count = n;

  std::uint32_t max_ecc = 0;
  bool disconnected = false;
  std::uint64_t remote_ordered = 0;

  for (std::uint32_t x = 0; x < n; ++x) {
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    visited[x >> 6] |= std::uint64_t{1} << (x & 63);
    frontier[x >> 6] |= std::uint64_t{1} << (x & 63);
    std::uint64_t covered = 1;
    std::uint32_t ecc = 0;
    std::uint64_t covered_at_d = (d == 0) ? 1 : 0;

    for (std::uint32_t depth = 1; covered < full_count; ++depth) {
      std::fill(next.begin(), next.end(), 0);
      for (std::uint32_t w = 0; w < words; ++w) {
        std::uint64_t bits = frontier[w];
        while (bits) {
          const std::uint32_t v =
              (w << 6) + static_cast<std::uint32_t>(std::countr_zero(bits));
          bits &= bits - 1;
          const std::uint64_t* row = adj.row_ptr(v);
          for (std::uint32_t i = 0; i < words; ++i) next[i] |= row[i];
        }
      }
      std::uint64_t added = 0;
      for (std::uint32_t i = 0; i < words; ++i) {
        next[i] &= ~visited[i];
        visited[i] |= next[i];
        added += static_cast<std::uint64_t>(std::popcount(next[i]));
      }
      if (added == 0) break;
      covered += added;
      ecc = depth;
      if (depth == d) covered_at_d = covered;
      frontier.swap(next);
    }
    if (ecc < d || covered_at_d == 0) covered_at_d = covered;
    if (covered < full_count) disconnected = true;
    max_ecc = std::max(max_ecc, ecc);
    remote_ordered += full_count - covered_at_d;
  }

  TrialStats out;
  out.remote_pairs = remote_ordered / 2;
  out.diam = disconnected ? DiameterResult::infinite()
                          : DiameterResult::finite(max_ecc);
  return out;
}

TrialStats trial_statistics_listbfs(const UniformHypergraph& g,
                                    std::uint32_t d) {
  const std::uint32_t n = g.vertex_count();
  std::uint32_t max_ecc = 0;
  bool disconnected = false;
  std::uint64_t remote_ordered = 0;
  std::vector<std::uint32_t> dist, queue;
  std::vector<bool> edge_used;
  for (std::uint32_t x = 0; x < n; ++x) {
    bfs_into(g, x, dist, queue, edge_used);
    for (std::uint32_t y = 0; y < n; ++y) {
      if (dist[y] == kUnreachable) {
        disconnected = true;
        ++remote_ordered;
      } else {
        max_ecc = std::max(max_ecc, dist[y]);
        if (dist[y] > d) ++remote_ordered;
      }
    }
  }
  TrialStats out;
  out.remote_pairs = remote_ordered / 2;
  out.diam = disconnected ? DiameterResult::infinite()
                          : DiameterResult::finite(max_ecc);
  return out;
}

}  // namespace

TrialStats trial_statistics(const UniformHypergraph& g, std::uint32_t d) {
  if (d < 1) throw ParameterError("distance threshold d must be >= 1");
  if (g.vertex_count() <= kBitsetMaxVertices) {
    return trial_statistics_bitset(g, d);
  }
  return trial_statistics_listbfs(g, d);
}

}  // namespace hyperdiam
