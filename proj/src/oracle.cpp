#include "hyperdiam/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hyperdiam/errors.hpp"

namespace hyperdiam {

namespace {

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

std::uint32_t checked_universe(std::uint32_t n, std::uint32_t t,
                               std::uint32_t cap) {
  const auto universe = binomial_checked(n, t);
  if (!universe || *universe > cap) {
    const std::string size =
        universe ? std::to_string(static_cast<unsigned long long>(*universe))
                 : std::string("> 2^128");
    throw FeasibilityError("enumeration infeasible: C(n,t) = " + size +
                           " exceeds cap " + std::to_string(cap));
  }
  return static_cast<std::uint32_t>(*universe);
}

// All-pairs distances of a tiny hypergraph, flattened row-major.
void all_pair_distances(const UniformHypergraph& g,
                        std::vector<std::uint32_t>& out) {
  const std::uint32_t n = g.vertex_count();
  out.resize(static_cast<std::size_t>(n) * n);
  for (std::uint32_t x = 0; x < n; ++x) {
    const auto prof = bfs_distances(g, x);
    std::copy(prof.dist.begin(), prof.dist.end(),
              out.begin() + static_cast<std::size_t>(x) * n);
  }
}

}  // namespace

void for_each_hypergraph(
    std::uint32_t n, std::uint32_t t, double p, std::uint32_t cap,
    const std::function<void(const UniformHypergraph&, double weight)>& fn) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  if (cap > 30) throw ParameterError("enumeration cap beyond 2^30 is absurd");
  const std::uint32_t m_all = checked_universe(n, t, cap);
  const SubsetCodec codec(n, t);

  std::vector<std::uint32_t> tuples(static_cast<std::size_t>(m_all) * t);
  {
    std::size_t i = 0;
    for (ColexEnumerator en(n, t); !en.done(); en.advance(), ++i) {
      std::ranges::copy(en.current(), tuples.begin() + i * t);
    }
  }
  // Exact powers by repeated multiplication.
  std::vector<double> pow_p(m_all + 1), pow_q(m_all + 1);
  pow_p[0] = pow_q[0] = 1.0;
  for (std::uint32_t k = 1; k <= m_all; ++k) {
    pow_p[k] = pow_p[k - 1] * p;
    pow_q[k] = pow_q[k - 1] * (1.0 - p);
  }

  const std::uint64_t masks = std::uint64_t{1} << m_all;
  std::vector<std::uint32_t> flat;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    const std::uint32_t m = static_cast<std::uint32_t>(std::popcount(mask));
    const double weight = pow_p[m] * pow_q[m_all - m];
    flat.clear();
    for (std::uint64_t bits = mask; bits;) {
      const std::uint32_t id = static_cast<std::uint32_t>(std::countr_zero(bits));
      bits &= bits - 1;
      flat.insert(flat.end(), tuples.begin() + static_cast<std::size_t>(id) * t,
                  tuples.begin() + static_cast<std::size_t>(id + 1) * t);
    }
    fn(sample_from_flat(n, t, std::vector<std::uint32_t>(flat)), weight);
  }
}

double ExactJointDistribution::mean_remote_from_joint() const {
  Kahan acc;
  for (const auto& [key, prob] : joint) {
    acc.add(static_cast<double>(key.second) * prob);
  }
  return acc.sum;
}

double ExactJointDistribution::diameter_cdf(std::uint32_t r) const {
  Kahan acc;
  for (const auto& [diam, prob] : diameter_marginal) {
    if (diam != kUnreachable && diam <= r) acc.add(prob);
  }
  return acc.sum;
}

ExactJointDistribution enumerate_exact(std::uint32_t n, std::uint32_t t,
                                       double p, std::uint32_t d,
                                       std::uint32_t cap) {
  if (d < 1) throw ParameterError("distance threshold d must be >= 1");
  ExactJointDistribution out;
  out.n = n;
  out.t = t;
  out.p = p;
  out.d = d;

  // Dense accumulators: diameter bucket index n encodes infinity.
  const std::uint64_t pair_count =
      static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::vector<std::vector<Kahan>> joint_acc(
      n + 1, std::vector<Kahan>(pair_count + 1));
  Kahan single_pair, total;

  std::vector<std::uint32_t> dist;
  for_each_hypergraph(n, t, p, cap, [&](const UniformHypergraph& g, double w) {
    all_pair_distances(g, dist);
    std::uint32_t ecc_max = 0;
    bool disconnected = false;
    std::uint64_t remote = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = x + 1; y < n; ++y) {
        const std::uint32_t dxy = dist[static_cast<std::size_t>(x) * n + y];
        if (dxy == kUnreachable) {
          disconnected = true;
          ++remote;
        } else {
          ecc_max = std::max(ecc_max, dxy);
          if (dxy > d) ++remote;
        }
      }
    }
    const std::uint32_t bucket = disconnected ? n : ecc_max;
    joint_acc[bucket][remote].add(w);
    total.add(w);
    if (n >= 2 && dist[1] > d) single_pair.add(w);  // pair (0,1)
  });

  out.total_probability = total.sum;
  out.single_pair_remote_prob = single_pair.sum;
  std::vector<Kahan> diam_m(n + 1);
  std::map<std::uint64_t, Kahan> remote_m;
  for (std::uint32_t b = 0; b <= n; ++b) {
    for (std::uint64_t w = 0; w <= pair_count; ++w) {
      const double prob = joint_acc[b][w].sum;
      if (prob == 0.0) continue;
      const std::uint32_t diam_key = (b == n) ? kUnreachable : b;
      out.joint[{diam_key, w}] = prob;
      diam_m[b].add(prob);
      remote_m[w].add(prob);
    }
  }
  for (std::uint32_t b = 0; b <= n; ++b) {
    if (diam_m[b].sum != 0.0) {
      out.diameter_marginal[(b == n) ? kUnreachable : b] = diam_m[b].sum;
    }
  }
  for (const auto& [w, acc] : remote_m) out.remote_marginal[w] = acc.sum;
  return out;
}

double exact_fkg_check(std::uint32_t n, std::uint32_t t, double p,
                       std::uint32_t d, std::uint32_t cap) {
  if (n < 2) throw ParameterError("need at least two vertices");
  if (d < 1) throw ParameterError("distance threshold d must be >= 1");
  const std::uint32_t pairs = n * (n - 1) / 2;
  std::vector<Kahan> single(pairs);
  std::vector<std::vector<Kahan>> both(pairs, std::vector<Kahan>(pairs));

  std::vector<std::uint32_t> dist;
  std::vector<std::uint32_t> remote_ids;
  for_each_hypergraph(n, t, p, cap, [&](const UniformHypergraph& g, double w) {
    all_pair_distances(g, dist);
    remote_ids.clear();
    std::uint32_t alpha = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = x + 1; y < n; ++y, ++alpha) {
        if (dist[static_cast<std::size_t>(x) * n + y] > d) {
          remote_ids.push_back(alpha);
        }
      }
    }
    for (std::uint32_t i : remote_ids) {
      single[i].add(w);
      for (std::uint32_t j : remote_ids) {
        if (j > i) both[i][j].add(w);
      }
    }
  });

  double min_gap = 0.0;
  bool first = true;
  for (std::uint32_t i = 0; i < pairs; ++i) {
    for (std::uint32_t j = i + 1; j < pairs; ++j) {
      const double gap = both[i][j].sum - single[i].sum * single[j].sum;
      if (first || gap < min_gap) {
        min_gap = gap;
        first = false;
      }
    }
  }
  return min_gap;
}

SizeBiasedReport exact_size_biased_check(std::uint32_t n, std::uint32_t t,
                                         double p, std::uint32_t d,
                                         std::uint32_t cap) {
  if (n < 2) throw ParameterError("need at least two vertices");
  if (d < 1) throw ParameterError("distance threshold d must be >= 1");
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;

  // law of W+1-X_J: value W with prob. weight W/|I|, W+1 with (|I|-W)/|I|.
  // raw size-biased mass: sb[w] = sum over space of weight * W * [W = w];
  // dividing by E W makes it the law of W* = 1 + sum_{beta != J} X^J_beta.
  std::vector<Kahan> law_plus(pairs + 2), sb(pairs + 1);
  Kahan mean_w;

  std::vector<std::uint32_t> dist;
  for_each_hypergraph(n, t, p, cap, [&](const UniformHypergraph& g, double w) {
    all_pair_distances(g, dist);
    std::uint64_t remote = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = x + 1; y < n; ++y) {
        if (dist[static_cast<std::size_t>(x) * n + y] > d) ++remote;
      }
    }
    const double frac = static_cast<double>(remote) / static_cast<double>(pairs);
    law_plus[remote].add(w * frac);
    law_plus[remote + 1].add(w * (1.0 - frac));
    sb[remote].add(w * static_cast<double>(remote));
    mean_w.add(w * static_cast<double>(remote));
  });

  if (!(mean_w.sum > 0.0)) {
    throw ParameterError("degenerate size-biased law: E W = 0");
  }

  SizeBiasedReport out;
  out.mean_w = mean_w.sum;
  out.cdf_w_plus.resize(pairs + 2);
  out.cdf_w_star.resize(pairs + 2);
  double c1 = 0.0, c2 = 0.0;
  for (std::uint64_t k = 0; k <= pairs + 1; ++k) {
    c1 += law_plus[k].sum;
    c2 += (k <= pairs) ? sb[k].sum / mean_w.sum : 0.0;
    out.cdf_w_plus[k] = c1;
    out.cdf_w_star[k] = c2;
  }
  out.max_cdf_gap = 0.0;
  for (std::uint64_t k = 0; k <= pairs + 1; ++k) {
    out.max_cdf_gap = std::max(out.max_cdf_gap,
                               out.cdf_w_star[k] - out.cdf_w_plus[k]);
  }
  out.dominance_holds = out.max_cdf_gap <= 1e-12;
  return out;
}

std::vector<std::uint32_t> brute_force_distances_from(
    const UniformHypergraph& g, std::uint32_t x) {
  if (x >= g.vertex_count()) throw ParameterError("source vertex out of range");
  const std::size_t m = g.edge_count();
  if (m > 12) {
    throw FeasibilityError("instance too large for exhaustive path search");
  }
  const std::uint32_t n = g.vertex_count();
  const std::uint32_t mask_count = std::uint32_t{1} << m;

  // Breadth-first over states (vertex, set of used edges). Along a minimal
  // distinct-edge sequence the vertices are automatically distinct: a
  // repeated vertex would let the loop be spliced out.
  std::vector<std::uint32_t> best(n, kUnreachable);
  std::vector<bool> seen(static_cast<std::size_t>(n) * mask_count, false);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> frontier, next;
  frontier.emplace_back(x, 0);
  seen[static_cast<std::size_t>(x) * mask_count] = true;
  best[x] = 0;
  for (std::uint32_t depth = 1; !frontier.empty(); ++depth) {
    next.clear();
    for (const auto& [v, used] : frontier) {
      for (std::uint32_t eid : g.incident_edges(v)) {
        const std::uint32_t bit = std::uint32_t{1} << eid;
        if (used & bit) continue;
        const std::uint32_t used2 = used | bit;
        for (std::uint32_t w : g.edge(eid)) {
          if (w == v) continue;
          const std::size_t key =
              static_cast<std::size_t>(w) * mask_count + used2;
          if (seen[key]) continue;
          seen[key] = true;
          if (best[w] == kUnreachable) best[w] = depth;
          next.emplace_back(w, used2);
        }
      }
    }
    frontier.swap(next);
  }
  return best;
}

std::uint32_t brute_force_distance(const UniformHypergraph& g, std::uint32_t x,
                                   std::uint32_t y) {
  if (y >= g.vertex_count()) throw ParameterError("target vertex out of range");
  return brute_force_distances_from(g, x)[y];
}

}  // namespace hyperdiam
