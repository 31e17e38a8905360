#include "hyperdiam/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "hyperdiam/errors.hpp"

namespace hyperdiam {

namespace {

// Colex order compares tuples from the top coordinate down.
bool colex_less(std::span<const std::uint32_t> a,
                std::span<const std::uint32_t> b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct U128Hash {
  std::size_t operator()(u128 v) const noexcept {
    return mix64(static_cast<std::uint64_t>(v) ^
                 mix64(static_cast<std::uint64_t>(v >> 64)));
  }
};

constexpr std::uint64_t kMaxRealizedEdges = std::uint64_t{1} << 28;

}  // namespace

UniformHypergraph::UniformHypergraph(
    std::uint32_t n, std::uint32_t t,
    std::vector<std::vector<std::uint32_t>> edges)
    : n_(n), t_(t) {
  if (t < 2) throw ParameterError("edge size t must be >= 2");
  if (n < t) throw ParameterError("need n >= t");
  for (const auto& e : edges) {
    if (e.size() != t) throw ParameterError("edge tuple has wrong size");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] >= n) throw ParameterError("vertex id out of range");
      if (i > 0 && e[i] <= e[i - 1]) {
        throw ParameterError("edge tuple must be strictly increasing");
      }
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return colex_less(a, b); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) throw ParameterError("duplicate edge");
  }
  flat_.reserve(edges.size() * t);
  for (const auto& e : edges) flat_.insert(flat_.end(), e.begin(), e.end());
  build_incidence();
}

UniformHypergraph::UniformHypergraph(std::uint32_t n, std::uint32_t t,
                                     std::vector<std::uint32_t> flat_sorted,
                                     TrustedTag)
    : n_(n), t_(t), flat_(std::move(flat_sorted)) {
  build_incidence();
}

UniformHypergraph sample_from_flat(std::uint32_t n, std::uint32_t t,
                                   std::vector<std::uint32_t>&& flat) {
  return UniformHypergraph(n, t, std::move(flat),
                           UniformHypergraph::TrustedTag{});
}

void UniformHypergraph::build_incidence() {
  incidence_.assign(n_, {});
  const std::size_t m = edge_count();
  for (std::size_t id = 0; id < m; ++id) {
    for (std::uint32_t v : edge(id)) {
      incidence_[v].push_back(static_cast<std::uint32_t>(id));
    }
  }
}

bool UniformHypergraph::has_edge(std::span<const std::uint32_t> s) const {
  if (s.size() != t_) return false;
  const std::size_t m = edge_count();
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (colex_less(edge(mid), s)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < m && std::ranges::equal(edge(lo), s);
}

bool UniformHypergraph::subhypergraph_of(const UniformHypergraph& other) const {
  if (n_ != other.n_ || t_ != other.t_) return false;
  for (std::size_t id = 0; id < edge_count(); ++id) {
    if (!other.has_edge(edge(id))) return false;
  }
  return true;
}

void SampleConfig::validate() const {
  if (t < 2) throw ParameterError("edge size t must be >= 2");
  if (n < t) throw ParameterError("need n >= t");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
}

double normal_quantile(double u) {
  // Acklam's piecewise rational approximation of the probit function.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (u < plow) {
    q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u <= 1.0 - plow) {
    q = u - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  q = std::sqrt(-2.0 * std::log(1.0 - u));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

namespace {

// Exact CDF inversion for Binomial(m, p) with p <= 1/2. The walk starts 45
// standard deviations below the mean: the mass below that point is under
// 1e-400, far beneath the resolution of u, while pmf values there are still
// representable (a start at k = 0 would underflow q^m for large means).
std::uint64_t binomial_inversion(long double m, double p, double u) {
  const long double pl = static_cast<long double>(p);
  const long double lp = std::log(pl);
  const long double lq = std::log1p(-pl);
  const long double mean = m * pl;
  const long double sd = std::sqrt(mean * (1.0L - pl));
  const long double start = std::max(0.0L, std::floor(mean - 45.0L * sd - 5.0L));

  std::uint64_t k = static_cast<std::uint64_t>(start);
  const long double kl = static_cast<long double>(k);
  long double pmf = std::exp(std::lgamma(m + 1.0L) - std::lgamma(kl + 1.0L) -
                             std::lgamma(m - kl + 1.0L) + kl * lp +
                             (m - kl) * lq);
  long double cum = pmf;
  const long double ratio = pl / (1.0L - pl);
  while (cum < u && static_cast<long double>(k) < m) {
    ++k;
    pmf *= (m - static_cast<long double>(k) + 1.0L) /
           static_cast<long double>(k) * ratio;
    cum += pmf;
    if (pmf <= 0.0L) break;  // past the representable upper tail
  }
  return k;
}

}  // namespace

std::uint64_t sample_binomial_count(u128 m_trials, double p, Xoshiro256pp& rng,
                                    bool* used_normal_approx) {
  if (used_normal_approx) *used_normal_approx = false;
  const long double m = static_cast<long double>(m_trials);
  if (p <= 0.0) return 0;
  if (p >= 1.0) {
    if (m >= 18446744073709551616.0L) {
      throw FeasibilityError("binomial count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(m_trials);
  }
  const long double mean = m * static_cast<long double>(p);
  const long double var = mean * (1.0L - static_cast<long double>(p));
  long double draw;
  if (var > 1e6L) {
    if (used_normal_approx) *used_normal_approx = true;
    const double z = normal_quantile(rng.next_unit_open());
    draw = std::floor(mean + std::sqrt(var) * static_cast<long double>(z) +
                      0.5L);
    draw = std::max(0.0L, std::min(draw, m));
  } else if (p <= 0.5) {
    draw = static_cast<long double>(
        binomial_inversion(m, p, rng.next_unit_open()));
  } else {
    draw = m - static_cast<long double>(
                   binomial_inversion(m, 1.0 - p, rng.next_unit_open()));
  }
  if (draw >= 18446744073709551616.0L) {
    throw FeasibilityError("binomial count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(draw);
}

UniformHypergraph sample_uniform_hypergraph(const SampleConfig& cfg,
                                            SampleInfo* info) {
  cfg.validate();
  const SubsetCodec codec(cfg.n, cfg.t);
  const u128 universe = codec.universe();
  Xoshiro256pp rng(cfg.seed);
  std::vector<std::uint32_t> flat;

  if (universe <= kDenseUniverseCap) {
    if (info) info->dense_path = true;
    if (cfg.p >= 1.0) {
      flat.resize(static_cast<std::size_t>(universe) * cfg.t);
      std::uint32_t* out = flat.data();
      for (ColexEnumerator en(cfg.n, cfg.t); !en.done(); en.advance()) {
        std::ranges::copy(en.current(), out);
        out += cfg.t;
      }
    } else if (cfg.p > 0.0) {
      const std::uint64_t threshold = bernoulli_threshold(cfg.p);
      for (ColexEnumerator en(cfg.n, cfg.t); !en.done(); en.advance()) {
        if (rng.next() < threshold) {
          flat.insert(flat.end(), en.current().begin(), en.current().end());
        }
      }
    }
  } else {
    bool normal = false;
    const std::uint64_t m = sample_binomial_count(universe, cfg.p, rng, &normal);
    if (info) info->normal_approx = normal;
    if (m > kMaxRealizedEdges) {
      throw FeasibilityError("edge count too large to realize");
    }
    // m distinct ranks uniformly without replacement, by rejection.
    std::unordered_set<u128, U128Hash> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2);
    const int bits = [&] {
      int b = 0;
      for (u128 v = universe - 1; v != 0; v >>= 1) ++b;
      return b;
    }();
    const u128 mask = (bits >= 128) ? ~u128{0} : ((u128{1} << bits) - 1);
    while (chosen.size() < m) {
      u128 r = (static_cast<u128>(rng.next()) << 64) | rng.next();
      r &= mask;
      if (r >= universe) continue;
      chosen.insert(r);
    }
    std::vector<u128> ranks(chosen.begin(), chosen.end());
    std::sort(ranks.begin(), ranks.end());
    flat.resize(static_cast<std::size_t>(m) * cfg.t);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      codec.unrank_into(EdgeRank{ranks[i]}, flat.data() + i * cfg.t);
    }
  }
  if (info) info->realized_edges = flat.size() / cfg.t;
  return sample_from_flat(cfg.n, cfg.t, std::move(flat));
}

std::pair<UniformHypergraph, UniformHypergraph> coupled_sample(
    std::uint32_t n, std::uint32_t t, double p1, double p2,
    std::uint64_t seed) {
  SampleConfig{n, t, p1, seed}.validate();
  SampleConfig{n, t, p2, seed}.validate();
  if (p1 > p2) throw ParameterError("coupled sampling requires p1 <= p2");
  const SubsetCodec codec(n, t);
  if (codec.universe() > kDenseUniverseCap) {
    throw FeasibilityError(
        "coupled sampling needs one variate per potential edge; C(n,t) "
        "exceeds the dense cap");
  }
  Xoshiro256pp rng(seed);
  std::vector<std::uint32_t> flat1, flat2;
  for (ColexEnumerator en(n, t); !en.done(); en.advance()) {
    const double u = rng.next_unit();
    const bool in2 = (u < p2) || p2 >= 1.0;
    const bool in1 = (u < p1) || p1 >= 1.0;
    if (in2) flat2.insert(flat2.end(), en.current().begin(), en.current().end());
    if (in1) flat1.insert(flat1.end(), en.current().begin(), en.current().end());
  }
  return {sample_from_flat(n, t, std::move(flat1)),
          sample_from_flat(n, t, std::move(flat2))};
}

void write_hypergraph(std::ostream& os, const UniformHypergraph& g) {
  os << g.vertex_count() << ' ' << g.edge_size() << ' ' << g.edge_count()
     << '\n';
  for (std::size_t id = 0; id < g.edge_count(); ++id) {
    const auto e = g.edge(id);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) os << ' ';
      os << e[i];
    }
    os << '\n';
  }
}

UniformHypergraph read_hypergraph(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) throw FormatError("missing header", 1);
  ++lineno;
  std::istringstream header(line);
  long long n = -1, t = -1, m = -1;
  if (!(header >> n >> t >> m) || n < 0 || t < 2 || m < 0) {
    throw FormatError("header must be 'n t m' with t >= 2", lineno);
  }
  std::string extra;
  if (header >> extra) throw FormatError("trailing tokens in header", lineno);

  if (n < t) throw FormatError("header requires n >= t", lineno);
  const SubsetCodec codec(static_cast<std::uint32_t>(n),
                          static_cast<std::uint32_t>(t));
  std::unordered_set<u128, U128Hash> seen;
  seen.reserve(static_cast<std::size_t>(m) * 2);

  std::vector<std::vector<std::uint32_t>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(is, line)) {
      throw FormatError("fewer edge lines than header claims", lineno + 1);
    }
    ++lineno;
    std::istringstream row(line);
    std::vector<std::uint32_t> e;
    long long v;
    while (row >> v) {
      if (v < 0 || v >= n) throw FormatError("vertex id out of range", lineno);
      e.push_back(static_cast<std::uint32_t>(v));
    }
    if (!row.eof()) throw FormatError("non-numeric token", lineno);
    if (e.size() != static_cast<std::size_t>(t)) {
      throw FormatError("edge line must have exactly t vertex ids", lineno);
    }
    for (std::size_t j = 1; j < e.size(); ++j) {
      if (e[j] <= e[j - 1]) {
        throw FormatError("edge tuple must be strictly increasing", lineno);
      }
    }
    if (!seen.insert(codec.rank(e).value).second) {
      throw FormatError("duplicate edge", lineno);
    }
    edges.push_back(std::move(e));
  }
  return UniformHypergraph(static_cast<std::uint32_t>(n),
                           static_cast<std::uint32_t>(t), std::move(edges));
}

}  // namespace hyperdiam
