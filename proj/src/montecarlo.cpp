#include "hyperdiam/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "hyperdiam/errors.hpp"
#include "hyperdiam/hypergraph.hpp"
#include "hyperdiam/rng.hpp"

namespace hyperdiam {

namespace {

std::uint32_t checked_vertex_count(std::uint64_t n) {
  if (n > 0xfffffffeULL) throw ParameterError("vertex count exceeds 2^32 - 2");
  return static_cast<std::uint32_t>(n);
}

std::uint32_t effective_workers(std::uint32_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, count) on the requested number of threads. The
// work items must be independent; any exception is rethrown on the caller.
void parallel_for(std::uint64_t count, std::uint32_t workers,
                  const std::function<void(std::uint64_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::uint32_t spawn =
      static_cast<std::uint32_t>(std::min<std::uint64_t>(workers, count));
  pool.reserve(spawn);
  for (std::uint32_t i = 0; i < spawn; ++i) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// alpha-th unordered pair (x, y), x < y, in row-major order over x.
std::pair<std::uint32_t, std::uint32_t> pair_from_index(std::uint64_t alpha,
                                                        std::uint32_t n) {
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint64_t row = n - 1 - x;
    if (alpha < row) return {x, static_cast<std::uint32_t>(x + 1 + alpha)};
    alpha -= row;
  }
  throw ParameterError("pair index out of range");
}

constexpr std::uint64_t kLayerStreamTag = 0x6c61796572ULL;   // "layer"
constexpr std::uint64_t kPairStreamTag = 0x70616972ULL;      // "pair"
constexpr std::uint64_t kStarStreamTag = 0x77737461ULL;      // W* arm

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (n_grid.empty()) throw ParameterError("n_grid must be nonempty");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) {
      throw ParameterError("n_grid must be strictly increasing");
    }
  }
  if (collect_layers && layer_sources < 1) {
    throw ParameterError("layer_sources must be >= 1 when collecting layers");
  }
}

ExperimentConfig experiment_config_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("config is not valid JSON: ") + e.what(), 1);
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("mode")) {
      cfg.mode = regime_mode_from_string(j.at("mode").get<std::string>());
    }
    if (j.contains("t")) cfg.t = j.at("t").get<std::uint32_t>();
    if (j.contains("d")) cfg.d = j.at("d").get<std::uint32_t>();
    if (j.contains("c")) cfg.c = j.at("c").get<double>();
    if (j.contains("n_grid")) {
      cfg.n_grid = j.at("n_grid").get<std::vector<std::uint64_t>>();
    }
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("master_seed")) {
      cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    if (j.contains("workers")) cfg.workers = j.at("workers").get<std::uint32_t>();
    if (j.contains("collect_layers")) {
      cfg.collect_layers = j.at("collect_layers").get<bool>();
    }
    if (j.contains("layer_sources")) {
      cfg.layer_sources = j.at("layer_sources").get<std::uint32_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad config field: ") + e.what(), 1);
  }
  return cfg;
}

std::string experiment_config_to_json_text(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(cfg.mode);
  j["t"] = cfg.t;
  j["d"] = cfg.d;
  j["c"] = cfg.c;
  j["n_grid"] = cfg.n_grid;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["workers"] = cfg.workers;
  j["collect_layers"] = cfg.collect_layers;
  j["layer_sources"] = cfg.layer_sources;
  return j.dump();
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t n,
                                std::uint64_t trial) {
  std::uint64_t h = mix64(master_seed ^ 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (n * 0xbf58476d1ce4e5b9ULL));
  h = mix64(h ^ (trial * 0x94d049bb133111ebULL));
  return h;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t total) {
  if (total == 0) throw ParameterError("empty sample");
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double nn = static_cast<double>(total);
  const double ph = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

TrialRecord make_trial(const ExperimentConfig& cfg, const RegimeParams& params,
                       const ConcentrationParams& conc, std::uint64_t n,
                       std::uint64_t trial) {
  TrialRecord rec;
  rec.n = n;
  rec.trial = trial;
  rec.seed = derive_trial_seed(cfg.master_seed, n, trial);

  const std::uint32_t n32 = checked_vertex_count(n);
  const SampleConfig sample_cfg{n32, cfg.t, params.p, rec.seed};
  const UniformHypergraph h = sample_uniform_hypergraph(sample_cfg);
  const TrialStats stats = trial_statistics(h, cfg.d);
  rec.diam = stats.diam;
  rec.w = stats.remote_pairs;

  if (cfg.collect_layers && cfg.d >= 2) {
    rec.has_layers = true;
    rec.layer_sources = cfg.layer_sources;
    rec.omega_pass.assign(cfg.d, 0);
    Xoshiro256pp aux(mix64(rec.seed ^ kLayerStreamTag));
    for (std::uint32_t s = 0; s < cfg.layer_sources; ++s) {
      const std::uint32_t x = static_cast<std::uint32_t>(aux.next_below(n32));
      const LayerProfile prof = layer_profile(h, x, cfg.d - 1, false);
      for (std::uint32_t k = 1; k <= cfg.d - 1; ++k) {
        if (omega_star_holds(prof, params, conc, k)) ++rec.omega_pass[k];
      }
    }
    const std::uint32_t x = static_cast<std::uint32_t>(aux.next_below(n32));
    std::uint32_t z = static_cast<std::uint32_t>(aux.next_below(n32 - 1));
    if (z >= x) ++z;
    rec.isect_checked = 1;
    const double threshold = layer_intersection_threshold(params);
    rec.isect_within =
        static_cast<double>(layer_intersection(h, x, z, cfg.d - 1)) <=
        threshold;
  }
  return rec;
}

PerNSummary summarize(const ExperimentConfig& cfg, const RegimeParams& params,
                      std::span<const TrialRecord> records) {
  PerNSummary out;
  out.n = params.n;
  out.p = params.p;
  out.n_sub_choose = static_cast<double>(params.n_sub_choose);
  out.trials = records.size();

  std::map<std::uint32_t, std::uint64_t> diam_counts;
  EmpiricalDist w_dist;
  for (const auto& r : records) {
    ++diam_counts[r.diam.encoded()];
    w_dist.add(r.w);
  }
  for (const auto& [enc, count] : diam_counts) {
    DiameterBucket b;
    b.diam = enc;
    b.count = count;
    b.prob = static_cast<double>(count) / static_cast<double>(out.trials);
    b.wilson = wilson_interval(count, out.trials);
    out.diameter_histogram.push_back(b);
  }

  out.w_mean = w_dist.mean();
  out.w_variance = w_dist.variance();
  const double half_c = cfg.c / 2.0;
  out.tv_w_vs_poisson = tv_empirical_vs_poisson(w_dist, half_c);

  const double pairs =
      static_cast<double>(params.n) * static_cast<double>(params.n - 1) / 2.0;
  out.sum_pi_sq = out.w_mean * out.w_mean / pairs;
  if (out.w_mean > 0.0) {
    const SteinChenBound scb =
        stein_chen_tv_bound(out.w_mean, out.w_variance, out.sum_pi_sq);
    out.stein_chen_bound = scb.value;
    out.stein_chen_bracket_negative = scb.bracket_negative;
  } else {
    out.stein_chen_bound = std::numeric_limits<double>::quiet_NaN();
  }
  out.poisson_mean_gap = std::fabs(out.w_mean - half_c);
  out.combined_bound = out.stein_chen_bound + out.poisson_mean_gap;

  const auto targets = target_probabilities(cfg.c);
  out.target_p_diam_d = targets.first;
  out.target_p_diam_d1 = targets.second;
  out.target_w_mean = half_c;

  if (cfg.collect_layers && cfg.d >= 2) {
    out.omega_pass_freq.assign(cfg.d, 0.0);
    std::uint64_t sources = 0;
    for (const auto& r : records) {
      sources += r.layer_sources;
      for (std::uint32_t k = 1; k <= cfg.d - 1; ++k) {
        out.omega_pass_freq[k] += static_cast<double>(r.omega_pass[k]);
      }
      out.isect_checked += r.isect_checked;
      out.isect_within += r.isect_within;
    }
    if (sources > 0) {
      for (std::uint32_t k = 1; k <= cfg.d - 1; ++k) {
        out.omega_pass_freq[k] /= static_cast<double>(sources);
      }
    }
  }
  return out;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 std::vector<TrialRecord>* records_out) {
  cfg.validate();

  std::vector<RegimeParams> params;
  params.reserve(cfg.n_grid.size());
  for (std::uint64_t n : cfg.n_grid) {
    checked_vertex_count(n);
    try {
      params.push_back(solve_p(cfg.t, cfg.d, cfg.c, n, cfg.mode));
    } catch (const RegimeError& e) {
      throw RegimeError(std::string(e.what()) + " (n = " + std::to_string(n) +
                        ")");
    }
  }

  ExperimentSummary summary;
  summary.config = cfg;
  const std::uint32_t workers = effective_workers(cfg.workers);
  std::unordered_set<std::uint64_t> seed_guard;
  seed_guard.reserve(cfg.n_grid.size() * cfg.trials * 2);

  for (std::size_t gi = 0; gi < cfg.n_grid.size(); ++gi) {
    const std::uint64_t n = cfg.n_grid[gi];
    const ConcentrationParams conc = ConcentrationParams::make(params[gi]);
    std::vector<TrialRecord> records(cfg.trials);
    parallel_for(cfg.trials, workers, [&](std::uint64_t trial) {
      records[trial] = make_trial(cfg, params[gi], conc, n, trial);
    });
    for (const auto& r : records) {
      if (!seed_guard.insert(r.seed).second) {
        throw std::runtime_error("derived trial seeds collided");
      }
    }
    summary.per_n.push_back(summarize(cfg, params[gi], records));
    if (records_out) {
      records_out->insert(records_out->end(),
                          std::make_move_iterator(records.begin()),
                          std::make_move_iterator(records.end()));
    }
  }
  return summary;
}

void write_records_jsonl(std::ostream& os,
                         std::span<const TrialRecord> records) {
  for (const auto& r : records) {
    os << "{\"n\":" << r.n << ",\"trial\":" << r.trial << ",\"seed\":" << r.seed
       << ",\"diam\":";
    if (r.diam.is_finite()) {
      os << r.diam.value();
    } else {
      os << "\"inf\"";
    }
    os << ",\"w\":" << r.w;
    if (r.has_layers) {
      for (std::size_t k = 1; k < r.omega_pass.size(); ++k) {
        os << ",\"omega" << k << "\":" << r.omega_pass[k];
      }
      os << ",\"layer_sources\":" << r.layer_sources
         << ",\"isect_checked\":" << r.isect_checked
         << ",\"isect_within\":" << r.isect_within;
    }
    os << "}\n";
  }
}

namespace {

nlohmann::ordered_json bucket_to_json(const DiameterBucket& b) {
  nlohmann::ordered_json j;
  if (b.diam == kUnreachable) {
    j["diam"] = "inf";
  } else {
    j["diam"] = b.diam;
  }
  j["count"] = b.count;
  j["prob"] = b.prob;
  j["wilson_lo"] = b.wilson.lo;
  j["wilson_hi"] = b.wilson.hi;
  return j;
}

}  // namespace

void write_summary_json(std::ostream& os, const ExperimentSummary& summary) {
  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::parse(
      experiment_config_to_json_text(summary.config));
  // The worker count is execution metadata; summaries must be byte-identical
  // across worker counts.
  j["config"].erase("workers");
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& s : summary.per_n) {
    nlohmann::ordered_json row;
    row["n"] = s.n;
    row["p"] = s.p;
    row["N"] = s.n_sub_choose;
    row["trials"] = s.trials;
    row["diameter_histogram"] = nlohmann::ordered_json::array();
    for (const auto& b : s.diameter_histogram) {
      row["diameter_histogram"].push_back(bucket_to_json(b));
    }
    row["w_mean"] = s.w_mean;
    row["w_variance"] = s.w_variance;
    row["tv_w_vs_poisson"] = s.tv_w_vs_poisson;
    row["sum_pi_sq"] = s.sum_pi_sq;
    if (std::isnan(s.stein_chen_bound)) {
      row["stein_chen_bound"] = nullptr;
    } else {
      row["stein_chen_bound"] = s.stein_chen_bound;
    }
    row["stein_chen_bracket_negative"] = s.stein_chen_bracket_negative;
    row["poisson_mean_gap"] = s.poisson_mean_gap;
    if (std::isnan(s.combined_bound)) {
      row["combined_bound"] = nullptr;
    } else {
      row["combined_bound"] = s.combined_bound;
    }
    row["targets"] = {{"p_diam_d", s.target_p_diam_d},
                      {"p_diam_d1", s.target_p_diam_d1},
                      {"w_mean", s.target_w_mean}};
    if (!s.omega_pass_freq.empty()) {
      row["omega_pass_freq"] = std::vector<double>(
          s.omega_pass_freq.begin() + 1, s.omega_pass_freq.end());
      row["isect_checked"] = s.isect_checked;
      row["isect_within"] = s.isect_within;
    }
    j["results"].push_back(row);
  }
  os << j.dump(2) << '\n';
}

const char* const kSummaryCsvHeader =
    "n,p,trials,p_diam_d,p_diam_d_lo,p_diam_d_hi,p_diam_d1,p_diam_d1_lo,"
    "p_diam_d1_hi,p_diam_other,w_mean,w_variance,tv_w_vs_poisson,"
    "stein_chen_bound,poisson_mean_gap,combined_bound,target_p_diam_d,"
    "target_p_diam_d1,target_w_mean";

void write_summary_csv(std::ostream& os, const ExperimentSummary& summary) {
  os << kSummaryCsvHeader << '\n';
  char buf[64];
  const auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  const std::uint32_t d = summary.config.d;
  for (const auto& s : summary.per_n) {
    const DiameterBucket* at_d = nullptr;
    const DiameterBucket* at_d1 = nullptr;
    for (const auto& b : s.diameter_histogram) {
      if (b.diam == d) at_d = &b;
      if (b.diam == d + 1) at_d1 = &b;
    }
    const double p_d = at_d ? at_d->prob : 0.0;
    const double p_d1 = at_d1 ? at_d1->prob : 0.0;
    const WilsonInterval w_d =
        at_d ? at_d->wilson : wilson_interval(0, s.trials);
    const WilsonInterval w_d1 =
        at_d1 ? at_d1->wilson : wilson_interval(0, s.trials);
    os << s.n << ',' << fmt(s.p) << ',' << s.trials << ',' << fmt(p_d) << ','
       << fmt(w_d.lo) << ',' << fmt(w_d.hi) << ',' << fmt(p_d1) << ','
       << fmt(w_d1.lo) << ',' << fmt(w_d1.hi) << ',' << fmt(1.0 - p_d - p_d1)
       << ',' << fmt(s.w_mean) << ',' << fmt(s.w_variance) << ','
       << fmt(s.tv_w_vs_poisson) << ',' << fmt(s.stein_chen_bound) << ','
       << fmt(s.poisson_mean_gap) << ',' << fmt(s.combined_bound) << ','
       << fmt(s.target_p_diam_d) << ',' << fmt(s.target_p_diam_d1) << ','
       << fmt(s.target_w_mean) << '\n';
  }
}

CouplingReport coupling_monotonicity_test(std::uint32_t n, std::uint32_t t,
                                          double p1, double p2, std::uint32_t r,
                                          std::uint64_t trials,
                                          std::uint64_t master_seed) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  CouplingReport report;
  report.trials = trials;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = derive_trial_seed(master_seed, n, trial);
    const auto [h1, h2] = coupled_sample(n, t, p1, p2, seed);
    if (!h1.subhypergraph_of(h2)) {
      throw std::runtime_error("coupled sample is not nested");
    }
    bool violated = false;
    bool conn1 = true, conn2 = true;
    std::uint32_t ecc1 = 0, ecc2 = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      const auto d1 = bfs_distances(h1, x);
      const auto d2 = bfs_distances(h2, x);
      for (std::uint32_t y = 0; y < n; ++y) {
        // kUnreachable is the numeric maximum, so plain comparison treats
        // unreachable as +infinity.
        if (d2.dist[y] > d1.dist[y]) violated = true;
        if (d1.dist[y] == kUnreachable) {
          conn1 = false;
        } else {
          ecc1 = std::max(ecc1, d1.dist[y]);
        }
        if (d2.dist[y] == kUnreachable) {
          conn2 = false;
        } else {
          ecc2 = std::max(ecc2, d2.dist[y]);
        }
      }
    }
    if (violated) ++report.violations;
    if (conn1 && ecc1 <= r) ++report.diam_le_r_at_p1;
    if (conn2 && ecc2 <= r) ++report.diam_le_r_at_p2;
  }
  return report;
}

DominanceReport size_biased_dominance_test(std::uint32_t n, std::uint32_t t,
                                           double p, std::uint32_t d,
                                           std::uint64_t trials,
                                           std::uint64_t master_seed) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (n < 2) throw ParameterError("need at least two vertices");
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;

  const auto draw_pair_statistic =
      [&](std::uint64_t seed, std::uint64_t* w_out) -> bool {
    // Returns X_J for a fresh sample and J drawn uniformly over the pairs.
    const UniformHypergraph h =
        sample_uniform_hypergraph(SampleConfig{n, t, p, seed});
    Xoshiro256pp jrng(mix64(seed ^ kPairStreamTag));
    const auto [x, y] = pair_from_index(jrng.next_below(pairs), n);
    const auto prof = bfs_distances(h, x);
    *w_out = count_remote_pairs(h, d);
    return prof.dist[y] > d;
  };

  // Pilot: estimate the rejection acceptance probability P(X_J = 1).
  const std::uint64_t pilot = 10000;
  std::uint64_t accepted = 0;
  for (std::uint64_t i = 0; i < pilot; ++i) {
    std::uint64_t w = 0;
    if (draw_pair_statistic(
            derive_trial_seed(mix64(master_seed ^ 0x70696c6fULL), n, i), &w)) {
      ++accepted;
    }
  }
  DominanceReport report;
  report.acceptance_rate =
      static_cast<double>(accepted) / static_cast<double>(pilot);
  if (report.acceptance_rate < 1e-4) {
    throw InfeasibleConditioningError(
        "rejection acceptance probability below 1e-4; conditional law "
        "infeasible at this size");
  }

  // Arm 1: W + 1 - X_J sampled directly.
  for (std::uint64_t i = 0; i < trials; ++i) {
    std::uint64_t w = 0;
    const bool xj =
        draw_pair_statistic(derive_trial_seed(master_seed, n, i), &w);
    report.w_plus.add(w + 1 - (xj ? 1 : 0));
  }
  // Arm 2: W* by rejection; on acceptance 1 + sum_{beta != J} X_beta = W.
  const std::uint64_t budget =
      static_cast<std::uint64_t>(10.0 * static_cast<double>(trials) /
                                 report.acceptance_rate) +
      pilot;
  std::uint64_t attempts = 0;
  for (std::uint64_t got = 0; got < trials; ++attempts) {
    if (attempts > budget) {
      throw InfeasibleConditioningError(
          "rejection budget exhausted while sampling the size-biased law");
    }
    std::uint64_t w = 0;
    if (draw_pair_statistic(
            derive_trial_seed(mix64(master_seed ^ kStarStreamTag), n, attempts),
            &w)) {
      report.w_star.add(w);
      ++got;
    }
  }
  report.draws = trials;

  // One-sided CDF comparison with a binomial noise band.
  const std::uint64_t top =
      std::max(report.w_plus.max_value(), report.w_star.max_value());
  double cdf1 = 0.0, cdf2 = 0.0;
  report.consistent = true;
  for (std::uint64_t k = 0; k <= top; ++k) {
    cdf1 += report.w_plus.frequency(k);
    cdf2 += report.w_star.frequency(k);
    const double gap = cdf2 - cdf1;
    const double sigma = std::sqrt(
        cdf1 * (1.0 - cdf1) / static_cast<double>(trials) +
        cdf2 * (1.0 - cdf2) / static_cast<double>(trials));
    if (gap > report.max_cdf_gap) {
      report.max_cdf_gap = gap;
      report.noise_band_at_max = 3.0 * sigma;
    }
    if (gap > 3.0 * sigma) report.consistent = false;
  }
  return report;
}

MomentReport moment_diagnostics(const ExperimentConfig& cfg) {
  std::vector<TrialRecord> records;
  run_experiment(cfg, &records);

  MomentReport report;
  for (std::uint64_t n : cfg.n_grid) {
    std::vector<double> w_samples, w2_samples;
    for (const auto& r : records) {
      if (r.n != n) continue;
      const double w = static_cast<double>(r.w);
      w_samples.push_back(w);
      w2_samples.push_back(w * (w - 1.0));
    }
    const double trials = static_cast<double>(w_samples.size());
    const auto mean_sd = [trials](const std::vector<double>& xs) {
      double m = 0.0;
      for (double x : xs) m += x;
      m /= trials;
      double v = 0.0;
      for (double x : xs) v += (x - m) * (x - m);
      v = trials > 1 ? v / (trials - 1.0) : 0.0;
      return std::pair<double, double>{m, std::sqrt(v)};
    };
    const auto [m1, sd1] = mean_sd(w_samples);
    const auto [m2, sd2] = mean_sd(w2_samples);
    const double nn = static_cast<double>(n);
    const double pairs = nn * (nn - 1.0) / 2.0;
    const double z = 1.959963984540054;

    MomentEntry e;
    e.n = n;
    e.q1_hat = m1 / pairs;
    const double se1 = sd1 / std::sqrt(trials) / pairs;
    e.q1_lo = e.q1_hat - z * se1;
    e.q1_hi = e.q1_hat + z * se1;
    e.target1 = cfg.c / (nn * nn);
    e.ratio1 = e.q1_hat / e.target1;

    e.q2_hat = m2 / (pairs * (pairs - 1.0));
    const double se2 = sd2 / std::sqrt(trials) / (pairs * (pairs - 1.0));
    e.q2_lo = e.q2_hat - z * se2;
    e.q2_hi = e.q2_hat + z * se2;
    e.target2 = cfg.c * cfg.c / (nn * nn * nn * nn);
    e.ratio2 = e.q2_hat / e.target2;
    report.per_n.push_back(e);
  }
  return report;
}

}  // namespace hyperdiam
