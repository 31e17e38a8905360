#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hyperdiam/metrics.hpp"
#include "hyperdiam/parametrization.hpp"
#include "hyperdiam/probability.hpp"

namespace hyperdiam {

struct ExperimentConfig {
  RegimeMode mode = RegimeMode::graph_bollobas;
  std::uint32_t t = 2;
  std::uint32_t d = 2;
  double c = 1.0;
  std::vector<std::uint64_t> n_grid = {500, 1000};
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 1;
  std::uint32_t workers = 0;  // 0: one per hardware thread
  bool collect_layers = false;
  std::uint32_t layer_sources = 1;

  void validate() const;
};

/// JSON round-trip with the stable field names
/// mode, t, d, c, n_grid, trials, master_seed, workers, collect_layers,
/// layer_sources. Missing fields keep their defaults.
ExperimentConfig experiment_config_from_json_text(const std::string& text);
std::string experiment_config_to_json_text(const ExperimentConfig& cfg);

/// One sampled hypergraph's results. The seed is a pure function of
/// (master_seed, n, trial), so scheduling cannot influence any record.
struct TrialRecord {
  std::uint64_t n = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  DiameterResult diam = DiameterResult::infinite();
  std::uint64_t w = 0;

  bool has_layers = false;
  std::uint32_t layer_sources = 0;
  std::vector<std::uint32_t> omega_pass;  // index k = 1..d-1; [0] unused
  std::uint32_t isect_checked = 0;
  std::uint32_t isect_within = 0;
};

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t n,
                                std::uint64_t trial);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
};
/// Wilson 95% score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t total);

struct DiameterBucket {
  std::uint32_t diam = 0;  // kUnreachable encodes the infinity bucket
  std::uint64_t count = 0;
  double prob = 0.0;
  WilsonInterval wilson;
};

struct PerNSummary {
  std::uint64_t n = 0;
  double p = 0.0;
  double n_sub_choose = 0.0;
  std::uint64_t trials = 0;

  std::vector<DiameterBucket> diameter_histogram;
  double w_mean = 0.0;
  double w_variance = 0.0;
  double tv_w_vs_poisson = 0.0;  // TV(empirical W, Poi(c/2))

  // Explicit bound assembly: d_TV(W, Poi(c/2)) <= stein_chen + poisson gap.
  double sum_pi_sq = 0.0;  // (E-hat W)^2 / |I| by exchangeability
  double stein_chen_bound = 0.0;
  bool stein_chen_bracket_negative = false;
  double poisson_mean_gap = 0.0;  // |E-hat W - c/2|
  double combined_bound = 0.0;

  double target_p_diam_d = 0.0;   // e^{-c/2}
  double target_p_diam_d1 = 0.0;  // 1 - e^{-c/2}
  double target_w_mean = 0.0;     // c/2

  std::vector<double> omega_pass_freq;  // index k = 1..d-1 when collected
  std::uint64_t isect_checked = 0;
  std::uint64_t isect_within = 0;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<PerNSummary> per_n;
};

/// Runs trials independent samples for every n in the grid and summarizes.
/// Output is identical for identical config regardless of the worker count;
/// when records is non-null the per-trial stream (ordered by n, then trial)
/// is appended to it.
ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 std::vector<TrialRecord>* records = nullptr);

/// JSON Lines, one record per line, stable field names:
/// n, trial, seed, diam ("inf" for the infinity bucket), w, then omega1...,
/// layer_sources, isect_checked, isect_within when layer data was collected.
void write_records_jsonl(std::ostream& os, std::span<const TrialRecord> records);

void write_summary_json(std::ostream& os, const ExperimentSummary& summary);
void write_summary_csv(std::ostream& os, const ExperimentSummary& summary);

/// The pinned summary.csv header row.
extern const char* const kSummaryCsvHeader;

struct CouplingReport {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;  // trials where any distance grew with p
  std::uint64_t diam_le_r_at_p1 = 0;
  std::uint64_t diam_le_r_at_p2 = 0;
};

/// Samples coupled pairs H1 ⊆ H2 and counts trials in which some pairwise
/// distance in H2 exceeds the one in H1. The coupling argument says the count
/// is exactly zero; any violation is a defect, not noise.
CouplingReport coupling_monotonicity_test(std::uint32_t n, std::uint32_t t,
                                          double p1, double p2, std::uint32_t r,
                                          std::uint64_t trials,
                                          std::uint64_t master_seed);

struct DominanceReport {
  std::uint64_t draws = 0;           // per arm
  double acceptance_rate = 0.0;      // pilot estimate of P(X_J = 1)
  double max_cdf_gap = 0.0;          // max_k [CDF(W*) - CDF(W+1-X_J)](k)
  double noise_band_at_max = 0.0;    // 3 sigma at that k
  bool consistent = false;           // gap within 3 sigma everywhere
  EmpiricalDist w_plus;              // W + 1 - X_J draws
  EmpiricalDist w_star;              // W* draws (rejection on X_J = 1)
};

/// Monte Carlo check of W + 1 - X_J <=_st W*. W* is realized by rejection:
/// hypergraphs are resampled until X_J = 1 and the remote-pair count of the
/// accepted sample is recorded. Acceptance probability is roughly c/n^2, so
/// the test is only feasible at small n; an estimated acceptance below 1e-4
/// raises InfeasibleConditioningError.
DominanceReport size_biased_dominance_test(std::uint32_t n, std::uint32_t t,
                                           double p, std::uint32_t d,
                                           std::uint64_t trials,
                                           std::uint64_t master_seed);

struct MomentEntry {
  std::uint64_t n = 0;
  double q1_hat = 0.0;  // pooled estimate of P(X_alpha = 1)
  double q1_lo = 0.0, q1_hi = 0.0;
  double target1 = 0.0;  // c / n^2
  double ratio1 = 0.0;
  double q2_hat = 0.0;  // pooled estimate of P(X_alpha = 1, X_beta = 1)
  double q2_lo = 0.0, q2_hi = 0.0;
  double target2 = 0.0;  // c^2 / n^4
  double ratio2 = 0.0;
};

struct MomentReport {
  std::vector<MomentEntry> per_n;
};

/// Pair-level moment estimates via the exchangeability plug-ins
/// q1 = mean(W)/|I| and q2 = mean(W(W-1))/(|I|(|I|-1)), with normal 95% CIs.
MomentReport moment_diagnostics(const ExperimentConfig& cfg);

}  // namespace hyperdiam
