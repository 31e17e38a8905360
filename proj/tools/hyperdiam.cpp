#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperdiam/errors.hpp"
#include "hyperdiam/hypergraph.hpp"
#include "hyperdiam/metrics.hpp"
#include "hyperdiam/montecarlo.hpp"
#include "hyperdiam/oracle.hpp"
#include "hyperdiam/parametrization.hpp"
#include "hyperdiam/probability.hpp"

namespace {

using namespace hyperdiam;

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitIo = 3;
constexpr int kExitFeasibility = 4;
constexpr int kExitVerifyFailed = 5;

RegimeMode resolve_mode(const std::string& mode, std::uint32_t t) {
  if (mode == "auto") {
    return t == 2 ? RegimeMode::graph_bollobas : RegimeMode::hypergraph_general;
  }
  return regime_mode_from_string(mode);
}

nlohmann::ordered_json regime_params_json(const RegimeParams& rp) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(rp.mode);
  j["t"] = rp.t;
  j["d"] = rp.d;
  j["c"] = rp.c;
  j["n"] = rp.n;
  j["N"] = static_cast<double>(rp.n_sub_choose);
  j["p"] = rp.p;
  j["log_term"] = rp.log_term;
  j["residual"] = rp.residual;
  return j;
}

int cmd_solve_p(std::uint32_t t, std::uint32_t d, double c, std::uint64_t n,
                const std::string& mode) {
  const RegimeParams rp = solve_p(t, d, c, n, resolve_mode(mode, t));
  std::cout << regime_params_json(rp).dump(2) << '\n';
  return kExitOk;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open output file: " + path, 0);
  return out;
}

UniformHypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open input file: " + path, 0);
  return read_hypergraph(in);
}

int cmd_sample(std::uint32_t n, std::uint32_t t, double p, std::uint64_t seed,
               const std::string& out_path) {
  SampleInfo info;
  const UniformHypergraph g =
      sample_uniform_hypergraph(SampleConfig{n, t, p, seed}, &info);
  if (out_path == "-") {
    write_hypergraph(std::cout, g);
  } else {
    auto out = open_output(out_path);
    write_hypergraph(out, g);
  }
  std::cerr << "sampled m=" << info.realized_edges << " edges via "
            << (info.dense_path ? "dense rank sweep" : "binomial count + unrank")
            << (info.normal_approx
                    ? " (edge count via normal approximation)"
                    : "")
            << '\n';
  return kExitOk;
}

int cmd_diam(const std::optional<std::string>& in_path, std::uint32_t n,
             std::uint32_t t, double p, std::uint64_t seed, std::uint32_t d) {
  const UniformHypergraph g =
      in_path ? load_hypergraph(*in_path)
              : sample_uniform_hypergraph(SampleConfig{n, t, p, seed});
  const TrialStats stats = trial_statistics(g, d);
  std::cout << "diam=";
  if (stats.diam.is_finite()) {
    std::cout << stats.diam.value();
  } else {
    std::cout << "inf";
  }
  std::cout << " w(d=" << d << ")=" << stats.remote_pairs << '\n';
  return kExitOk;
}

void print_summary_table(const ExperimentSummary& summary) {
  const std::uint32_t d = summary.config.d;
  for (const auto& s : summary.per_n) {
    std::printf("n=%llu  p=%.6g  trials=%llu\n",
                static_cast<unsigned long long>(s.n), s.p,
                static_cast<unsigned long long>(s.trials));
    for (const auto& b : s.diameter_histogram) {
      if (b.diam == kUnreachable) {
        std::printf("  P(diam=inf) = %.4f [%.4f, %.4f]\n", b.prob, b.wilson.lo,
                    b.wilson.hi);
      } else {
        std::printf("  P(diam=%u) = %.4f [%.4f, %.4f]%s\n", b.diam, b.prob,
                    b.wilson.lo, b.wilson.hi,
                    b.diam == d         ? "   <- target e^{-c/2}"
                    : b.diam == d + 1   ? "   <- target 1-e^{-c/2}"
                                        : "");
      }
    }
    std::printf("  targets: P(diam=d)=%.6f  P(diam=d+1)=%.6f  E[W]=%.4f\n",
                s.target_p_diam_d, s.target_p_diam_d1, s.target_w_mean);
    std::printf("  W: mean=%.4f var=%.4f  TV(W, Poi(c/2))=%.4f\n", s.w_mean,
                s.w_variance, s.tv_w_vs_poisson);
    std::printf("  bounds: stein-chen=%.4g%s + |EW-c/2|=%.4g = %.4g\n",
                s.stein_chen_bound,
                s.stein_chen_bracket_negative ? " (negative bracket)" : "",
                s.poisson_mean_gap, s.combined_bound);
    if (!s.omega_pass_freq.empty()) {
      std::printf("  omega-star pass freq:");
      for (std::size_t k = 1; k < s.omega_pass_freq.size(); ++k) {
        std::printf(" k=%zu: %.4f", k, s.omega_pass_freq[k]);
      }
      std::printf("  intersection within bound: %llu/%llu\n",
                  static_cast<unsigned long long>(s.isect_within),
                  static_cast<unsigned long long>(s.isect_checked));
    }
  }
}

int cmd_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                   bool with_moments) {
  // Validate all output paths before any work starts.
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw FormatError("cannot create output directory: " + out_dir, 0);
  const std::string records_path = out_dir + "/records.jsonl";
  const std::string json_path = out_dir + "/summary.json";
  const std::string csv_path = out_dir + "/summary.csv";
  auto records_out = open_output(records_path);
  auto json_out = open_output(json_path);
  auto csv_out = open_output(csv_path);
  std::optional<std::ofstream> moments_out;
  if (with_moments) moments_out = open_output(out_dir + "/moments.json");

  std::vector<TrialRecord> records;
  const ExperimentSummary summary = run_experiment(cfg, &records);
  write_records_jsonl(records_out, records);
  write_summary_json(json_out, summary);
  write_summary_csv(csv_out, summary);
  print_summary_table(summary);
  std::printf("wrote %s, %s, %s\n", records_path.c_str(), json_path.c_str(),
              csv_path.c_str());

  if (with_moments) {
    const MomentReport report = moment_diagnostics(cfg);
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& e : report.per_n) {
      nlohmann::ordered_json row;
      row["n"] = e.n;
      row["q1_hat"] = e.q1_hat;
      row["q1_ci"] = {e.q1_lo, e.q1_hi};
      row["target_c_over_n2"] = e.target1;
      row["ratio1"] = e.ratio1;
      row["q2_hat"] = e.q2_hat;
      row["q2_ci"] = {e.q2_lo, e.q2_hi};
      row["target_c2_over_n4"] = e.target2;
      row["ratio2"] = e.ratio2;
      j.push_back(row);
      std::printf(
          "moments n=%llu: q1/target=%.3f  q2/target=%.3f\n",
          static_cast<unsigned long long>(e.n), e.ratio1, e.ratio2);
    }
    *moments_out << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_oracle(std::uint32_t n, std::uint32_t t, double p, std::uint32_t d,
               std::uint32_t cap, const std::optional<std::string>& json_path) {
  const ExactJointDistribution law = enumerate_exact(n, t, p, d, cap);
  std::printf("exact law at n=%u t=%u p=%.6g d=%u\n", n, t, p, d);
  std::printf("total probability = %.15f\n", law.total_probability);
  std::printf("P(X_alpha=1) = %.12g   E[W] = %.12g\n",
              law.single_pair_remote_prob, law.mean_remote_from_joint());
  std::printf("diameter marginal:\n");
  for (const auto& [diam, prob] : law.diameter_marginal) {
    if (diam == kUnreachable) {
      std::printf("  diam=inf  p=%.12g\n", prob);
    } else {
      std::printf("  diam=%-3u  p=%.12g\n", diam, prob);
    }
  }
  std::printf("remote-pair marginal (W at d=%u):\n", d);
  for (const auto& [w, prob] : law.remote_marginal) {
    std::printf("  w=%-4llu  p=%.12g\n", static_cast<unsigned long long>(w),
                prob);
  }
  if (json_path) {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["t"] = t;
    j["p"] = p;
    j["d"] = d;
    j["total_probability"] = law.total_probability;
    j["single_pair_remote_prob"] = law.single_pair_remote_prob;
    j["mean_w"] = law.mean_remote_from_joint();
    auto& joint = j["joint"] = nlohmann::ordered_json::array();
    for (const auto& [key, prob] : law.joint) {
      nlohmann::ordered_json row;
      if (key.first == kUnreachable) {
        row["diam"] = "inf";
      } else {
        row["diam"] = key.first;
      }
      row["w"] = key.second;
      row["prob"] = prob;
      joint.push_back(row);
    }
    auto out = open_output(*json_path);
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

struct VerifyState {
  int failures = 0;

  void check(bool ok, const std::string& name, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "ok" : "FAIL", name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
  }
};

int cmd_verify(std::uint64_t seed) {
  VerifyState v;
  char buf[256];

  {
    const auto law = enumerate_exact(5, 2, 0.5, 2);
    const double err = std::fabs(law.total_probability - 1.0);
    std::snprintf(buf, sizeof(buf), "|sum - 1| = %.3g", err);
    v.check(err <= 1e-12, "oracle-closure n=5 t=2", buf);
    const double mean_direct = law.mean_remote_from_joint();
    const double mean_pair = 10.0 * law.single_pair_remote_prob;
    std::snprintf(buf, sizeof(buf), "joint mean %.12g vs |I|*q %.12g",
                  mean_direct, mean_pair);
    v.check(std::fabs(mean_direct - mean_pair) <= 1e-12,
            "oracle-exchangeability", buf);
  }

  {
    double worst = 0.0;
    for (std::uint32_t n = 4; n <= 5; ++n) {
      for (std::uint32_t d = 1; d <= 2; ++d) {
        for (int pi = 1; pi <= 9; ++pi) {
          worst = std::min(worst, exact_fkg_check(n, 2, pi / 10.0, d));
        }
      }
    }
    for (int pi = 1; pi <= 9; ++pi) {
      worst = std::min(worst, exact_fkg_check(5, 3, pi / 10.0, 1));
    }
    std::snprintf(buf, sizeof(buf), "min correlation gap = %.3g", worst);
    v.check(worst >= -1e-12, "fkg-exact", buf);
  }

  {
    const auto r1 = exact_size_biased_check(4, 2, 0.5, 1);
    const auto r2 = exact_size_biased_check(5, 2, 0.4, 2);
    std::snprintf(buf, sizeof(buf), "max CDF gaps %.3g, %.3g", r1.max_cdf_gap,
                  r2.max_cdf_gap);
    v.check(r1.dominance_holds && r2.dominance_holds, "size-biased-exact", buf);

    const auto mc = size_biased_dominance_test(5, 2, 0.4, 2, 4000, seed);
    std::snprintf(buf, sizeof(buf),
                  "max gap %.4f noise %.4f acceptance %.3f (oracle holds: %d)",
                  mc.max_cdf_gap, mc.noise_band_at_max, mc.acceptance_rate,
                  r2.dominance_holds ? 1 : 0);
    v.check(mc.consistent == r2.dominance_holds, "size-biased-montecarlo", buf);
  }

  {
    bool monotone = true;
    for (std::uint32_t r = 1; r <= 3; ++r) {
      double prev = -1.0;
      for (int pi = 1; pi <= 9; ++pi) {
        const double cur = enumerate_exact(4, 2, pi / 10.0, 2).diameter_cdf(r);
        if (cur < prev - 1e-12) monotone = false;
        prev = cur;
      }
    }
    v.check(monotone, "coupling-exact",
            "P(diam<=r) nondecreasing in p over the grid");
  }

  {
    const auto rep = coupling_monotonicity_test(60, 2, 0.1, 0.3, 3, 500, seed);
    std::snprintf(buf, sizeof(buf), "violations = %llu / %llu trials",
                  static_cast<unsigned long long>(rep.violations),
                  static_cast<unsigned long long>(rep.trials));
    v.check(rep.violations == 0, "coupling-montecarlo-graph", buf);
    const auto rep3 =
        coupling_monotonicity_test(30, 3, 0.005, 0.02, 3, 500, seed + 1);
    std::snprintf(buf, sizeof(buf), "violations = %llu / %llu trials",
                  static_cast<unsigned long long>(rep3.violations),
                  static_cast<unsigned long long>(rep3.trials));
    v.check(rep3.violations == 0, "coupling-montecarlo-hypergraph", buf);
  }

  {
    const std::uint64_t trials = 100000;
    const auto law = enumerate_exact(5, 2, 0.5, 2);
    std::map<std::uint32_t, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < trials; ++i) {
      const auto g = sample_uniform_hypergraph(
          SampleConfig{5, 2, 0.5, derive_trial_seed(seed, 5, i)});
      ++counts[trial_statistics(g, 2).diam.encoded()];
    }
    double worst_sigma = 0.0;
    for (const auto& [diam, prob] : law.diameter_marginal) {
      const auto it = counts.find(diam);
      const double emp =
          it == counts.end()
              ? 0.0
              : static_cast<double>(it->second) / static_cast<double>(trials);
      const double se =
          std::sqrt(prob * (1.0 - prob) / static_cast<double>(trials));
      if (se > 0.0) {
        worst_sigma = std::max(worst_sigma, std::fabs(emp - prob) / se);
      }
    }
    std::snprintf(buf, sizeof(buf), "worst |emp - exact| = %.2f sigma",
                  worst_sigma);
    v.check(worst_sigma <= 3.0, "oracle-vs-montecarlo", buf);
  }

  std::printf("%s\n", v.failures == 0 ? "verify: all checks passed"
                                      : "verify: FAILURES detected");
  return v.failures == 0 ? kExitOk : kExitVerifyFailed;
}

std::uint32_t default_workers_from_env() {
  if (const char* env = std::getenv("HYPERDIAM_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::uint32_t>(v);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diameter and remote-pair laboratory for random uniform "
               "hypergraphs H(n,t,p)"};
  app.require_subcommand(1);

  // solve-p
  auto* sp = app.add_subcommand("solve-p", "solve the critical probability p");
  std::uint32_t sp_t = 2, sp_d = 2;
  double sp_c = 1.0;
  std::uint64_t sp_n = 0;
  std::string sp_mode = "auto";
  sp->add_option("--t", sp_t, "edge size");
  sp->add_option("--d", sp_d, "target diameter");
  sp->add_option("--c", sp_c, "constant c");
  sp->add_option("--n", sp_n, "vertex count")->required();
  sp->add_option("--mode", sp_mode,
                 "graph-bollobas | hypergraph-general | auto");

  // sample
  auto* sa = app.add_subcommand("sample", "sample one hypergraph to a file");
  std::uint32_t sa_n = 0, sa_t = 2;
  double sa_p = 0.0;
  std::uint64_t sa_seed = 1;
  std::string sa_out = "-";
  sa->add_option("--n", sa_n)->required();
  sa->add_option("--t", sa_t);
  sa->add_option("--p", sa_p)->required();
  sa->add_option("--seed", sa_seed);
  sa->add_option("--out", sa_out, "output path, '-' for stdout");

  // diam
  auto* di = app.add_subcommand("diam", "diameter and remote pairs of one "
                                        "hypergraph (from file or sampled)");
  std::string di_in;
  std::uint32_t di_n = 0, di_t = 2, di_d = 2;
  double di_p = 0.0;
  std::uint64_t di_seed = 1;
  auto* di_in_opt = di->add_option("--in", di_in, "hypergraph file");
  di->add_option("--n", di_n);
  di->add_option("--t", di_t);
  di->add_option("--p", di_p);
  di->add_option("--seed", di_seed);
  di->add_option("--d", di_d, "remote-pair threshold");

  // experiment
  auto* ex = app.add_subcommand("experiment", "run the Monte Carlo experiment");
  std::string ex_config;
  std::string ex_mode = "auto";
  std::uint32_t ex_t = 2, ex_d = 2, ex_workers = 0, ex_layer_sources = 1;
  double ex_c = 1.0;
  std::string ex_n_grid;
  std::uint64_t ex_trials = 1000, ex_seed = 1;
  bool ex_layers = false, ex_moments = false;
  std::string ex_out_dir = ".";
  ex->add_option("--config", ex_config, "JSON config file");
  auto* ex_mode_opt = ex->add_option("--mode", ex_mode);
  auto* ex_t_opt = ex->add_option("--t", ex_t);
  auto* ex_d_opt = ex->add_option("--d", ex_d);
  auto* ex_c_opt = ex->add_option("--c", ex_c);
  auto* ex_ng_opt =
      ex->add_option("--n-grid", ex_n_grid, "comma-separated vertex counts");
  auto* ex_tr_opt = ex->add_option("--trials", ex_trials);
  auto* ex_ms_opt = ex->add_option("--master-seed", ex_seed);
  auto* ex_wk_opt = ex->add_option("--workers", ex_workers);
  auto* ex_cl_opt = ex->add_flag("--collect-layers", ex_layers);
  auto* ex_ls_opt = ex->add_option("--layer-sources", ex_layer_sources);
  ex->add_flag("--moments", ex_moments, "also emit moment diagnostics");
  ex->add_option("--out-dir", ex_out_dir);

  // oracle
  auto* orc = app.add_subcommand("oracle", "exhaustive exact law at tiny n");
  std::uint32_t or_n = 0, or_t = 2, or_d = 1, or_cap = kOracleDefaultCap;
  double or_p = 0.5;
  std::string or_json;
  orc->add_option("--n", or_n)->required();
  orc->add_option("--t", or_t);
  orc->add_option("--p", or_p);
  orc->add_option("--d", or_d);
  orc->add_option("--cap", or_cap, "max C(n,t)");
  auto* or_json_opt = orc->add_option("--json", or_json, "write full law");

  // verify
  auto* ve = app.add_subcommand("verify", "run the property battery");
  std::uint64_t ve_seed = 20240801;
  ve->add_option("--seed", ve_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (sp->parsed()) return cmd_solve_p(sp_t, sp_d, sp_c, sp_n, sp_mode);
    if (sa->parsed()) return cmd_sample(sa_n, sa_t, sa_p, sa_seed, sa_out);
    if (di->parsed()) {
      std::optional<std::string> in;
      if (di_in_opt->count() > 0) in = di_in;
      if (!in && di_n == 0) {
        throw ParameterError("diam needs --in or sampling parameters --n/--p");
      }
      return cmd_diam(in, di_n, di_t, di_p, di_seed, di_d);
    }
    if (ex->parsed()) {
      ExperimentConfig cfg;
      bool mode_explicit = false;
      if (!ex_config.empty()) {
        std::ifstream in(ex_config);
        if (!in) throw FormatError("cannot open config file: " + ex_config, 0);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = experiment_config_from_json_text(ss.str());
        mode_explicit = nlohmann::json::parse(ss.str()).contains("mode");
      }
      // Priority: explicit flag > config file > HYPERDIAM_WORKERS > auto.
      if (ex_t_opt->count()) cfg.t = ex_t;
      if (ex_d_opt->count()) cfg.d = ex_d;
      if (ex_c_opt->count()) cfg.c = ex_c;
      if (ex_tr_opt->count()) cfg.trials = ex_trials;
      if (ex_ms_opt->count()) cfg.master_seed = ex_seed;
      if (ex_wk_opt->count()) {
        cfg.workers = ex_workers;
      } else if (cfg.workers == 0) {
        cfg.workers = default_workers_from_env();
      }
      if (ex_cl_opt->count()) cfg.collect_layers = ex_layers;
      if (ex_ls_opt->count()) cfg.layer_sources = ex_layer_sources;
      if (ex_ng_opt->count()) {
        cfg.n_grid.clear();
        std::stringstream ss(ex_n_grid);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          if (!tok.empty()) cfg.n_grid.push_back(std::stoull(tok));
        }
      }
      if (ex_mode_opt->count()) {
        cfg.mode = resolve_mode(ex_mode, cfg.t);
      } else if (!mode_explicit) {
        cfg.mode = resolve_mode("auto", cfg.t);
      }
      return cmd_experiment(cfg, ex_out_dir, ex_moments);
    }
    if (orc->parsed()) {
      std::optional<std::string> json;
      if (or_json_opt->count() > 0) json = or_json;
      return cmd_oracle(or_n, or_t, or_p, or_d, or_cap, json);
    }
    if (ve->parsed()) return cmd_verify(ve_seed);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InfeasibleConditioningError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFeasibility;
  } catch (const FeasibilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFeasibility;
  } catch (const RegimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
