#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace hyperdiam {

/// Which critical equation pins p.
///
/// graph_bollobas  (t = 2 only):  p^d n^(d-1) = log(n^2/c)
/// hypergraph_general:            (t-1)^d N^d p^d / n = log(n^2/c),
///                                N = C(n-1, t-1)
///
/// Substituting t = 2 into the general equation uses N = n-1 rather than n,
/// so the two modes differ by the exact factor n/(n-1) in p; both are exposed
/// instead of silently picking one normalization.
enum class RegimeMode { graph_bollobas, hypergraph_general };

std::string to_string(RegimeMode mode);
RegimeMode regime_mode_from_string(const std::string& s);

struct RegimeParams {
  std::uint32_t t = 2;
  std::uint32_t d = 2;
  double c = 1.0;
  std::uint64_t n = 0;
  long double n_sub_choose = 0;  // N = C(n-1, t-1)
  double p = 0.0;
  RegimeMode mode = RegimeMode::hypergraph_general;
  double log_term = 0.0;  // log(n^2/c), natural log
  double residual = 0.0;  // relative defect of the defining equation
};

/// Solves the critical probability. Natural logarithm throughout; the
/// evaluation runs in extended precision / log domain so N^d never overflows.
/// Throws RegimeError when c >= n^2 ("nonpositive log") or when the solved
/// p would reach 1 ("regime violation"), ParameterError otherwise.
RegimeParams solve_p(std::uint32_t t, std::uint32_t d, double c,
                     std::uint64_t n, RegimeMode mode);

/// C(n,2) * c / n^2, the asymptotic mean of the remote-pair count (-> c/2).
double expected_remote_pairs(const RegimeParams& params);

/// (e^{-c/2}, 1 - e^{-c/2}): limiting P(diam = d) and P(diam = d+1).
std::pair<double, double> target_probabilities(double c);

/// Exact finite-n mean remote-pair count for t = 2, d = 2:
/// C(n,2) (1-p) (1-p^2)^(n-2). Used as the analytic side-check that calibrates
/// finite-n acceptance bands.
double exact_mean_remote_pairs_graph_d2(std::uint64_t n, double p);

}  // namespace hyperdiam
