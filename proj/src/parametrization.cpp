#include "hyperdiam/parametrization.hpp"

#include <cmath>

#include "hyperdiam/binomial.hpp"
#include "hyperdiam/errors.hpp"

namespace hyperdiam {

std::string to_string(RegimeMode mode) {
  return mode == RegimeMode::graph_bollobas ? "graph-bollobas"
                                            : "hypergraph-general";
}

RegimeMode regime_mode_from_string(const std::string& s) {
  if (s == "graph-bollobas") return RegimeMode::graph_bollobas;
  if (s == "hypergraph-general") return RegimeMode::hypergraph_general;
  throw ParameterError("unknown mode: " + s);
}

namespace {

// log N with N = C(n-1, t-1); exact via 128-bit arithmetic when it fits.
long double log_n_sub_choose(std::uint64_t n, std::uint32_t t,
                             long double* value_out) {
  const auto exact = binomial_checked(n - 1, t - 1);
  if (exact) {
    const long double v = static_cast<long double>(*exact);
    *value_out = v;
    return std::log(v);
  }
  const long double lg = std::lgamma(static_cast<long double>(n)) -
                         std::lgamma(static_cast<long double>(t)) -
                         std::lgamma(static_cast<long double>(n - t + 1));
  *value_out = std::exp(lg);  // may round to inf; the log stays exact enough
  return lg;
}

}  // namespace

RegimeParams solve_p(std::uint32_t t, std::uint32_t d, double c,
                     std::uint64_t n, RegimeMode mode) {
  if (t < 2) throw ParameterError("t must be >= 2");
  if (d < 2) throw ParameterError("d must be >= 2");
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("c must be positive");
  if (n <= t) throw ParameterError("n must exceed t");
  if (mode == RegimeMode::graph_bollobas && t != 2) {
    throw ParameterError("graph-bollobas mode requires t = 2");
  }

  const long double ln_n = std::log(static_cast<long double>(n));
  const long double log_term = 2.0L * ln_n - std::log(static_cast<long double>(c));
  if (!(log_term > 0.0L)) {
    throw RegimeError("nonpositive log: require c < n^2");
  }

  RegimeParams out;
  out.t = t;
  out.d = d;
  out.c = c;
  out.n = n;
  out.mode = mode;
  out.log_term = static_cast<double>(log_term);

  long double n_sub_choose = 0;
  const long double log_N = log_n_sub_choose(n, t, &n_sub_choose);
  out.n_sub_choose = n_sub_choose;

  long double log_p;
  if (mode == RegimeMode::graph_bollobas) {
    // p = (log(n^2/c) / n^(d-1))^(1/d)
    log_p = (std::log(log_term) - (d - 1) * ln_n) / d;
  } else {
    // p = (n log(n^2/c))^(1/d) / ((t-1) N)
    log_p = (ln_n + std::log(log_term)) / d -
            std::log(static_cast<long double>(t - 1)) - log_N;
  }
  const long double p = std::exp(log_p);
  if (!(p < 1.0L)) {
    throw RegimeError("regime violation: n too small for (t,d,c)");
  }
  out.p = static_cast<double>(p);

  long double lhs_log;
  if (mode == RegimeMode::graph_bollobas) {
    lhs_log = d * log_p + (d - 1) * ln_n;
  } else {
    lhs_log = d * (std::log(static_cast<long double>(t - 1)) + log_N + log_p) -
              ln_n;
  }
  out.residual =
      static_cast<double>(std::fabs(std::exp(lhs_log) - log_term) / log_term);
  return out;
}

double expected_remote_pairs(const RegimeParams& params) {
  const long double n = static_cast<long double>(params.n);
  const long double pairs = n * (n - 1.0L) / 2.0L;
  return static_cast<double>(pairs * static_cast<long double>(params.c) /
                             (n * n));
}

std::pair<double, double> target_probabilities(double c) {
  if (!(c > 0.0)) throw ParameterError("c must be positive");
  const double p_d = std::exp(-c / 2.0);
  return {p_d, -std::expm1(-c / 2.0)};
}

double exact_mean_remote_pairs_graph_d2(std::uint64_t n, double p) {
  // P(d(x,y) > 2) = (1-p)(1-p^2)^(n-2) exactly: the direct edge and the n-2
  // two-step routes are independent.
  const long double nl = static_cast<long double>(n);
  const long double pairs = nl * (nl - 1.0L) / 2.0L;
  const long double pl = p;
  const long double blocked =
      (1.0L - pl) *
      std::exp((nl - 2.0L) * std::log1p(-pl * pl));
  return static_cast<double>(pairs * blocked);
}

}  // namespace hyperdiam
