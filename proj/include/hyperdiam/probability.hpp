#pragma once

#include <cstdint>
#include <map>

namespace hyperdiam {

/// e^{-lambda} lambda^k / k!, evaluated in the log domain.
double poisson_pmf(double lambda, std::uint64_t k);

/// Poisson(lambda) with a tail-truncated support: the truncation point is the
/// smallest K whose cumulative mass reaches 1 - tail_mass.
struct PoissonDist {
  double lambda;

  double pmf(std::uint64_t k) const { return poisson_pmf(lambda, k); }
  std::uint64_t truncation_point(double tail_mass = 1e-12) const;
};

/// Empirical law of a nonnegative integer statistic.
class EmpiricalDist {
 public:
  void add(std::uint64_t value, std::uint64_t count = 1);

  const std::map<std::uint64_t, std::uint64_t>& counts() const {
    return counts_;
  }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t max_value() const;
  double frequency(std::uint64_t value) const;

  double mean() const;
  double variance() const;       // unbiased (n-1 denominator)
  double mean_falling2() const;  // E[X (X - 1)]

 private:
  std::map<std::uint64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Total variation distance between an empirical law and Poisson(lambda):
/// half the L1 gap over the truncated support plus the truncated tail mass
/// contribution. Value in [0, 1].
double tv_empirical_vs_poisson(const EmpiricalDist& emp, double lambda);

/// |E[X] - e^{-beta}|: bound on d_TV(Poi(E[X]), Poi(e^{-beta})).
double tv_poisson_poisson_bound(double ex, double beta);

/// 2 exp(-delta^2 mean / 3) for 0 < delta < 1; reported verbatim even when
/// above 1 (callers may clamp).
double chernoff_tail_bound(double mean, double delta);

/// Stein-Chen bound on d_TV(W, Poi(E W)) for positively dependent Bernoulli
/// summands:
///   (1 - e^{-EW})/EW * [Var(W) - EW + 2 sum p_i^2].
/// The bracket can go negative when the dominance presumption fails; the
/// value is reported as-is with a flag rather than clamped.
struct SteinChenBound {
  double value = 0.0;
  bool bracket_negative = false;
};
SteinChenBound stein_chen_tv_bound(double ew, double var_w, double sum_pi_sq);

/// Scale of the TV statistical noise when `total` samples of Poisson(lambda)
/// are binned: half the summed per-bin binomial standard errors.
double tv_sampling_noise(double lambda, std::uint64_t total);

}  // namespace hyperdiam
