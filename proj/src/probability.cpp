#include "hyperdiam/probability.hpp"

#include <algorithm>
#include <cmath>

#include "hyperdiam/errors.hpp"

namespace hyperdiam {

double poisson_pmf(double lambda, std::uint64_t k) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("poisson mean must be positive");
  }
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

std::uint64_t PoissonDist::truncation_point(double tail_mass) const {
  double cum = 0.0;
  const std::uint64_t hard_stop =
      static_cast<std::uint64_t>(lambda + 60.0 * std::sqrt(lambda) + 200.0);
  for (std::uint64_t k = 0;; ++k) {
    cum += pmf(k);
    if (cum >= 1.0 - tail_mass || k >= hard_stop) return k;
  }
}

void EmpiricalDist::add(std::uint64_t value, std::uint64_t count) {
  counts_[value] += count;
  total_ += count;
}

std::uint64_t EmpiricalDist::max_value() const {
  return counts_.empty() ? 0 : counts_.rbegin()->first;
}

double EmpiricalDist::frequency(std::uint64_t value) const {
  if (total_ == 0) return 0.0;
  const auto it = counts_.find(value);
  return it == counts_.end()
             ? 0.0
             : static_cast<double>(it->second) / static_cast<double>(total_);
}

double EmpiricalDist::mean() const {
  if (total_ == 0) throw ParameterError("empty sample");
  long double s = 0;
  for (const auto& [v, c] : counts_) {
    s += static_cast<long double>(v) * static_cast<long double>(c);
  }
  return static_cast<double>(s / static_cast<long double>(total_));
}

double EmpiricalDist::variance() const {
  if (total_ < 2) return 0.0;
  const long double m = mean();
  long double s = 0;
  for (const auto& [v, c] : counts_) {
    const long double dv = static_cast<long double>(v) - m;
    s += dv * dv * static_cast<long double>(c);
  }
  return static_cast<double>(s / static_cast<long double>(total_ - 1));
}

double EmpiricalDist::mean_falling2() const {
  if (total_ == 0) throw ParameterError("empty sample");
  long double s = 0;
  for (const auto& [v, c] : counts_) {
    s += static_cast<long double>(v) * (static_cast<long double>(v) - 1.0L) *
         static_cast<long double>(c);
  }
  return static_cast<double>(s / static_cast<long double>(total_));
}

double tv_empirical_vs_poisson(const EmpiricalDist& emp, double lambda) {
  if (emp.total() == 0) throw ParameterError("empty sample");
  const PoissonDist poi{lambda};
  const std::uint64_t cut = std::max(poi.truncation_point(), emp.max_value());
  long double l1 = 0;
  long double poisson_mass = 0;
  for (std::uint64_t k = 0; k <= cut; ++k) {
    const double pk = poi.pmf(k);
    poisson_mass += pk;
    l1 += std::fabs(emp.frequency(k) - pk);
  }
  const long double tail = std::max<long double>(0.0L, 1.0L - poisson_mass);
  return static_cast<double>(std::min<long double>(1.0L, (l1 + tail) / 2.0L));
}

double tv_poisson_poisson_bound(double ex, double beta) {
  if (!(ex > 0.0)) throw ParameterError("mean must be positive");
  return std::fabs(ex - std::exp(-beta));
}

double chernoff_tail_bound(double mean, double delta) {
  if (!(mean > 0.0)) throw ParameterError("mean must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("delta must lie in (0, 1)");
  }
  return 2.0 * std::exp(-delta * delta * mean / 3.0);
}

SteinChenBound stein_chen_tv_bound(double ew, double var_w, double sum_pi_sq) {
  if (!(ew > 0.0)) throw ParameterError("E W must be positive");
  if (var_w < 0.0 || sum_pi_sq < 0.0) {
    throw ParameterError("variance and sum of p_i^2 must be nonnegative");
  }
  const double bracket = var_w - ew + 2.0 * sum_pi_sq;
  return {-std::expm1(-ew) / ew * bracket, bracket < 0.0};
}

double tv_sampling_noise(double lambda, std::uint64_t total) {
  if (total == 0) throw ParameterError("empty sample");
  const PoissonDist poi{lambda};
  const std::uint64_t cut = poi.truncation_point(1e-9);
  long double s = 0;
  for (std::uint64_t k = 0; k <= cut; ++k) {
    const double pk = poi.pmf(k);
    s += std::sqrt(pk * (1.0 - pk) / static_cast<double>(total));
  }
  return static_cast<double>(s / 2.0L);
}

}  // namespace hyperdiam
