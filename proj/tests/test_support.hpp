#pragma once

// Shared helpers for the test binaries: an incomplete-gamma based chi-square
// survival function, a Poisson sampler, and random small-instance generators.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hyperdiam/hypergraph.hpp"
#include "hyperdiam/rng.hpp"

namespace testsupport {

// Regularized upper incomplete gamma Q(a, x) by series / continued fraction.
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) by series, return 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Q(a,x) by Lentz continued fraction.
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

// Survival function of the chi-square distribution with dof degrees.
inline double chi_square_sf(double stat, double dof) {
  return gamma_q(dof / 2.0, stat / 2.0);
}

// Poisson variate by CDF inversion; fine for the small means used in tests.
inline std::uint64_t sample_poisson(double lambda, hyperdiam::Xoshiro256pp& rng) {
  const double u = rng.next_unit_open();
  double pmf = std::exp(-lambda);
  double cum = pmf;
  std::uint64_t k = 0;
  while (cum < u && k < 100000) {
    ++k;
    pmf *= lambda / static_cast<double>(k);
    cum += pmf;
  }
  return k;
}

// Uniformly random small hypergraph with per-edge probability p.
inline hyperdiam::UniformHypergraph random_hypergraph(std::uint32_t n,
                                                      std::uint32_t t, double p,
                                                      std::uint64_t seed) {
  return hyperdiam::sample_uniform_hypergraph(
      hyperdiam::SampleConfig{n, t, p, seed});
}

}  // namespace testsupport
