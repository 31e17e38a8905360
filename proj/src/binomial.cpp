#include "hyperdiam/binomial.hpp"

#include <algorithm>
#include <numeric>

#include "hyperdiam/errors.hpp"

namespace hyperdiam {

namespace {

constexpr u128 kU128Max = ~static_cast<u128>(0);

// a + b with overflow detection.
bool add_overflow(u128 a, u128 b, u128* out) {
  *out = a + b;
  return *out < a;
}

}  // namespace

std::optional<u128> binomial_checked(std::uint64_t n, std::uint64_t k) {
  if (k > n) return static_cast<u128>(0);
  k = std::min(k, n - k);
  // C(n, k) = prod_{i=1..k} (n - k + i) / i. Dividing by the reduced i first
  // keeps every intermediate equal to the running binomial, so the overflow
  // test is exact: C(n-k+i-1, i-1) is divisible by i / gcd(n-k+i, i).
  u128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const u128 factor = n - k + i;
    const u128 g = std::gcd(factor, static_cast<u128>(i));
    const u128 reduced_factor = factor / g;
    result /= static_cast<u128>(i) / g;
    if (result > kU128Max / reduced_factor) return std::nullopt;
    result *= reduced_factor;
  }
  return result;
}

SubsetCodec::SubsetCodec(std::uint32_t n, std::uint32_t t) : n_(n), t_(t) {
  if (t < 1) throw ParameterError("subset size t must be >= 1");
  if (n < t) throw ParameterError("need n >= t");
  table_.assign(static_cast<std::size_t>(n + 1) * (t + 1), 0);
  for (std::uint32_t i = 0; i <= n; ++i) {
    table_[static_cast<std::size_t>(i) * (t + 1)] = 1;
    for (std::uint32_t j = 1; j <= std::min(i, t); ++j) {
      u128 sum;
      if (add_overflow(choose(i - 1, j - 1),
                       j <= i - 1 ? choose(i - 1, j) : 0, &sum)) {
        throw FeasibilityError("binomial table overflow: C(n,t) exceeds 128 bits");
      }
      table_[static_cast<std::size_t>(i) * (t + 1) + j] = sum;
    }
  }
}

void SubsetCodec::unrank_into(EdgeRank r, std::uint32_t* out) const {
  u128 rem = r.value;
  if (rem >= universe()) throw ParameterError("subset rank out of range");
  for (std::uint32_t i = t_; i-- > 0;) {
    // Largest c with C(c, i+1) <= rem; the table column is strictly
    // increasing for c >= i+1, so binary search works.
    std::uint32_t lo = i, hi = n_ - 1;
    while (lo < hi) {
      const std::uint32_t mid = (lo + hi + 1) / 2;
      if (choose(mid, i + 1) <= rem) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    out[i] = lo;
    rem -= choose(lo, i + 1);
  }
}

std::vector<std::uint32_t> SubsetCodec::unrank(EdgeRank r) const {
  std::vector<std::uint32_t> out(t_);
  unrank_into(r, out.data());
  return out;
}

EdgeRank SubsetCodec::rank(std::span<const std::uint32_t> s) const {
  if (s.size() != t_) throw ParameterError("tuple size does not match t");
  u128 r = 0;
  for (std::uint32_t i = 0; i < t_; ++i) {
    if (s[i] >= n_) throw ParameterError("vertex id out of range");
    if (i > 0 && s[i] <= s[i - 1]) {
      throw ParameterError("tuple must be strictly increasing");
    }
    r += choose(s[i], i + 1);
  }
  return EdgeRank{r};
}

ColexEnumerator::ColexEnumerator(std::uint32_t n, std::uint32_t t)
    : n_(n), t_(t), done_(n < t || t == 0), cur_(t) {
  for (std::uint32_t i = 0; i < t; ++i) cur_[i] = i;
}

void ColexEnumerator::advance() noexcept {
  // Smallest index whose entry can move up; entries below it reset to 0,1,...
  for (std::uint32_t j = 0; j < t_; ++j) {
    const std::uint32_t limit = (j + 1 < t_) ? cur_[j + 1] : n_;
    if (cur_[j] + 1 < limit) {
      ++cur_[j];
      for (std::uint32_t i = 0; i < j; ++i) cur_[i] = i;
      return;
    }
  }
  done_ = true;
}

std::vector<std::uint32_t> unrank_subset(EdgeRank r, std::uint32_t n,
                                         std::uint32_t t) {
  return SubsetCodec(n, t).unrank(r);
}

EdgeRank rank_subset(std::span<const std::uint32_t> s, std::uint32_t n) {
  if (s.empty()) throw ParameterError("empty tuple");
  return SubsetCodec(n, static_cast<std::uint32_t>(s.size())).rank(s);
}

}  // namespace hyperdiam
