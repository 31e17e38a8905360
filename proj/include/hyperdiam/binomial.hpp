#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hyperdiam {

using u128 = unsigned __int128;

/// C(n, k) in 128-bit arithmetic; nullopt if the value does not fit.
std::optional<u128> binomial_checked(std::uint64_t n, std::uint64_t k);

/// One t-subset of [0, n) identified by its colexicographic rank.
///
/// Colex order ranks a strictly increasing tuple (s_0, ..., s_{t-1}) as
/// sum_i C(s_i, i+1), so unranking costs O(t log n) with a precomputed
/// Pascal table and enumeration in rank order is O(1) amortized per step.
struct EdgeRank {
  u128 value = 0;

  friend bool operator==(const EdgeRank&, const EdgeRank&) = default;
};

/// Rank/unrank codec for t-subsets of [0, n) under colex order.
/// Construction fails if C(n, t) exceeds 128 bits.
class SubsetCodec {
 public:
  SubsetCodec(std::uint32_t n, std::uint32_t t);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t t() const noexcept { return t_; }

  /// C(n, t): number of valid ranks.
  u128 universe() const noexcept { return choose(n_, t_); }

  /// The r-th subset in colex order, strictly increasing.
  std::vector<std::uint32_t> unrank(EdgeRank r) const;
  void unrank_into(EdgeRank r, std::uint32_t* out) const;

  /// Inverse of unrank. Validates that s is strictly increasing in [0, n).
  EdgeRank rank(std::span<const std::uint32_t> s) const;

  /// Table lookup C(i, j) for i <= n, j <= t.
  u128 choose(std::uint32_t i, std::uint32_t j) const noexcept {
    return table_[static_cast<std::size_t>(i) * (t_ + 1) + j];
  }

 private:
  std::uint32_t n_;
  std::uint32_t t_;
  std::vector<u128> table_;  // (n+1) x (t+1) Pascal triangle slice
};

/// Enumerates all t-subsets of [0, n) in colex order.
class ColexEnumerator {
 public:
  ColexEnumerator(std::uint32_t n, std::uint32_t t);

  bool done() const noexcept { return done_; }
  std::span<const std::uint32_t> current() const noexcept { return cur_; }
  void advance() noexcept;

 private:
  std::uint32_t n_;
  std::uint32_t t_;
  bool done_;
  std::vector<std::uint32_t> cur_;
};

/// Convenience wrappers over a throwaway codec (tests, tools).
std::vector<std::uint32_t> unrank_subset(EdgeRank r, std::uint32_t n,
                                         std::uint32_t t);
EdgeRank rank_subset(std::span<const std::uint32_t> s, std::uint32_t n);

}  // namespace hyperdiam
