#include <doctest.h>

#include <algorithm>
#include <vector>

#include "hyperdiam/binomial.hpp"
#include "hyperdiam/errors.hpp"

using namespace hyperdiam;

namespace {

// Brute-force colex listing: all t-subsets sorted by reversed-tuple order.
std::vector<std::vector<std::uint32_t>> brute_force_colex(std::uint32_t n,
                                                          std::uint32_t t) {
  std::vector<std::vector<std::uint32_t>> all;
  std::vector<std::uint32_t> cur;
  const auto rec = [&](auto&& self, std::uint32_t next) -> void {
    if (cur.size() == t) {
      all.push_back(cur);
      return;
    }
    for (std::uint32_t v = next; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  });
  return all;
}

}  // namespace

TEST_CASE("binomial_checked basic values and overflow") {
  CHECK(static_cast<std::uint64_t>(*binomial_checked(5, 2)) == 10);
  CHECK(static_cast<std::uint64_t>(*binomial_checked(52, 5)) == 2598960);
  CHECK(static_cast<std::uint64_t>(*binomial_checked(7, 0)) == 1);
  CHECK(static_cast<std::uint64_t>(*binomial_checked(3, 5)) == 0);
  // C(200, 100) ~ 9e58 exceeds 2^128 ~ 3.4e38.
  CHECK(!binomial_checked(200, 100).has_value());
  // C(130, 65) ~ 9.6e37 still fits.
  CHECK(binomial_checked(130, 65).has_value());
}

TEST_CASE("unrank_subset endpoints") {
  CHECK(unrank_subset(EdgeRank{0}, 5, 2) == std::vector<std::uint32_t>{0, 1});
  CHECK(unrank_subset(EdgeRank{9}, 5, 2) == std::vector<std::uint32_t>{3, 4});
}

TEST_CASE("unrank matches brute-force colex listing") {
  const auto listing = brute_force_colex(5, 3);
  REQUIRE(listing.size() == 10);
  CHECK(unrank_subset(EdgeRank{5}, 5, 3) == listing[5]);
  const SubsetCodec codec(5, 3);
  for (std::size_t r = 0; r < listing.size(); ++r) {
    CHECK(codec.unrank(EdgeRank{r}) == listing[r]);
  }
}

TEST_CASE("rank_subset examples and inverse") {
  const std::vector<std::uint32_t> a{0, 1};
  const std::vector<std::uint32_t> b{3, 4};
  CHECK(rank_subset(a, 5).value == 0);
  CHECK(rank_subset(b, 5).value == 9);
}

TEST_CASE("rank / unrank round-trip is the identity at n=7 t=3") {
  const SubsetCodec codec(7, 3);
  REQUIRE(static_cast<std::uint64_t>(codec.universe()) == 35);
  for (std::uint64_t r = 0; r < 35; ++r) {
    const auto s = codec.unrank(EdgeRank{r});
    CHECK(codec.rank(s).value == r);
  }
}

TEST_CASE("colex enumerator agrees with unrank") {
  const SubsetCodec codec(6, 3);
  std::uint64_t r = 0;
  for (ColexEnumerator en(6, 3); !en.done(); en.advance(), ++r) {
    const auto expect = codec.unrank(EdgeRank{r});
    CHECK(std::equal(expect.begin(), expect.end(), en.current().begin()));
  }
  CHECK(r == static_cast<std::uint64_t>(codec.universe()));
}

TEST_CASE("codec rejects malformed input") {
  const SubsetCodec codec(5, 2);
  CHECK_THROWS_AS(codec.unrank(EdgeRank{10}), ParameterError);
  const std::vector<std::uint32_t> decreasing{3, 1};
  CHECK_THROWS_AS(codec.rank(decreasing), ParameterError);
  const std::vector<std::uint32_t> repeated{2, 2};
  CHECK_THROWS_AS(codec.rank(repeated), ParameterError);
  const std::vector<std::uint32_t> out_of_range{2, 7};
  CHECK_THROWS_AS(codec.rank(out_of_range), ParameterError);
}
