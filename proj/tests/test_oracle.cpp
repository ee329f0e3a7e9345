#include <doctest.h>

#include <random>

#include "ffmem/oracle.hpp"
#include "testutil.hpp"

using namespace ffmem;

TEST_CASE("oracle on the running example") {
  auto tc = make_collection({"gtaatagtagtacc"});
  auto got = brute_mems(tc, 3);
  std::vector<MemRecord> want{{1, 1, 1, 7, 3}, {1, 1, 1, 10, 3}, {1, 1, 5, 8, 5}};
  CHECK(got == want);
}

TEST_CASE("single-symbol matches") {
  auto tc = make_collection({"ab", "ca"});
  CHECK(brute_mems(tc, 1) == std::vector<MemRecord>{{1, 2, 1, 2, 1}});

  auto aa = make_collection({"aa"});
  CHECK(brute_mems(aa, 1) == std::vector<MemRecord>{{1, 1, 1, 2, 1}});

  auto disjoint = make_collection({"ab", "cd"});
  CHECK(brute_mems(disjoint, 1).empty());
}

TEST_CASE("maximality at string ends") {
  // The right end of the shorter string caps the match.
  auto tc = make_collection({"xtag", "tagy"});
  auto got = brute_mems(tc, 3);
  CHECK(got == std::vector<MemRecord>{{1, 2, 2, 1, 3}});
}

TEST_CASE("both oracle variants agree") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 120; ++it) {
    auto tc = testutil::random_collection(rng, 6, 180);
    for (std::uint64_t tau : {1ull, 2ull, 4ull, 7ull}) {
      REQUIRE(brute_mems(tc, tau) == sa_mems(tc, tau));
    }
  }
  // Also on repetitive collections with long matches.
  for (int it = 0; it < 10; ++it) {
    auto base = testutil::random_string(rng, 150);
    auto tc = testutil::mutated_copies(rng, base, 4, 0.02);
    for (std::uint64_t tau : {5ull, 12ull}) {
      REQUIRE(brute_mems(tc, tau) == sa_mems(tc, tau));
    }
  }
}
