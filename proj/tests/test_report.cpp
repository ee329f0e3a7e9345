#include <doctest.h>

#include <random>

#include "ffmem/oracle.hpp"
#include "ffmem/report.hpp"
#include "testutil.hpp"

using namespace ffmem;

namespace {

std::vector<MemRecord> run_pipeline(const TextCollection& tc, std::uint64_t tau,
                                    std::uint64_t seed, bool do_simplify = true) {
  PipelineOptions opt;
  opt.tau = tau;
  opt.seed = seed;
  opt.simplify = do_simplify;
  return compute_mems(tc, opt).mems;
}

}  // namespace

TEST_CASE("canonicalization") {
  MemRecord r{2, 1, 3, 9, 4};
  CHECK(canonicalize(r));
  CHECK(r == MemRecord{1, 2, 9, 3, 4});
  MemRecord same{1, 1, 5, 2, 3};
  CHECK(canonicalize(same));
  CHECK(same == MemRecord{1, 1, 2, 5, 3});
  MemRecord ident{1, 1, 4, 4, 2};
  CHECK(!canonicalize(ident));
  CHECK(format_record(MemRecord{1, 2, 3, 4, 5}) == "1\t2\t3\t4\t5");
}

TEST_CASE("worked example records") {
  auto tc = make_collection({"gtaatagtagtacc"});
  auto got = run_pipeline(tc, 3, 1);
  std::vector<MemRecord> want{{1, 1, 1, 7, 3}, {1, 1, 1, 10, 3}, {1, 1, 5, 8, 5}};
  CHECK(got == want);
  CHECK(got == brute_mems(tc, 3));
}

TEST_CASE("occurrence index invariants") {
  auto tc = make_collection({"gtaatagtagtacc"});
  Grammar g = build(tc, 1);
  auto plain = simplify(g, {}, false);
  // Buckets partition all slots.
  CHECK(plain.idx.bucket_start.back() == plain.idx.occ.size());
  CHECK(plain.idx.flat_size == g.size_G());
  // Without inlining every symbol survives.
  CHECK(plain.idx.num_ids() == g.num_symbols());

  auto simp = simplify(g, {}, true);
  CHECK(simp.idx.num_ids() <= plain.idx.num_ids());
  CHECK(simp.idx.bucket_start.back() == simp.idx.occ.size());
  // Renamed ids are contiguous and map back to old symbols.
  for (std::size_t i = 0; i < simp.idx.num_ids(); ++i) {
    CHECK(simp.idx.new_id[simp.idx.old_id[i]] == i);
  }
}

TEST_CASE("simplification keeps shared rules and inlines chains") {
  // Two identical strings: the level-1 rule occurs twice (once per block) and
  // must survive.
  auto tc = make_collection({"ab", "ab"});
  Grammar g = build(tc, 1);
  auto sr = simplify(g, {}, true);
  Symbol rule = g.level(1).first_sym;
  CHECK(sr.idx.new_id[rule] != OccIndex::kNoId);

  // A single string compresses through once-occurring rules; they are all
  // inlined so only terminals survive.
  auto tc1 = make_collection({"gtaatagtagtacc"});
  Grammar g1 = build(tc1, 1);
  auto sr1 = simplify(g1, {}, true);
  for (Symbol s = g1.sigma; s < g1.num_symbols(); ++s) {
    std::uint32_t occ = 0;
    for (const auto& lv : g1.levels) {
      for (Symbol c : lv.rhs) occ += c == s;
    }
    if (occ == 1) CHECK(sr1.idx.new_id[s] == OccIndex::kNoId);
  }
}

TEST_CASE("simplified and plain reports agree") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 40; ++it) {
    auto tc = testutil::random_collection(rng, 4, 150);
    std::uint64_t seed = rng();
    for (std::uint64_t tau : {1ull, 2ull, 4ull}) {
      auto a = run_pipeline(tc, tau, seed, true);
      auto b = run_pipeline(tc, tau, seed, false);
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("self repeats within one string are reported") {
  auto tc = make_collection({"abcabc"});
  auto got = run_pipeline(tc, 3, 7);
  CHECK(got == std::vector<MemRecord>{{1, 1, 1, 4, 3}});
}

TEST_CASE("identical strings yield the whole-string record") {
  auto tc = make_collection({"tagata", "tagata"});
  auto got = run_pipeline(tc, 6, 3);
  CHECK(got == std::vector<MemRecord>{{1, 2, 1, 1, 6}});
}

TEST_CASE("disjoint alphabets only self-repeat") {
  auto tc = make_collection({"aaaa", "bbbb"});
  auto got = run_pipeline(tc, 1, 5);
  CHECK(got == brute_mems(tc, 1));
  for (const auto& r : got) CHECK(r.sx == r.sy);  // never across the strings
  CHECK(run_pipeline(tc, 5, 5).empty());
}

TEST_CASE("report matches oracle across seeds") {
  std::mt19937_64 rng(55);
  for (int it = 0; it < 30; ++it) {
    auto tc = testutil::random_collection(rng, 5, 160);
    for (std::uint64_t tau : {2ull, 3ull, 5ull}) {
      auto want = brute_mems(tc, tau);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto got = run_pipeline(tc, tau, seed);
        REQUIRE(got == want);
      }
    }
  }
}
