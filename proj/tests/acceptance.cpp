// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Run through ctest or directly.
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "ffmem/oracle.hpp"
#include "ffmem/prmem.hpp"
#include "ffmem/report.hpp"
#include "testutil.hpp"

using namespace ffmem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  const char* name;
  bool ok = true;
  void report() const { std::printf("%s: %s\n", ok ? "PASS" : "FAIL", name); }
};

std::vector<MemRecord> pipeline(const TextCollection& tc, std::uint64_t tau, std::uint64_t seed) {
  PipelineOptions opt;
  opt.tau = tau;
  opt.seed = seed;
  return compute_mems(tc, opt).mems;
}

void exp_sym(const Grammar& g, Symbol x, SymString& out) {
  if (x < g.sigma) {
    out.push_back(x);
    return;
  }
  for (Symbol c : g.rule_rhs(x)) exp_sym(g, c, out);
}

// Criteria 4 and 5: per-level fix-freeness of the expansions, full balance,
// and the tiling identity.
bool grammar_properties_hold(const Grammar& g, const TextCollection& tc) {
  for (std::uint32_t lvno = 1; lvno <= g.rounds; ++lvno) {
    const GrammarLevel& lv = g.level(lvno);
    for (Symbol s : lv.rhs) {
      if (!is_sentinel(s) && g.sym_level[s] != lvno - 1) return false;
    }
    std::vector<SymString> exps(lv.num_rules());
    for (std::size_t r = 0; r < lv.num_rules(); ++r) {
      exp_sym(g, lv.first_sym + static_cast<Symbol>(r), exps[r]);
    }
    for (std::size_t i = 0; i < exps.size(); ++i) {
      for (std::size_t j = 0; j < exps.size(); ++j) {
        if (i == j) continue;
        const auto &a = exps[i], &b = exps[j];
        if (a.size() <= b.size()) {
          if (std::equal(a.begin(), a.end(), b.begin())) return false;
          if (std::equal(a.rbegin(), a.rend(), b.rbegin())) return false;
        }
      }
    }
  }
  return g.decompress() == tc.strings;
}

std::string suffix_expansion(const Grammar& g, std::uint32_t level_no, std::size_t pos) {
  const GrammarLevel& lv = g.levels[level_no - 1];
  std::size_t r = lv.rule_of_pos(pos);
  std::size_t end = lv.rule_start[r + 1] - 1;
  std::string s;
  for (std::size_t k = pos; k < end; ++k) s += g.efexp_str(lv.rhs[k]);
  s += g.rexp_str(lv.rhs[end]);
  return s;
}

std::int64_t str_lcp(const std::string& a, const std::string& b) {
  std::size_t k = 0, n = std::min(a.size(), b.size());
  while (k < n && a[k] == b[k]) ++k;
  return static_cast<std::int64_t>(k);
}

std::int64_t str_lcs(const std::string& a, const std::string& b) {
  std::size_t k = 0, n = std::min(a.size(), b.size());
  while (k < n && a[a.size() - 1 - k] == b[b.size() - 1 - k]) ++k;
  return static_cast<std::int64_t>(k);
}

TextCollection scaling_input(std::size_t total) {
  std::mt19937_64 rng(4242);
  auto base = testutil::random_string(rng, 10000);
  std::size_t copies = total / base.size();
  return testutil::mutated_copies(rng, base, copies, 0.001);
}

double median_build_seconds(const TextCollection& tc, int runs) {
  std::vector<double> times;
  for (int r = 0; r < runs; ++r) {
    auto t0 = Clock::now();
    Grammar g = build(tc, 99 + static_cast<std::uint64_t>(r));
    times.push_back(seconds_since(t0));
    if (g.size_G() == 0) std::abort();
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace

TEST_CASE("criterion 1: worked example") {
  Criterion c{"1 worked-example reproduction (3 MEMs, lengths {3,3,5}, < 1 s)"};
  auto t0 = Clock::now();
  auto tc = make_collection({"gtaatagtagtacc"});
  auto got = pipeline(tc, 3, PipelineOptions{}.seed);
  std::vector<MemRecord> want{{1, 1, 1, 7, 3}, {1, 1, 1, 10, 3}, {1, 1, 5, 8, 5}};
  c.ok = got == want && seconds_since(t0) < 1.0;
  c.report();
  CHECK(c.ok);
}

TEST_CASE("criteria 2, 4, 5: random-collection oracle equivalence and grammar properties") {
  Criterion c2{"2 oracle equivalence on 1000 random collections x 5 seeds (< 5 min)"};
  Criterion c4{"4 fix-free expansions at every level of every build"};
  Criterion c5{"5 fully-balanced grammar and tiling identity on every build"};
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  for (int it = 0; it < 1000 && c2.ok; ++it) {
    auto tc = testutil::random_collection(rng, 8, 400);
    std::uniform_int_distribution<std::uint64_t> dtau(2, 6);
    std::uint64_t tau = dtau(rng);
    auto want = brute_mems(tc, tau);
    for (std::uint64_t s = 0; s < 5; ++s) {
      std::uint64_t seed = rng();
      Grammar g = build(tc, seed);
      if (!grammar_properties_hold(g, tc)) {
        c4.ok = c5.ok = false;
        break;
      }
      if (mems_from_grammar(g, tau, true) != want) {
        c2.ok = false;
        break;
      }
    }
  }
  c2.ok = c2.ok && seconds_since(t0) < 300.0;
  c2.report();
  c4.report();
  c5.report();
  CHECK(c2.ok);
  CHECK(c4.ok);
  CHECK(c5.ok);
}

TEST_CASE("criterion 3: repetitive collections") {
  Criterion c{"3 oracle equivalence on 100 mutated-copy collections"};
  std::mt19937_64 rng(777);
  for (int it = 0; it < 100 && c.ok; ++it) {
    std::uniform_int_distribution<std::size_t> dlen(200, 2000), dr(2, 10);
    std::uniform_real_distribution<double> drate(0.001, 0.02);
    auto base = testutil::random_string(rng, dlen(rng));
    auto tc = testutil::mutated_copies(rng, base, dr(rng), drate(rng));
    std::uint64_t tau = it % 2 ? 10 : 20;
    auto want = sa_mems(tc, tau);
    auto got = pipeline(tc, tau, rng());
    c.ok = got == want;
  }
  c.report();
  CHECK(c.ok);
}

TEST_CASE("criterion 6: satellite and GLCP correctness") {
  Criterion c{"6 lcs/lcp satellite answers and transformed GLCP equal direct expansion"};
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 60 && c.ok; ++it) {
    auto tc = testutil::random_collection(rng, 6, 400);
    Grammar g = build(tc, rng());
    PrMemFinder f(g);
    for (std::uint32_t lvno = 1; lvno <= g.rounds && c.ok; ++lvno) {
      const GrammarLevel& lv = g.level(lvno);
      std::vector<std::string> lexps(lv.num_rules()), rexps(lv.num_rules());
      for (std::size_t r = 0; r < lv.num_rules(); ++r) {
        Symbol x = lv.first_sym + static_cast<Symbol>(r);
        lexps[r] = g.lexp_str(x);
        rexps[r] = g.rexp_str(x);
      }
      for (std::size_t i = 0; i < lv.num_rules() && c.ok; ++i) {
        for (std::size_t j = 0; j < lv.num_rules(); ++j) {
          Symbol a = lv.first_sym + static_cast<Symbol>(i);
          Symbol b = lv.first_sym + static_cast<Symbol>(j);
          if (f.lcs_query(lvno, a, b) != str_lcs(lexps[i], lexps[j]) ||
              f.lcp_query(lvno, a, b) != str_lcp(rexps[i], rexps[j])) {
            c.ok = false;
            break;
          }
        }
      }
    }
    for (std::uint32_t lvno = 1; lvno <= g.rounds + 1 && c.ok; ++lvno) {
      auto la = f.level_arrays(lvno);
      for (std::size_t j = 1; j < la.a.size(); ++j) {
        auto ea = suffix_expansion(g, lvno, la.a[j - 1]);
        auto eb = suffix_expansion(g, lvno, la.a[j]);
        if (la.glcp[j] != str_lcp(ea, eb)) {
          c.ok = false;
          break;
        }
      }
    }
  }
  c.report();
  CHECK(c.ok);
}

TEST_CASE("criterion 7: substructure oracles") {
  Criterion c{"7 SA/LCP/rmq/rank/select match naive implementations on 1000+ instances"};
  std::mt19937_64 rng(99);
  int instances = 0;
  for (int it = 0; it < 340 && c.ok; ++it) {
    // Suffix array + LCP vs naive comparison sort.
    std::uniform_int_distribution<std::size_t> dm(1, 4), dl(1, 500);
    std::uniform_int_distribution<int> dsig(1, 300);
    int sig = dsig(rng);
    IntText t;
    std::size_t m = dm(rng);
    std::size_t budget = dl(rng);
    for (std::size_t s = 0; s < m; ++s) {
      t.starts.push_back(t.sym.size());
      std::uniform_int_distribution<std::size_t> dsl(1, std::max<std::size_t>(1, budget / m));
      std::size_t len = dsl(rng);
      std::uniform_int_distribution<int> dc(0, sig - 1);
      for (std::size_t k = 0; k < len; ++k) t.sym.push_back(static_cast<Symbol>(dc(rng)));
    }
    t.alphabet = static_cast<Symbol>(sig);
    const std::size_t n = t.size();
    std::vector<std::size_t> end_of(n);
    for (std::size_t j = 0; j < t.starts.size(); ++j) {
      std::size_t end = j + 1 < t.starts.size() ? t.starts[j + 1] : n;
      for (std::size_t i = t.starts[j]; i < end; ++i) end_of[i] = end;
    }
    auto cmp = [&](std::size_t a, std::size_t b) {
      std::size_t ea = end_of[a], eb = end_of[b];
      while (a < ea && b < eb) {
        if (t.sym[a] != t.sym[b]) return t.sym[a] < t.sym[b];
        ++a, ++b;
      }
      return a == ea && b != eb;
    };
    auto sa = suffix_array(t);
    auto naive = sa;
    for (std::size_t i = 0; i < n; ++i) naive[i] = i;
    std::stable_sort(naive.begin(), naive.end(), cmp);
    if (sa != naive) c.ok = false;
    auto lcp = lcp_array(t, sa);
    for (std::size_t k = 1; k < n && c.ok; ++k) {
      std::size_t a = sa[k - 1], b = sa[k], l = 0;
      while (a + l < end_of[a] && b + l < end_of[b] && t.sym[a + l] == t.sym[b + l]) ++l;
      if (lcp[k] != l) c.ok = false;
    }
    ++instances;

    // rmq vs linear scan.
    std::uniform_int_distribution<std::size_t> dn(1, 200);
    std::size_t rn = dn(rng);
    std::vector<std::int64_t> vals(rn);
    std::uniform_int_distribution<std::int64_t> dv(-1000, 1000);
    for (auto& v : vals) v = dv(rng);
    RmqArray rq(vals);
    std::uniform_int_distribution<std::size_t> di(0, rn - 1);
    for (int q = 0; q < 20 && c.ok; ++q) {
      std::size_t a = di(rng), b = di(rng);
      if (a > b) std::swap(a, b);
      if (rq.min(a, b) != *std::min_element(vals.begin() + a, vals.begin() + b + 1)) c.ok = false;
    }
    ++instances;

    // rank/select vs counting.
    BitVector bv(rn);
    std::vector<bool> ref(rn);
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t i = 0; i < rn; ++i) {
      if (coin(rng)) {
        bv.set(i);
        ref[i] = true;
      }
    }
    bv.build();
    std::size_t ones = 0;
    for (std::size_t i = 0; i <= rn && c.ok; ++i) {
      if (bv.rank1(i) != ones) c.ok = false;
      if (i < rn && ref[i]) {
        ++ones;
        if (bv.select1(ones) != i) c.ok = false;
      }
    }
    ++instances;
  }
  c.ok = c.ok && instances >= 1000;
  c.report();
  CHECK(c.ok);
}

TEST_CASE("criterion 8: build-time scaling guard") {
  Criterion c{"8 grammar build at 2e6 symbols takes <= 2.5x the time at 1e6 (median of 5)"};
  auto small = scaling_input(1000000);
  auto big = scaling_input(2000000);
  double ts = median_build_seconds(small, 5);
  double tb = median_build_seconds(big, 5);
  std::printf("  build medians: %.3fs @1e6, %.3fs @2e6, ratio %.2f\n", ts, tb, tb / ts);
  c.ok = tb <= 2.5 * ts;
  c.report();
  CHECK(c.ok);
}

TEST_CASE("criterion 9: compression sanity") {
  Criterion c{"9 G < 0.2 n on 100 near-identical copies of a 10 kB string"};
  std::mt19937_64 rng(1234);
  auto base = testutil::random_string(rng, 10000);
  auto tc = testutil::mutated_copies(rng, base, 100, 0.0002);
  Grammar g = build(tc, 7);
  std::uint64_t n = tc.total_len();
  std::printf("  n = %llu, G = %llu, ratio %.4f\n", static_cast<unsigned long long>(n),
              static_cast<unsigned long long>(g.size_G()),
              static_cast<double>(g.size_G()) / static_cast<double>(n));
  c.ok = g.size_G() < n / 5;
  c.report();
  CHECK(c.ok);
}
