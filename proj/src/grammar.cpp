#include "ffmem/grammar.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <functional>
#include <thread>
#include <unordered_map>

namespace ffmem {

namespace {

struct PhraseHash {
  std::size_t operator()(const SymString& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (Symbol s : v) {
      h ^= s;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Sort key: the leftmost proper suffix F[1..], ties broken by the h-value of
// the first symbol. Distinct phrases with equal tails differ in F[0], and h is
// injective, so the order is total and deterministic.
bool phrase_less(const SymString& a, const SymString& b, const HashOrder& h) {
  auto mis = std::mismatch(a.begin() + 1, a.end(), b.begin() + 1, b.end());
  if (mis.first != a.end() && mis.second != b.end()) return *mis.first < *mis.second;
  if (mis.first != a.end()) return false;
  if (mis.second != b.end()) return true;
  return h(a[0]) < h(b[0]);
}

struct RoundOutput {
  std::vector<SymString> phrases;          // per string, in occurrence order
  std::vector<std::vector<SymString>> per_string;
};

}  // namespace

std::size_t Grammar::map_ordinal(Symbol x) const {
  std::uint32_t lv = sym_level[x];
  return x - levels[lv - 1].first_sym + 1;
}

Symbol Grammar::parent(std::uint32_t level_no, std::size_t pos) const {
  const GrammarLevel& lv = levels[level_no - 1];
  return lv.first_sym + static_cast<Symbol>(lv.rule_of_pos(pos));
}

std::span<const Symbol> Grammar::rule_rhs(Symbol x) const {
  const GrammarLevel& lv = levels[sym_level[x] - 1];
  std::size_t r = x - lv.first_sym;
  return {lv.rhs.data() + lv.rule_start[r], lv.rule_start[r + 1] - lv.rule_start[r]};
}

namespace {

enum class ExpKind { kEf, kLx, kRx };

void expand(const Grammar& g, Symbol x, ExpKind kind, std::string& out) {
  if (is_sentinel(x)) return;
  if (x < g.sigma) {
    out.push_back(static_cast<char>(g.term_bytes[x - kFirstByteSym]));
    return;
  }
  auto rhs = g.rule_rhs(x);
  std::size_t n = rhs.size();
  switch (kind) {
    case ExpKind::kEf:
      for (std::size_t k = 1; k + 2 < n; ++k) expand(g, rhs[k], ExpKind::kEf, out);
      break;
    case ExpKind::kLx:
      expand(g, rhs[0], ExpKind::kLx, out);
      for (std::size_t k = 1; k + 2 < n; ++k) expand(g, rhs[k], ExpKind::kEf, out);
      break;
    case ExpKind::kRx:
      for (std::size_t k = 1; k + 1 < n; ++k) expand(g, rhs[k], ExpKind::kEf, out);
      expand(g, rhs[n - 1], ExpKind::kRx, out);
      break;
  }
}

}  // namespace

std::string Grammar::efexp_str(Symbol x) const {
  std::string out;
  expand(*this, x, ExpKind::kEf, out);
  return out;
}

std::string Grammar::lexp_str(Symbol x) const {
  std::string out;
  expand(*this, x, ExpKind::kLx, out);
  return out;
}

std::string Grammar::rexp_str(Symbol x) const {
  std::string out;
  expand(*this, x, ExpKind::kRx, out);
  return out;
}

std::vector<std::string> Grammar::decompress() const {
  std::vector<std::string> out(num_strings());
  const GrammarLevel& sl = start_level();
  for (std::size_t s = 0; s < num_strings(); ++s) {
    std::size_t a = sl.rule_start[s], b = sl.rule_start[s + 1];
    std::string& dst = out[s];
    // Block layout: $ w1..wk $ #. lexp(w1) covers the string prefix, the other
    // symbols contribute their efexp cores.
    if (b - a > 3) {
      expand(*this, sl.rhs[a + 1], ExpKind::kLx, dst);
      for (std::size_t k = a + 2; k + 2 < b; ++k) expand(*this, sl.rhs[k], ExpKind::kEf, dst);
    }
  }
  return out;
}

std::uint64_t Grammar::size_G() const {
  std::uint64_t g = 0;
  for (const auto& lv : levels) g += lv.rhs.size();
  return g;
}

std::uint64_t Grammar::num_rules_g() const {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) n += levels[i].num_rules();
  return n;
}

namespace {

void finish_level(GrammarLevel& lv) {
  lv.starts = BitVector(lv.rhs.size());
  for (std::size_t r = 0; r + 1 < lv.rule_start.size(); ++r) lv.starts.set(lv.rule_start[r]);
  lv.starts.build();
}

// Flattened offset row of one rule: c[0] = c[1] = 0, cumulative |efexp| of
// the middle symbols through the second-to-last slot, and c[x-1] = c[x-2].
void append_offset_row(const std::vector<Symbol>& row, const std::vector<std::int64_t>& ef,
                       std::vector<std::int64_t>& out) {
  const std::size_t x = row.size();
  std::int64_t cum = 0;
  for (std::size_t j = 0; j < x; ++j) {
    if (j < 2) {
      out.push_back(0);
    } else if (j + 1 < x) {
      cum += ef[row[j - 1]];
      out.push_back(cum);
    } else {
      out.push_back(cum);
    }
  }
}

}  // namespace

static Grammar build_impl(const TextCollection& tc, std::span<const HashOrder> fixed_orders,
                          std::uint64_t seed, unsigned threads) {
  Grammar g;
  AlphabetMap amap = build_alphabet(tc);
  g.sigma = amap.sigma;
  g.term_bytes = amap.byte_of_sym;
  g.text_base = tc.base;
  g.string_ids = tc.ids;

  g.sym_level.assign(g.sigma, 0);
  g.ef_len.assign(g.sigma, 1);
  g.lx_len.assign(g.sigma, 1);
  g.rx_len.assign(g.sigma, 1);
  for (Symbol s : {kSentL, kSentR}) {
    g.ef_len[s] = g.lx_len[s] = g.rx_len[s] = 0;
  }

  const std::size_t m = tc.size();
  std::vector<SymString> cur(m);
  for (std::size_t x = 0; x < m; ++x) cur[x] = wrap_sentinels(tc.strings[x], amap);

  std::mt19937_64 rng(seed);
  Symbol next_sym = g.sigma;
  Symbol round_lo = kFirstByteSym, round_hi = g.sigma;
  std::vector<bool> stopped(m, false);
  std::uint32_t round = 0;

  while (true) {
    ++round;
    HashOrder h = round - 1 < fixed_orders.size() ? fixed_orders[round - 1]
                                                  : draw_hash_order(round_lo, round_hi, rng);

    // Round 1 always parses: the pre-# minimum exists in every wrapped input.
    // Later rounds parse only strings that still have an interior minimum; a
    // string without one is promoted as the single phrase $ w $ # so every
    // level stays aligned.
    std::vector<std::vector<std::size_t>> minima(m);
    bool any_parse = false;
    auto scan = [&](std::size_t x) {
      if (round > 1 && stopped[x]) return;
      minima[x] = local_minima(cur[x], h);
      if (round > 1) {
        bool interior = false;
        for (std::size_t j : minima[x]) {
          if (j + 2 < cur[x].size()) { interior = true; break; }
        }
        if (!interior) {
          stopped[x] = true;
          minima[x].clear();
        }
      }
    };
    if (threads > 1 && m > 1) {
      std::vector<std::thread> pool;
      std::size_t chunk = (m + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        std::size_t a = t * chunk, b = std::min(m, a + chunk);
        if (a >= b) break;
        pool.emplace_back([&, a, b] {
          for (std::size_t x = a; x < b; ++x) scan(x);
        });
      }
      for (auto& th : pool) th.join();
    } else {
      for (std::size_t x = 0; x < m; ++x) scan(x);
    }
    for (std::size_t x = 0; x < m; ++x) any_parse = any_parse || !minima[x].empty();
    if (!any_parse) {
      --round;
      break;
    }

    // Collect phrases per string in occurrence order.
    std::vector<std::vector<SymString>> occ(m);
    for (std::size_t x = 0; x < m; ++x) {
      if (!minima[x].empty()) {
        auto iv = parse(cur[x], minima[x]);
        for (auto [a, b] : *iv) {
          occ[x].emplace_back(cur[x].begin() + a, cur[x].begin() + b + 1);
        }
      } else {
        SymString whole;
        whole.reserve(cur[x].size() + 1);
        whole.push_back(kSentL);
        whole.insert(whole.end(), cur[x].begin(), cur[x].end());
        occ[x].push_back(std::move(whole));
      }
    }

    // Deduplicate, order by the leftmost proper suffix, assign metasymbols.
    std::unordered_map<SymString, Symbol, PhraseHash> rank_of;
    std::vector<const SymString*> distinct;
    for (auto& str_phr : occ) {
      for (auto& f : str_phr) {
        auto [it, fresh] = rank_of.emplace(f, 0);
        if (fresh) distinct.push_back(&it->first);
      }
    }
    std::sort(distinct.begin(), distinct.end(),
              [&](const SymString* a, const SymString* b) { return phrase_less(*a, *b, h); });
    for (std::size_t r = 0; r < distinct.size(); ++r) {
      rank_of[*distinct[r]] = next_sym + static_cast<Symbol>(r);
    }

    GrammarLevel lv;
    lv.first_sym = next_sym;
    lv.rule_start.push_back(0);
    for (const SymString* f : distinct) {
      lv.rhs.insert(lv.rhs.end(), f->begin(), f->end());
      lv.rule_start.push_back(lv.rhs.size());
      // Per-symbol expansion lengths, bottom-up.
      const SymString& row = *f;
      std::int64_t ef = 0, rx = 0;
      for (std::size_t k = 1; k + 2 < row.size(); ++k) ef += g.ef_len[row[k]];
      for (std::size_t k = 1; k + 1 < row.size(); ++k) rx += g.ef_len[row[k]];
      rx += g.rx_len[row.back()];
      g.ef_len.push_back(ef);
      g.lx_len.push_back(g.lx_len[row[0]] + ef);
      g.rx_len.push_back(rx);
      g.sym_level.push_back(round);
      append_offset_row(row, g.ef_len, lv.offsets);
    }
    finish_level(lv);
    g.levels.push_back(std::move(lv));

    // Rewrite the strings for the next round: metasymbols plus $ #.
    for (std::size_t x = 0; x < m; ++x) {
      SymString next;
      next.reserve(occ[x].size() + 2);
      for (auto& f : occ[x]) next.push_back(rank_of[f]);
      next.push_back(kSentL);
      next.push_back(kSentR);
      cur[x] = std::move(next);
    }
    round_lo = next_sym;
    next_sym += static_cast<Symbol>(distinct.size());
    round_hi = next_sym;
  }

  g.rounds = round;

  // Start level: one block $ w $ # per string. Offsets are global text
  // positions of each child's efexp start, so resolving a tuple against this
  // level lands directly in text coordinates.
  GrammarLevel sl;
  sl.first_sym = next_sym;
  sl.rule_start.push_back(0);
  for (std::size_t x = 0; x < m; ++x) {
    g.start_bounds.push_back(sl.rhs.size());
    SymString block;
    block.push_back(kSentL);
    // cur[x] is already w $ # shaped after round 1.
    block.insert(block.end(), cur[x].begin(), cur[x].end());
    std::int64_t off = static_cast<std::int64_t>(g.text_base[x]);
    if (block.size() > 3) off += g.delta_len(block[1]);
    for (std::size_t k = 0; k < block.size(); ++k) {
      sl.rhs.push_back(block[k]);
      if (k == 0) {
        sl.offsets.push_back(off);
      } else {
        sl.offsets.push_back(off);
        off += g.ef_len[block[k]];
      }
    }
    sl.rule_start.push_back(sl.rhs.size());
  }
  finish_level(sl);
  g.levels.push_back(std::move(sl));
  return g;
}

Grammar build(const TextCollection& tc, std::uint64_t seed, unsigned threads) {
  return build_impl(tc, {}, seed, threads);
}

Grammar build_with_orders(const TextCollection& tc, std::span<const HashOrder> orders,
                          std::uint64_t seed) {
  return build_impl(tc, orders, seed, 1);
}

}  // namespace ffmem
