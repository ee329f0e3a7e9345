#include "ffmem/prmem.hpp"

#include <algorithm>
#include <cassert>

namespace ffmem {

namespace {

// Non-sentinel slots of a rule row, ascending.
void real_slots(std::span<const Symbol> row, std::vector<std::size_t>& out) {
  out.clear();
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (!is_sentinel(row[k])) out.push_back(k);
  }
}

}  // namespace

PrMemFinder::PrMemFinder(const Grammar& g) : g_(g) { build_satellites(); }

std::int64_t PrMemFinder::lcs_query(std::uint32_t sym_level, Symbol a, Symbol b) const {
  if (is_sentinel(a) || is_sentinel(b)) return 0;
  if (a == b) return g_.lx_len[a];
  if (sym_level == 0) return 0;  // distinct terminals share no suffix
  const SatelliteLevel& sat = sats_[sym_level - 1];
  const GrammarLevel& lv = g_.levels[sym_level - 1];
  std::uint32_t pa = sat.colex_rank[a - lv.first_sym];
  std::uint32_t pb = sat.colex_rank[b - lv.first_sym];
  auto [lo, hi] = std::minmax(pa, pb);
  return sat.lcs.min(lo + 1, hi);
}

std::int64_t PrMemFinder::lcp_query(std::uint32_t sym_level, Symbol a, Symbol b) const {
  if (is_sentinel(a) || is_sentinel(b)) return 0;
  if (a == b) return g_.rx_len[a];
  if (sym_level == 0) return 0;
  const SatelliteLevel& sat = sats_[sym_level - 1];
  const GrammarLevel& lv = g_.levels[sym_level - 1];
  std::uint32_t pa = static_cast<std::uint32_t>(a - lv.first_sym);
  std::uint32_t pb = static_cast<std::uint32_t>(b - lv.first_sym);
  auto [lo, hi] = std::minmax(pa, pb);
  return sat.lcp.min(lo + 1, hi);
}

void PrMemFinder::build_satellites() {
  sats_.resize(g_.rounds);
  for (std::uint32_t lvno = 1; lvno <= g_.rounds; ++lvno) {
    const GrammarLevel& lv = g_.levels[lvno - 1];
    const std::size_t gsz = lv.num_rules();
    SatelliteLevel sat;

    // Colex order of the rules by their lexp expansions. Keys map each
    // non-sentinel lexp slot (all but the two rightmost) through the previous
    // level's equal-lexp class ranks, compared right to left; level 1 uses
    // the terminal symbols directly.
    std::vector<std::vector<std::uint32_t>> key(gsz);
    std::vector<std::size_t> slots;
    for (std::size_t r = 0; r < gsz; ++r) {
      std::span<const Symbol> row{lv.rhs.data() + lv.rule_start[r],
                                  lv.rule_start[r + 1] - lv.rule_start[r]};
      std::span<const Symbol> lex_part = row.subspan(0, row.size() - 2);
      real_slots(lex_part, slots);
      auto& k = key[r];
      k.reserve(slots.size());
      for (auto it = slots.rbegin(); it != slots.rend(); ++it) {
        Symbol s = lex_part[*it];
        if (lvno == 1) {
          k.push_back(s);
        } else {
          const GrammarLevel& prev = g_.levels[lvno - 2];
          k.push_back(sats_[lvno - 2].block_rank[s - prev.first_sym]);
        }
      }
    }
    std::vector<std::uint32_t> order(gsz);
    for (std::size_t r = 0; r < gsz; ++r) order[r] = static_cast<std::uint32_t>(r);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (key[a] != key[b]) return key[a] < key[b];
      return a < b;
    });
    sat.colex_rank.resize(gsz);
    for (std::size_t j = 0; j < gsz; ++j) sat.colex_rank[order[j]] = static_cast<std::uint32_t>(j);

    // Common-suffix values between colex neighbours: match whole equal
    // symbols right to left, then close with one lcs of the first differing
    // pair (the leftmost slot plays its lexp role).
    auto neighbour_lcs = [&](std::uint32_t ra, std::uint32_t rb) -> std::int64_t {
      std::span<const Symbol> rowa{lv.rhs.data() + lv.rule_start[ra],
                                   lv.rule_start[ra + 1] - lv.rule_start[ra]};
      std::span<const Symbol> rowb{lv.rhs.data() + lv.rule_start[rb],
                                   lv.rule_start[rb + 1] - lv.rule_start[rb]};
      std::vector<std::size_t> sa, sb;
      real_slots(rowa.subspan(0, rowa.size() - 2), sa);
      real_slots(rowb.subspan(0, rowb.size() - 2), sb);
      std::int64_t acc = 0;
      std::size_t ia = sa.size(), ib = sb.size();
      while (ia > 0 && ib > 0) {
        Symbol u = rowa[sa[ia - 1]], v = rowb[sb[ib - 1]];
        bool za = sa[ia - 1] == 0, zb = sb[ib - 1] == 0;
        if (!za && !zb && u == v) {
          acc += g_.ef_len[u];
          --ia;
          --ib;
          continue;
        }
        acc += lcs_query(lvno - 1, u, v);
        return acc;
      }
      return acc;
    };
    std::vector<std::int64_t> lcs_vals(gsz, 0);
    for (std::size_t j = 1; j < gsz; ++j) lcs_vals[j] = neighbour_lcs(order[j - 1], order[j]);

    // Equal-lexp classes along the colex order.
    sat.block_rank.resize(gsz);
    std::uint32_t cls = 0;
    auto lexp_of = [&](std::uint32_t r) { return g_.lx_len[lv.first_sym + r]; };
    for (std::size_t j = 0; j < gsz; ++j) {
      if (j > 0 && !(lcs_vals[j] == lexp_of(order[j]) && lcs_vals[j] == lexp_of(order[j - 1]))) {
        ++cls;
      }
      sat.block_rank[order[j]] = cls;
    }
    sat.lcs = RmqArray(std::move(lcs_vals));

    // Common-prefix values of rexp between consecutive rules in symbol order:
    // match left to right, the rightmost slot plays its rexp role.
    auto neighbour_lcp = [&](std::uint32_t ra, std::uint32_t rb) -> std::int64_t {
      std::span<const Symbol> rowa{lv.rhs.data() + lv.rule_start[ra],
                                   lv.rule_start[ra + 1] - lv.rule_start[ra]};
      std::span<const Symbol> rowb{lv.rhs.data() + lv.rule_start[rb],
                                   lv.rule_start[rb + 1] - lv.rule_start[rb]};
      std::vector<std::size_t> sa, sb;
      real_slots(rowa.subspan(1), sa);
      real_slots(rowb.subspan(1), sb);
      std::int64_t acc = 0;
      std::size_t ia = 0, ib = 0;
      while (ia < sa.size() && ib < sb.size()) {
        Symbol u = rowa[1 + sa[ia]], v = rowb[1 + sb[ib]];
        bool za = 1 + sa[ia] == rowa.size() - 1, zb = 1 + sb[ib] == rowb.size() - 1;
        if (!za && !zb && u == v) {
          acc += g_.ef_len[u];
          ++ia;
          ++ib;
          continue;
        }
        acc += lcp_query(lvno - 1, u, v);
        return acc;
      }
      return acc;
    };
    std::vector<std::int64_t> lcp_vals(gsz, 0);
    for (std::size_t r = 1; r < gsz; ++r) {
      lcp_vals[r] = neighbour_lcp(static_cast<std::uint32_t>(r - 1), static_cast<std::uint32_t>(r));
    }
    sat.lcp = RmqArray(std::move(lcp_vals));

    sats_[lvno - 1] = std::move(sat);
  }
}

// Per-level scan state: the sparse suffix array with everything the MEM
// traversal needs per surviving position.
struct PrMemFinder::LevelCtx {
  const GrammarLevel* lv = nullptr;
  std::uint32_t level_no = 0;
  bool start_level = false;
  std::vector<std::size_t> a;          // surviving positions, SA order
  std::vector<std::int64_t> glcp;      // expansion-domain lcp with the previous entry
  std::vector<std::int64_t> tuple_off;
  std::vector<std::int64_t> suff_len;
  std::vector<Symbol> bwt;
  std::vector<bool> end_unique;
};

PrMemFinder::LevelCtx PrMemFinder::make_ctx(std::uint32_t level_no) {
  LevelCtx ctx;
  ctx.level_no = level_no;
  ctx.start_level = level_no == g_.rounds + 1;
  const GrammarLevel& lv = g_.levels[level_no - 1];
  ctx.lv = &lv;
  const std::size_t n = lv.rhs.size();

  // Per-position rule data in one pass.
  std::vector<std::size_t> rule_end(n);
  std::vector<std::int64_t> ep(n);  // cumulative |efexp| from the rule start
  for (std::size_t r = 0; r + 1 < lv.rule_start.size(); ++r) {
    std::size_t s = lv.rule_start[r], e = lv.rule_start[r + 1] - 1;
    std::int64_t cum = 0;
    for (std::size_t p = s; p <= e; ++p) {
      rule_end[p] = e;
      ep[p] = cum;
      cum += g_.ef_len[lv.rhs[p]];
    }
  }

  IntText t;
  t.sym = lv.rhs;
  t.starts.assign(lv.rule_start.begin(), lv.rule_start.end() - 1);
  t.alphabet = g_.num_symbols();
  auto sa = suffix_array(t);
  auto lcp = lcp_array(t, sa);
  RmqArray lcp_rmq(std::vector<std::int64_t>(lcp.begin(), lcp.end()));
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[sa[k]] = k;

  // Sparse filter: drop rule starts, rule ends and the position before the
  // end; only interior suffixes anchor primary matches at this level.
  std::vector<std::size_t> arank;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = sa[k];
    std::size_t start = lv.rule_start[lv.rule_of_pos(p)];
    std::size_t end = rule_end[p];
    if (p == start || p == end || p + 1 == end) continue;
    ctx.a.push_back(p);
    arank.push_back(k);
  }

  const std::size_t K = ctx.a.size();
  ctx.glcp.assign(K, 0);
  ctx.tuple_off.resize(K);
  ctx.suff_len.resize(K);
  ctx.bwt.resize(K);
  ctx.end_unique.assign(K, false);
  for (std::size_t j = 0; j < K; ++j) {
    std::size_t p = ctx.a[j];
    std::size_t start = lv.rule_start[lv.rule_of_pos(p)];
    std::size_t end = rule_end[p];
    ctx.tuple_off[j] = ctx.start_level ? lv.offsets[p] : ep[p] - g_.ef_len[lv.rhs[start]];
    ctx.suff_len[j] = ep[end] - ep[p] + g_.rx_len[lv.rhs[end]];
    ctx.bwt[j] = lv.rhs[p - 1];
    ctx.end_unique[j] = lv.rhs[end] == kSentR;
  }
  for (std::size_t j = 1; j < K; ++j) {
    std::size_t pb = ctx.a[j - 1], pa = ctx.a[j];
    std::int64_t l = lcp_rmq.min(arank[j - 1] + 1, arank[j]);
    std::int64_t remb = static_cast<std::int64_t>(rule_end[pb] - pb) + 1;
    std::int64_t rema = static_cast<std::int64_t>(rule_end[pa] - pa) + 1;
    if (l >= remb || l >= rema) {
      // One suffix is exhausted; its whole rexp expansion is matched.
      ctx.glcp[j] = std::min(ctx.suff_len[j - 1], ctx.suff_len[j]);
    } else {
      std::size_t mb = pb + static_cast<std::size_t>(l), ma = pa + static_cast<std::size_t>(l);
      ctx.glcp[j] = (ep[mb] - ep[pb]) + lcp_query(ctx.level_no - 1, lv.rhs[mb], lv.rhs[ma]);
    }
  }
  return ctx;
}

PrMemFinder::LevelArrays PrMemFinder::level_arrays(std::uint32_t level_no) {
  LevelCtx ctx = make_ctx(level_no);
  return {std::move(ctx.a), std::move(ctx.glcp)};
}

const std::string& PrMemFinder::lexp_cached(Symbol s) {
  auto it = lexp_cache_.find(s);
  if (it == lexp_cache_.end()) it = lexp_cache_.emplace(s, g_.lexp_str(s)).first;
  return it->second;
}

// Left context string of a surviving position below the start level: a real
// predecessor contributes lexp(B); a sentinel predecessor marks either a
// string start (level 1, empty) or the prefix hidden behind a promoted
// block, recovered from the block symbol's lexp.
std::string PrMemFinder::left_context(std::uint32_t level_no, std::size_t pos,
                                      std::int64_t /*global_off*/) {
  const GrammarLevel& lv = g_.levels[level_no - 1];
  Symbol prev = lv.rhs[pos - 1];
  if (!is_sentinel(prev)) return lexp_cached(prev);
  if (level_no == 1) return "";
  Symbol first = lv.rhs[pos];
  const std::string& lx = lexp_cached(first);
  return lx.substr(0, static_cast<std::size_t>(g_.delta_len(first)));
}

namespace {

std::int64_t common_suffix(const std::string& a, const std::string& b) {
  std::size_t k = 0, n = std::min(a.size(), b.size());
  while (k < n && a[a.size() - 1 - k] == b[b.size() - 1 - k]) ++k;
  return static_cast<std::int64_t>(k);
}

}  // namespace

void PrMemFinder::scan_level(std::uint32_t level_no, std::uint64_t tau,
                             std::vector<PrMemTuple>& out) {
  LevelCtx ctx = make_ctx(level_no);
  const std::size_t K = ctx.a.size();
  if (K == 0) return;
  const bool top = ctx.start_level;

  if (top && !texts_ready_) {
    texts_ = g_.decompress();
    texts_ready_ = true;
  }

  // Left extension of a candidate pair, in characters.
  auto extension = [&](std::size_t i, std::size_t j) -> std::int64_t {
    Symbol bi = ctx.bwt[i], bj = ctx.bwt[j];
    if (top) {
      // Compare the raw text prefixes backwards; both sides are instantiated.
      auto off_i = static_cast<std::uint64_t>(ctx.tuple_off[i]);
      auto off_j = static_cast<std::uint64_t>(ctx.tuple_off[j]);
      auto si = static_cast<std::size_t>(
          std::upper_bound(g_.text_base.begin(), g_.text_base.end(), off_i) -
          g_.text_base.begin() - 1);
      auto sj = static_cast<std::size_t>(
          std::upper_bound(g_.text_base.begin(), g_.text_base.end(), off_j) -
          g_.text_base.begin() - 1);
      std::uint64_t li = off_i - g_.text_base[si], lj = off_j - g_.text_base[sj];
      const std::string &ti = texts_[si], &tj = texts_[sj];
      std::uint64_t k = 0;
      while (k < li && k < lj && ti[li - 1 - k] == tj[lj - 1 - k]) ++k;
      return static_cast<std::int64_t>(k);
    }
    if (!is_sentinel(bi) && !is_sentinel(bj)) {
      return lcs_query(level_no - 1, bi, bj);
    }
    std::string ci = left_context(level_no, ctx.a[i], 0);
    std::string cj = left_context(level_no, ctx.a[j], 0);
    return common_suffix(ci, cj);
  };

  auto emit = [&](std::size_t i, std::size_t j, std::int64_t depth) {
    Symbol bi = ctx.bwt[i], bj = ctx.bwt[j];
    if (!is_sentinel(bi) && !is_sentinel(bj) && bi == bj) return;  // not left-maximal here
    std::int64_t o = extension(i, j);
    std::uint64_t len = static_cast<std::uint64_t>(depth + o);
    if (len < tau) return;
    PrMemTuple t;
    if (top) {
      t.x = t.y = kResolvedTuple;
    } else {
      t.x = g_.parent(level_no, ctx.a[i]);
      t.y = g_.parent(level_no, ctx.a[j]);
    }
    t.ox = ctx.tuple_off[i] - o;
    t.oy = ctx.tuple_off[j] - o;
    t.len = len;
    out.push_back(t);
  };

  // Bottom-up traversal of the lcp-interval tree over (A, GLCP). Groups carry
  // the suffixes below a node keyed by their left context class; a sentinel
  // predecessor is a unique class of its own.
  struct Group {
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_key;
    std::size_t total = 0;
  };
  auto key_of = [&](std::size_t i) -> std::uint64_t {
    if (is_sentinel(ctx.bwt[i])) return (1ULL << 63) | i;
    return ctx.bwt[i];
  };
  enum Cls : int { kCont = 0, kEndU = 1, kMid = 2 };
  auto cls_of = [&](std::uint32_t i, std::int64_t depth) -> int {
    if (ctx.suff_len[i] != depth) return kCont;
    return ctx.end_unique[i] ? kEndU : kMid;
  };
  // Right-maximality across two sibling sets: continuing suffixes diverge by
  // construction, a string-end suffix is maximal against anything, and a
  // mid-text exhausted suffix extends instance-dependently, so it never pairs
  // at this node.
  auto cls_ok = [](int c1, int c2) {
    if (c1 == kEndU || c2 == kEndU) return true;
    return c1 == kCont && c2 == kCont;
  };
  auto emit_pairs = [&](const Group& g1, const Group& g2, std::int64_t depth) {
    if (depth <= 0) return;
    for (const auto& [k1, v1] : g1.by_key) {
      for (const auto& [k2, v2] : g2.by_key) {
        if (k1 == k2) continue;
        for (std::uint32_t i : v1) {
          int c1 = cls_of(i, depth);
          for (std::uint32_t j : v2) {
            if (cls_ok(c1, cls_of(j, depth))) emit(i, j, depth);
          }
        }
      }
    }
  };
  auto merge_into = [](Group& dst, Group&& src) {
    if (dst.total < src.total) std::swap(dst, src);
    for (auto& [k, v] : src.by_key) {
      auto& d = dst.by_key[k];
      d.insert(d.end(), v.begin(), v.end());
    }
    dst.total += src.total;
  };

  struct Node {
    std::int64_t depth;
    Group grp;
  };
  std::vector<Node> st;
  st.push_back({0, {}});
  Group last;
  auto singleton = [&](std::uint32_t i) {
    Group s;
    s.by_key[key_of(i)].push_back(i);
    s.total = 1;
    return s;
  };

  for (std::size_t j = 0; j <= K; ++j) {
    if (j > 0) {
      std::int64_t v = j < K ? ctx.glcp[j] : 0;
      Group carry = std::move(last);
      last = Group{};
      while (st.back().depth > v) {
        Node nd = std::move(st.back());
        st.pop_back();
        emit_pairs(nd.grp, carry, nd.depth);
        merge_into(nd.grp, std::move(carry));
        carry = std::move(nd.grp);
      }
      if (st.back().depth == v) {
        emit_pairs(st.back().grp, carry, v);
        merge_into(st.back().grp, std::move(carry));
      } else {
        st.push_back({v, std::move(carry)});
      }
    }
    if (j < K) last = singleton(static_cast<std::uint32_t>(j));
  }
}

std::vector<PrMemTuple> PrMemFinder::find(std::uint64_t tau) {
  std::vector<PrMemTuple> out;
  for (std::uint32_t lvno = 1; lvno <= g_.rounds + 1; ++lvno) scan_level(lvno, tau, out);
  return out;
}

std::vector<PrMemTuple> find_prmems(const Grammar& g, std::uint64_t tau) {
  return PrMemFinder(g).find(tau);
}

}  // namespace ffmem
