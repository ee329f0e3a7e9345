#include "ffmem/sufstruct.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>

namespace ffmem {

namespace {

// Core SA-IS recursion. s[0..n) with s[n-1] == 0 the unique smallest symbol.
void sais_rec(const std::uint64_t* s, std::int64_t* sa, std::size_t n, std::size_t sigma) {
  if (n == 1) {
    sa[0] = 0;
    return;
  }
  std::vector<bool> stype(n);
  stype[n - 1] = true;
  for (std::size_t i = n - 1; i-- > 0;) {
    stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
  }
  auto is_lms = [&](std::size_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

  std::vector<std::size_t> cnt(sigma, 0), bkt(sigma + 1, 0);
  for (std::size_t i = 0; i < n; ++i) cnt[s[i]]++;
  for (std::size_t c = 0; c < sigma; ++c) bkt[c + 1] = bkt[c] + cnt[c];

  std::vector<std::size_t> tail(sigma), head(sigma);
  auto reset_tail = [&] { for (std::size_t c = 0; c < sigma; ++c) tail[c] = bkt[c + 1]; };
  auto reset_head = [&] { for (std::size_t c = 0; c < sigma; ++c) head[c] = bkt[c]; };

  auto induce = [&](const std::vector<std::size_t>& lms_in_order) {
    std::fill(sa, sa + n, -1);
    reset_tail();
    for (std::size_t k = lms_in_order.size(); k-- > 0;) {
      std::size_t i = lms_in_order[k];
      sa[--tail[s[i]]] = static_cast<std::int64_t>(i);
    }
    reset_head();
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t j = sa[k];
      if (j > 0 && !stype[static_cast<std::size_t>(j) - 1]) {
        std::size_t i = static_cast<std::size_t>(j) - 1;
        sa[head[s[i]]++] = static_cast<std::int64_t>(i);
      }
    }
    reset_tail();
    for (std::size_t k = n; k-- > 0;) {
      std::int64_t j = sa[k];
      if (j > 0 && stype[static_cast<std::size_t>(j) - 1]) {
        std::size_t i = static_cast<std::size_t>(j) - 1;
        sa[--tail[s[i]]] = static_cast<std::int64_t>(i);
      }
    }
  };

  std::vector<std::size_t> lms;
  for (std::size_t i = 1; i < n; ++i) {
    if (is_lms(i)) lms.push_back(i);
  }
  induce(lms);

  // Collect LMS positions in induced order and name their substrings.
  std::vector<std::size_t> sorted_lms;
  sorted_lms.reserve(lms.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto j = static_cast<std::size_t>(sa[k]);
    if (is_lms(j)) sorted_lms.push_back(j);
  }
  if (lms.size() > 1) {
    std::vector<std::size_t> next_lms(n, n);  // next LMS position at or after i+1
    {
      std::size_t nxt = n;
      for (std::size_t i = n; i-- > 0;) {
        next_lms[i] = nxt;
        if (is_lms(i)) nxt = i;
      }
    }
    std::vector<std::int64_t> name_of(n, -1);
    std::int64_t name = 0;
    std::size_t prev = n;
    for (std::size_t pos : sorted_lms) {
      if (prev == n) {
        name_of[pos] = name;
      } else {
        // Compare LMS substrings [pos..next_lms[pos]] and [prev..next_lms[prev]].
        std::size_t e1 = next_lms[pos], e2 = next_lms[prev];
        std::size_t l1 = e1 == n ? n - pos : e1 - pos + 1;
        std::size_t l2 = e2 == n ? n - prev : e2 - prev + 1;
        bool equal = l1 == l2;
        if (equal) {
          for (std::size_t d = 0; d < l1; ++d) {
            if (s[pos + d] != s[prev + d]) { equal = false; break; }
          }
        }
        if (!equal) ++name;
        name_of[pos] = name;
      }
      prev = pos;
    }
    std::size_t names = static_cast<std::size_t>(name) + 1;
    if (names < lms.size()) {
      std::vector<std::uint64_t> sub(lms.size());
      for (std::size_t k = 0; k < lms.size(); ++k) {
        sub[k] = static_cast<std::uint64_t>(name_of[lms[k]]);
      }
      std::vector<std::int64_t> sub_sa(lms.size());
      sais_rec(sub.data(), sub_sa.data(), sub.size(), names);
      for (std::size_t k = 0; k < lms.size(); ++k) {
        sorted_lms[k] = lms[static_cast<std::size_t>(sub_sa[k])];
      }
    } else {
      for (std::size_t k = 0; k < lms.size(); ++k) {
        sorted_lms[static_cast<std::size_t>(name_of[lms[k]])] = lms[k];
      }
    }
  }
  induce(sorted_lms);
}

}  // namespace

std::vector<std::int64_t> sais(const std::vector<Symbol>& seq, Symbol alphabet) {
  assert(!seq.empty() && seq.back() == 0);
  std::vector<std::uint64_t> s(seq.begin(), seq.end());
  std::vector<std::int64_t> sa(seq.size());
  sais_rec(s.data(), sa.data(), s.size(), alphabet);
  return sa;
}

// Builds the generalized SA by suffix-sorting a copy where string ends carry
// distinct descending separators; separator entries are then dropped so the
// result indexes the original array. Keeping separators distinct means no
// comparison ever crosses a string end.
std::vector<std::size_t> suffix_array(const IntText& t) {
  const std::size_t n = t.size();
  const std::size_t m = t.starts.size();
  // Separator values ascend with the string index, so equal suffixes of
  // different strings order by string.
  std::vector<Symbol> sep_of_string(m);
  for (std::size_t j = 0; j < m; ++j) sep_of_string[j] = static_cast<Symbol>(j + 1);

  std::vector<std::uint64_t> seq;
  seq.reserve(n + m + 1);
  std::vector<std::size_t> orig;  // original position or npos for separators
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  orig.reserve(n + m + 1);
  const std::uint64_t shift = m + 1;
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t end = j + 1 < m ? t.starts[j + 1] : n;
    for (std::size_t i = t.starts[j]; i < end; ++i) {
      seq.push_back(static_cast<std::uint64_t>(t.sym[i]) + shift);
      orig.push_back(i);
    }
    seq.push_back(sep_of_string[j]);
    orig.push_back(npos);
  }
  seq.push_back(0);
  orig.push_back(npos);

  std::vector<std::int64_t> sa(seq.size());
  sais_rec(seq.data(), sa.data(), seq.size(), t.alphabet + shift);

  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::int64_t p : sa) {
    std::size_t o = orig[static_cast<std::size_t>(p)];
    if (o != npos) out.push_back(o);
  }
  return out;
}

std::vector<std::size_t> lcp_array(const IntText& t, const std::vector<std::size_t>& sa) {
  const std::size_t n = t.size();
  std::vector<std::size_t> end_of(n);  // exclusive end of the string owning i
  for (std::size_t j = 0; j < t.starts.size(); ++j) {
    std::size_t end = j + 1 < t.starts.size() ? t.starts[j + 1] : n;
    for (std::size_t i = t.starts[j]; i < end; ++i) end_of[i] = end;
  }
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[sa[k]] = k;

  // Kasai with per-string capping.
  std::vector<std::size_t> lcp(n, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = rank[i];
    if (r == 0) {
      h = 0;
      continue;
    }
    std::size_t j = sa[r - 1];
    std::size_t limi = end_of[i], limj = end_of[j];
    while (i + h < limi && j + h < limj && t.sym[i + h] == t.sym[j + h]) ++h;
    lcp[r] = h;
    if (h > 0) --h;
  }
  return lcp;
}

RmqArray::RmqArray(std::vector<std::int64_t> values) : vals_(std::move(values)) {
  const std::size_t n = vals_.size();
  if (n == 0) return;
  const int levels = n > 1 ? std::bit_width(n - 1) : 0;
  table_.resize(levels);
  if (levels == 0) return;
  table_[0].resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    table_[0][i] = static_cast<std::uint32_t>(vals_[i] <= vals_[i + 1] ? i : i + 1);
  }
  for (int k = 1; k < levels; ++k) {
    std::size_t span = std::size_t{1} << (k + 1);
    if (n < span) break;
    table_[k].resize(n - span + 1);
    for (std::size_t i = 0; i + span <= n; ++i) {
      std::uint32_t a = table_[k - 1][i];
      std::uint32_t b = table_[k - 1][i + span / 2];
      table_[k][i] = vals_[a] <= vals_[b] ? a : b;
    }
  }
}

std::size_t RmqArray::argmin(std::size_t l, std::size_t r) const {
  assert(l <= r && r < vals_.size());
  if (l == r) return l;
  const int k = std::bit_width(r - l) - 1;  // 2^k <= r-l+1 < 2^(k+1) roughly
  if (k == 0) return table_[0][l];
  std::size_t span = std::size_t{1} << k;
  std::uint32_t a = table_[k - 1][l];
  std::uint32_t b = table_[k - 1][r + 1 - span];
  return vals_[a] <= vals_[b] ? a : b;
}

std::int64_t RmqArray::min(std::size_t l, std::size_t r) const { return vals_[argmin(l, r)]; }

BitVector::BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

void BitVector::set(std::size_t i) { words_[i >> 6] |= 1ULL << (i & 63); }

void BitVector::build() {
  blocks_.assign(words_.size() + 1, 0);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    blocks_[w + 1] = blocks_[w] + static_cast<std::uint64_t>(std::popcount(words_[w]));
  }
  ones_ = words_.empty() ? 0 : static_cast<std::size_t>(blocks_.back());
}

void BitVector::assign_words(std::size_t n, std::vector<std::uint64_t> words) {
  n_ = n;
  words_ = std::move(words);
  words_.resize((n + 63) / 64, 0);
  build();
}

std::size_t BitVector::rank1(std::size_t i) const {
  std::size_t w = i >> 6, b = i & 63;
  std::uint64_t partial = b ? std::popcount(words_[w] & ((1ULL << b) - 1)) : 0;
  return static_cast<std::size_t>(blocks_[w] + partial);
}

std::size_t BitVector::select1(std::size_t k) const {
  if (k == 0 || k > ones_) throw format_error("select1: k out of range");
  // Binary search the superblocks, then scan the word.
  std::size_t lo = 0, hi = words_.size();
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (blocks_[mid] < k) lo = mid; else hi = mid;
  }
  std::uint64_t w = words_[lo];
  std::size_t need = k - static_cast<std::size_t>(blocks_[lo]);
  for (std::size_t b = 0; b < 64; ++b) {
    if ((w >> b) & 1ULL) {
      if (--need == 0) return (lo << 6) + b;
    }
  }
  throw format_error("select1: internal inconsistency");
}

}  // namespace ffmem
