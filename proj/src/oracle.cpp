#include "ffmem/oracle.hpp"

#include <algorithm>

#include "ffmem/sufstruct.hpp"

namespace ffmem {

namespace {

std::vector<MemRecord> finish(std::vector<MemRecord> recs) {
  std::sort(recs.begin(), recs.end());
  recs.erase(std::unique(recs.begin(), recs.end()), recs.end());
  return recs;
}

}  // namespace

std::vector<MemRecord> brute_mems(const TextCollection& tc, std::uint64_t tau) {
  std::vector<MemRecord> out;
  const std::size_t m = tc.size();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x; y < m; ++y) {
      const std::string& a = tc.strings[x];
      const std::string& b = tc.strings[y];
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (x == y && i == j) continue;
          if (a[i] != b[j]) continue;
          // Left-maximal: a string start on either side or a mismatch.
          if (i > 0 && j > 0 && a[i - 1] == b[j - 1]) continue;
          std::size_t l = 0;
          while (i + l < a.size() && j + l < b.size() && a[i + l] == b[j + l]) ++l;
          if (l < tau) continue;
          MemRecord r{static_cast<std::uint32_t>(x + 1), static_cast<std::uint32_t>(y + 1),
                      i + 1, j + 1, l};
          if (canonicalize(r)) out.push_back(r);
        }
      }
    }
  }
  return finish(std::move(out));
}

std::vector<MemRecord> sa_mems(const TextCollection& tc, std::uint64_t tau) {
  IntText t;
  t.starts.reserve(tc.size());
  Symbol maxsym = 0;
  for (const auto& s : tc.strings) {
    t.starts.push_back(t.sym.size());
    for (unsigned char c : s) {
      t.sym.push_back(c);
      maxsym = std::max<Symbol>(maxsym, c);
    }
  }
  t.alphabet = maxsym + 1;
  auto sa = suffix_array(t);
  auto lcp = lcp_array(t, sa);
  const std::size_t n = t.size();
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[sa[k]] = k;
  RmqArray rmq(std::vector<std::int64_t>(lcp.begin(), lcp.end()));

  std::vector<std::uint32_t> str_of(n);
  for (std::size_t j = 0; j < t.starts.size(); ++j) {
    std::size_t end = j + 1 < t.starts.size() ? t.starts[j + 1] : n;
    for (std::size_t i = t.starts[j]; i < end; ++i) str_of[i] = static_cast<std::uint32_t>(j);
  }

  auto match_len = [&](std::size_t i, std::size_t j) -> std::uint64_t {
    auto [lo, hi] = std::minmax(rank[i], rank[j]);
    return static_cast<std::uint64_t>(rmq.min(lo + 1, hi));
  };

  std::vector<MemRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t.sym[i] != t.sym[j]) continue;
      std::uint32_t x = str_of[i], y = str_of[j];
      std::size_t li = i - t.starts[x], lj = j - t.starts[y];
      if (li > 0 && lj > 0 && t.sym[i - 1] == t.sym[j - 1]) continue;
      std::uint64_t l = match_len(i, j);
      if (l < tau) continue;
      // Right-maximality holds by construction: the generalized LCP stops at
      // a mismatch or at a string end.
      MemRecord r{x + 1, y + 1, li + 1, lj + 1, l};
      if (canonicalize(r)) out.push_back(r);
    }
  }
  return finish(std::move(out));
}

}  // namespace ffmem
