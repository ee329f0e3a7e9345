#pragma once

#include <cstdint>
#include <vector>

#include "ffmem/common.hpp"

namespace ffmem {

// Generalized integer text: one concatenated array with per-string start
// offsets. Suffixes never compare across string ends; a virtual per-string
// terminator sorts below every symbol.
struct IntText {
  std::vector<Symbol> sym;
  std::vector<std::size_t> starts;  // ascending, starts[0] == 0
  Symbol alphabet = 0;              // all symbols < alphabet

  std::size_t size() const { return sym.size(); }
};

// SA-IS over an integer sequence. `seq` must end with a unique smallest
// symbol 0. Returns the suffix array of all n positions.
std::vector<std::int64_t> sais(const std::vector<Symbol>& seq, Symbol alphabet);

// Suffix array of a generalized text, 0-based positions into t.sym.
std::vector<std::size_t> suffix_array(const IntText& t);

// LCP array: lcp[0] = 0, lcp[j] = longest common prefix of the suffixes at
// sa[j-1] and sa[j], never crossing string ends.
std::vector<std::size_t> lcp_array(const IntText& t, const std::vector<std::size_t>& sa);

// Sparse-table range minimum over a fixed value array. O(1) queries.
class RmqArray {
 public:
  RmqArray() = default;
  explicit RmqArray(std::vector<std::int64_t> values);

  // Minimum over values[l..r], inclusive, 0-based. Requires l <= r < size.
  std::int64_t min(std::size_t l, std::size_t r) const;
  // Leftmost index attaining the minimum.
  std::size_t argmin(std::size_t l, std::size_t r) const;

  std::size_t size() const { return vals_.size(); }
  std::int64_t operator[](std::size_t i) const { return vals_[i]; }
  const std::vector<std::int64_t>& values() const { return vals_; }

 private:
  std::vector<std::int64_t> vals_;
  std::vector<std::vector<std::uint32_t>> table_;  // table_[k][i] = argmin of [i, i+2^(k+1))
};

// Plain bitvector with rank/select support. Call set() then build().
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n);

  void set(std::size_t i);
  void build();

  bool operator[](std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
  }
  std::size_t size() const { return n_; }
  std::size_t count() const { return ones_; }

  // Number of ones in [0, i), i in [0..n].
  std::size_t rank1(std::size_t i) const;
  // 0-based position of the k-th one, k in [1..count()]. Throws when k is
  // out of range.
  std::size_t select1(std::size_t k) const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  void assign_words(std::size_t n, std::vector<std::uint64_t> words);

 private:
  std::size_t n_ = 0;
  std::size_t ones_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> blocks_;  // rank superblocks, one per word
};

}  // namespace ffmem
