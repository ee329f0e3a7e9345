#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ffmem/grammar.hpp"

namespace ffmem {

// A primary MEM anchored at two rules of one level: signed 0-based offsets of
// the match start relative to efexp(x)/efexp(y). Offsets may be negative when
// the match begins inside the left overlap. Tuples found at the start level
// are already resolved: x == y == kResolvedTuple and the offsets are global
// text positions.
struct PrMemTuple {
  Symbol x = 0;
  Symbol y = 0;
  std::int64_t ox = 0;
  std::int64_t oy = 0;
  std::uint64_t len = 0;

  friend bool operator==(const PrMemTuple&, const PrMemTuple&) = default;
};

inline constexpr Symbol kResolvedTuple = 0xFFFFFFFFu;

// Per-level satellite structures: the colexicographic permutation of the
// rules by lexp, common-suffix values along it, and common-prefix values of
// rexp along symbol order, both with range-minimum support.
struct SatelliteLevel {
  std::vector<std::uint32_t> colex_rank;  // per rule ordinal: position in colex order
  std::vector<std::uint32_t> block_rank;  // per rule ordinal: equal-lexp class id
  RmqArray lcs;                           // lcs[j] = common suffix of colex neighbours j-1, j
  RmqArray lcp;                           // lcp[j] = common prefix of rexp of rules j-1, j
};

class PrMemFinder {
 public:
  explicit PrMemFinder(const Grammar& g);

  // Tuples of all levels 1..rounds+1 with len >= tau.
  std::vector<PrMemTuple> find(std::uint64_t tau);

  const SatelliteLevel& satellite(std::uint32_t level_no) const { return sats_[level_no - 1]; }

  // lcs/lcp of two symbols one level below `level_no` queries. Sentinels give
  // 0, equal symbols their full lexp/rexp length.
  std::int64_t lcs_query(std::uint32_t sym_level, Symbol a, Symbol b) const;
  std::int64_t lcp_query(std::uint32_t sym_level, Symbol a, Symbol b) const;

  // Intermediate arrays of one level's scan, for inspection: surviving sparse
  // suffix array positions (0-based into the level's rhs) and the
  // expansion-domain GLCP (entry 0 is 0).
  struct LevelArrays {
    std::vector<std::size_t> a;
    std::vector<std::int64_t> glcp;
  };
  LevelArrays level_arrays(std::uint32_t level_no);

 private:
  struct LevelCtx;
  void scan_level(std::uint32_t level_no, std::uint64_t tau, std::vector<PrMemTuple>& out);
  LevelCtx make_ctx(std::uint32_t level_no);
  void build_satellites();
  std::string left_context(std::uint32_t level_no, std::size_t pos, std::int64_t global_off);
  const std::string& lexp_cached(Symbol s);

  const Grammar& g_;
  std::vector<SatelliteLevel> sats_;
  std::unordered_map<Symbol, std::string> lexp_cache_;
  std::vector<std::string> texts_;  // decompressed strings, filled lazily
  bool texts_ready_ = false;
};

std::vector<PrMemTuple> find_prmems(const Grammar& g, std::uint64_t tau);

}  // namespace ffmem
