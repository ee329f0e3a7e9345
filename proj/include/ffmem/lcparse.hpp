#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ffmem/common.hpp"

namespace ffmem {

// Random order over a round's alphabet: h(c) = (a*c + b) mod p for real
// symbols, h($) = 0 and h(#) = p + 1 so the sentinels are the global extremes.
struct HashOrder {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  std::uint64_t p = 2;

  std::uint64_t operator()(Symbol c) const {
    if (c == kSentL) return 0;
    if (c == kSentR) return p + 1;
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((u128(a) * (c % p) + b) % p);
  }
};

// Draws (a, b) until the order is injective and nonzero on [lo..hi). p is the
// smallest prime >= 2*k^2 for k live symbols (and > k + 2).
HashOrder draw_hash_order(Symbol lo, Symbol hi, std::mt19937_64& rng);

enum class PosType : std::uint8_t { kL, kS, kLMS };

// SAIS-style classification of positions 1..n-2 (0-based) of a wrapped
// string; positions 0 and n-1 keep kL as a dummy value.
std::vector<PosType> classify(std::span<const Symbol> s, const HashOrder& h);

// 0-based LMS positions, ascending.
std::vector<std::size_t> local_minima(std::span<const Symbol> s, const HashOrder& h);

// True when some minimum lies at a position <= n-3, i.e. the string still has
// structure beyond the mandatory pre-# minimum and another round is useful.
bool has_interior_minimum(std::span<const Symbol> s, const HashOrder& h);

// Overlapping phrase intervals (0-based, inclusive) for one round:
//   [0 .. j1+1], then [j-1 .. j'+1] per consecutive minima pair, and the
//   rightmost phrase [j'-1 .. n-1] only when it is not already covered.
// Empty minima -> nullopt (caller stops the rounds for this string).
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> parse(
    std::span<const Symbol> s, const std::vector<std::size_t>& minima);

}  // namespace ffmem
