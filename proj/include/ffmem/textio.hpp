#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffmem/common.hpp"

namespace ffmem {

enum class InputFormat { kFasta, kLines };

// A collection of byte strings with display names and cumulative offsets.
// base[x] is the total length of strings [0..x); base has m+1 entries.
// Immutable after construction, safe to share across threads.
struct TextCollection {
  std::vector<std::string> strings;
  std::vector<std::string> ids;
  std::vector<std::uint64_t> base;

  std::size_t size() const { return strings.size(); }
  std::uint64_t total_len() const { return base.empty() ? 0 : base.back(); }

  // Maps a global sentinel-free offset to (1-based string id, 0-based local
  // position). Throws format_error when out of range.
  std::pair<std::uint32_t, std::uint64_t> locate(std::uint64_t global_offset) const;
};

TextCollection load(const std::string& path, InputFormat fmt);
TextCollection parse_fasta(std::string_view data);
TextCollection parse_lines(std::string_view data);

// Convenience for tests and in-memory pipelines.
TextCollection make_collection(std::vector<std::string> strings);

// Dense terminal alphabet over the bytes that actually occur in a collection.
// Symbol 0/1 are the sentinels; byte values map to [2..sigma).
struct AlphabetMap {
  std::array<Symbol, 256> sym_of_byte{};
  std::vector<std::uint8_t> byte_of_sym;  // indexed by symbol - kFirstByteSym
  Symbol sigma = kFirstByteSym;           // terminals including both sentinels
};

AlphabetMap build_alphabet(const TextCollection& tc);

// $ T $ # over the dense alphabet.
SymString wrap_sentinels(std::string_view raw, const AlphabetMap& amap);

}  // namespace ffmem
