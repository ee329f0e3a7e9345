#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ffmem/lcparse.hpp"
#include "ffmem/sufstruct.hpp"
#include "ffmem/textio.hpp"

namespace ffmem {

// One grammar level: the concatenated right-hand sides of its rules in symbol
// order, the aligned offset rows, and rule-start support for map/parent.
struct GrammarLevel {
  Symbol first_sym = 0;                 // id of the level's first rule; unused for the start level
  std::vector<Symbol> rhs;              // R^i
  std::vector<std::int64_t> offsets;    // O^i, aligned with rhs
  std::vector<std::size_t> rule_start;  // g+1 entries, last == rhs.size()
  BitVector starts;                     // 1 at every rule start

  std::size_t num_rules() const { return rule_start.size() - 1; }
  std::size_t rule_of_pos(std::size_t pos) const { return starts.rank1(pos + 1) - 1; }
};

// Fully-balanced fix-free grammar. Levels 1..h hold the parsing rounds; one
// extra start level holds, per input string, the block $ w $ # around its
// final compressed sequence. Sentinels expand to the empty string.
struct Grammar {
  Symbol sigma = kFirstByteSym;          // terminals incl. sentinels: ids [0..sigma)
  std::vector<std::uint8_t> term_bytes;  // byte of symbol i+2
  std::uint32_t rounds = 0;              // h
  std::vector<GrammarLevel> levels;      // size rounds+1; levels[rounds] = start level
  std::vector<std::uint64_t> start_bounds;  // per-string block start in the start level
  std::vector<std::uint64_t> text_base;     // copy of TextCollection::base
  std::vector<std::string> string_ids;

  // Per-symbol tables, indexed by symbol id.
  std::vector<std::uint32_t> sym_level;  // 0 for terminals and sentinels
  std::vector<std::int64_t> ef_len;      // |efexp|
  std::vector<std::int64_t> lx_len;      // |lexp|
  std::vector<std::int64_t> rx_len;      // |rexp|

  Symbol num_symbols() const { return static_cast<Symbol>(ef_len.size()); }
  std::size_t num_strings() const { return start_bounds.size(); }
  const GrammarLevel& level(std::uint32_t i) const { return levels[i - 1]; }  // i in [1..rounds]
  const GrammarLevel& start_level() const { return levels[rounds]; }

  // Ordinal of X's rule within its level, 1-based.
  std::size_t map_ordinal(Symbol x) const;
  // Rule symbol enclosing position pos of R^i (1-based level in [1..rounds]).
  Symbol parent(std::uint32_t level_no, std::size_t pos) const;
  // Rule row of a nonterminal.
  std::span<const Symbol> rule_rhs(Symbol x) const;

  std::int64_t efexp_len(Symbol x) const { return ef_len[x]; }
  std::int64_t lexp_len(Symbol x) const { return lx_len[x]; }
  std::int64_t rexp_len(Symbol x) const { return rx_len[x]; }

  // Expansion oracles (byte strings over the input alphabet). Linear in the
  // output size; meant for tests, verification and left-context walks.
  std::string efexp_str(Symbol x) const;
  std::string lexp_str(Symbol x) const;
  std::string rexp_str(Symbol x) const;

  // Left overlap of x: |lexp| - |efexp| characters preceding efexp(x).
  std::int64_t delta_len(Symbol x) const { return lx_len[x] - ef_len[x]; }

  // Reconstructs the input strings from the start level (tiling identity).
  std::vector<std::string> decompress() const;

  // Grammar size G: total right-hand side length over all levels.
  std::uint64_t size_G() const;
  std::uint64_t num_rules_g() const;
};

Grammar build(const TextCollection& tc, std::uint64_t seed, unsigned threads = 1);

// Deterministic variant used by tests: one explicit order per round; further
// rounds draw from rng(seed) when the list runs out.
Grammar build_with_orders(const TextCollection& tc, std::span<const HashOrder> orders,
                          std::uint64_t seed = 0);

void serialize(const Grammar& g, std::ostream& out);
Grammar deserialize(std::istream& in);
void save_grammar(const Grammar& g, const std::string& path);
Grammar load_grammar(const std::string& path);

bool operator==(const Grammar& a, const Grammar& b);

}  // namespace ffmem
