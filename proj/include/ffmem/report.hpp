#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffmem/grammar.hpp"
#include "ffmem/prmem.hpp"

namespace ffmem {

// Final output of the pipeline: equal substrings T_sx[px..px+len-1] ==
// T_sy[py..py+len-1], maximal on both sides. All fields 1-based.
struct MemRecord {
  std::uint32_t sx = 0;
  std::uint32_t sy = 0;
  std::uint64_t px = 0;
  std::uint64_t py = 0;
  std::uint64_t len = 0;

  friend bool operator==(const MemRecord&, const MemRecord&) = default;
  friend auto operator<=>(const MemRecord&, const MemRecord&) = default;
};

// Canonical form: (sx, px) lexicographically no greater than (sy, py).
// Returns false for the identity pair, which is not a MEM.
bool canonicalize(MemRecord& r);

std::string format_record(const MemRecord& r);
std::vector<std::string> format_records(const std::vector<MemRecord>& rs);

// Occurrence index over the (optionally simplified) grammar: one bucket per
// surviving symbol listing every slot that holds it, as the enclosing
// container plus the efexp offset shift of that slot. Start-level containers
// resolve directly to text coordinates.
struct OccIndex {
  struct Occ {
    std::uint32_t container = 0;  // renamed symbol id, or string index when is_string
    bool is_string = false;
    std::int64_t shift = 0;       // global text offset contribution when is_string
  };
  std::vector<std::uint64_t> bucket_start;  // per renamed id, size num_ids+1
  std::vector<Occ> occ;
  std::vector<std::uint32_t> new_id;  // old symbol -> renamed id, kNoId when inlined away
  std::vector<Symbol> old_id;         // renamed id -> old symbol
  std::uint64_t flat_size = 0;        // total slots of the simplified rows

  static constexpr std::uint32_t kNoId = 0xFFFFFFFFu;
  std::size_t num_ids() const { return old_id.size(); }
};

// One side of a tuple during reporting: either a symbol with an efexp-relative
// offset or a resolved global text offset.
struct SideRef {
  bool resolved = false;
  std::uint32_t sym = 0;
  std::int64_t off = 0;
};

struct WorkTuple {
  SideRef a, b;
  std::uint64_t len = 0;
};

struct SimplifyResult {
  OccIndex idx;
  std::vector<WorkTuple> tuples;
};

// Appendix-style simplification: nonterminals with a single occurrence are
// inlined recursively and the survivors renamed to a contiguous range; the
// tuple list is rewritten against the new ids. With inline_unique = false the
// index is built over the unmodified grammar.
SimplifyResult simplify(const Grammar& g, const std::vector<PrMemTuple>& tuples,
                        bool inline_unique = true);

// Stack-driven occurrence expansion of the tuples into deduplicated,
// canonical, sorted MEM records.
std::vector<MemRecord> report(const OccIndex& idx, const Grammar& g,
                              const std::vector<WorkTuple>& tuples);

struct PipelineOptions {
  std::uint64_t tau = 20;
  std::uint64_t seed = 0xFFEEull;
  bool simplify = true;
  unsigned threads = 1;
};

struct PipelineResult {
  Grammar grammar;
  std::vector<PrMemTuple> tuples;
  std::vector<MemRecord> mems;
};

PipelineResult compute_mems(const TextCollection& tc, const PipelineOptions& opt);
std::vector<MemRecord> mems_from_grammar(const Grammar& g, std::uint64_t tau, bool do_simplify);

}  // namespace ffmem
