#include "ffmem/report.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace ffmem {

bool canonicalize(MemRecord& r) {
  if (r.sx == r.sy && r.px == r.py) return false;
  if (r.sy < r.sx || (r.sy == r.sx && r.py < r.px)) {
    std::swap(r.sx, r.sy);
    std::swap(r.px, r.py);
  }
  return true;
}

std::string format_record(const MemRecord& r) {
  std::string s;
  s += std::to_string(r.sx);
  s += '\t';
  s += std::to_string(r.sy);
  s += '\t';
  s += std::to_string(r.px);
  s += '\t';
  s += std::to_string(r.py);
  s += '\t';
  s += std::to_string(r.len);
  return s;
}

std::vector<std::string> format_records(const std::vector<MemRecord>& rs) {
  std::vector<std::string> out;
  out.reserve(rs.size());
  for (const auto& r : rs) out.push_back(format_record(r));
  return out;
}

namespace {

struct Walker {
  const Grammar& g;
  const std::vector<bool>& removed;
  OccIndex& idx;
  std::vector<std::uint32_t>& k_of;     // removed symbol -> final container
  std::vector<bool>& k_is_string;
  std::vector<std::int64_t>& shift_of;  // removed symbol -> efexp offset shift
  std::vector<std::vector<OccIndex::Occ>> buckets;

  void walk(std::uint32_t container, bool is_string, std::span<const Symbol> row,
            std::int64_t base) {
    std::int64_t cum = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      Symbol s = row[j];
      std::int64_t tc = j == 0 ? -g.ef_len[s] : cum;
      if (j > 0) cum += g.ef_len[s];
      std::int64_t shift = base + tc;
      if (s >= g.sigma && removed[s]) {
        k_of[s] = container;
        k_is_string[s] = is_string;
        shift_of[s] = shift;
        walk(container, is_string, g.rule_rhs(s), shift);
      } else {
        std::uint32_t nid = idx.new_id[s];
        buckets[nid].push_back({container, is_string, shift});
        ++idx.flat_size;
      }
    }
  }
};

}  // namespace

SimplifyResult simplify(const Grammar& g, const std::vector<PrMemTuple>& tuples,
                        bool inline_unique) {
  const Symbol nsym = g.num_symbols();
  std::vector<std::uint32_t> occ_count(nsym, 0);
  for (const auto& lv : g.levels) {
    for (Symbol s : lv.rhs) ++occ_count[s];
  }

  std::vector<bool> removed(nsym, false);
  if (inline_unique) {
    for (Symbol s = g.sigma; s < nsym; ++s) removed[s] = occ_count[s] == 1;
  }

  SimplifyResult res;
  OccIndex& idx = res.idx;
  idx.new_id.assign(nsym, OccIndex::kNoId);
  for (Symbol s = 0; s < nsym; ++s) {
    if (s < g.sigma || !removed[s]) {
      idx.new_id[s] = static_cast<std::uint32_t>(idx.old_id.size());
      idx.old_id.push_back(s);
    }
  }

  std::vector<std::uint32_t> k_of(nsym, 0);
  std::vector<bool> k_is_string(nsym, false);
  std::vector<std::int64_t> shift_of(nsym, 0);
  Walker w{g, removed, idx, k_of, k_is_string, shift_of, {}};
  w.buckets.resize(idx.num_ids());

  // Surviving rules, then the start-level blocks whose shifts are global.
  for (Symbol s = g.sigma; s < nsym; ++s) {
    if (!removed[s]) w.walk(idx.new_id[s], false, g.rule_rhs(s), 0);
  }
  const GrammarLevel& sl = g.start_level();
  for (std::size_t str = 0; str < g.num_strings(); ++str) {
    std::span<const Symbol> row{sl.rhs.data() + sl.rule_start[str],
                                sl.rule_start[str + 1] - sl.rule_start[str]};
    w.walk(static_cast<std::uint32_t>(str), true, row, sl.offsets[sl.rule_start[str]]);
  }

  idx.bucket_start.assign(idx.num_ids() + 1, 0);
  for (std::size_t i = 0; i < w.buckets.size(); ++i) {
    idx.bucket_start[i + 1] = idx.bucket_start[i] + w.buckets[i].size();
  }
  idx.occ.reserve(idx.flat_size);
  for (auto& b : w.buckets) {
    idx.occ.insert(idx.occ.end(), b.begin(), b.end());
  }

  res.tuples.reserve(tuples.size());
  for (const PrMemTuple& t : tuples) {
    WorkTuple wt;
    wt.len = t.len;
    auto side = [&](Symbol sym, std::int64_t off) -> SideRef {
      if (sym == kResolvedTuple) return {true, 0, off};
      if (!removed[sym]) return {false, idx.new_id[sym], off};
      if (k_is_string[sym]) return {true, 0, shift_of[sym] + off};
      return {false, k_of[sym], shift_of[sym] + off};  // k_of already holds renamed ids
    };
    wt.a = side(t.x, t.ox);
    wt.b = side(t.y, t.oy);
    res.tuples.push_back(wt);
  }
  return res;
}

namespace {

struct RecordHash {
  std::size_t operator()(const MemRecord& r) const {
    std::uint64_t h = r.sx;
    h = h * 0x9E3779B97F4A7C15ull + r.sy;
    h = h * 0x9E3779B97F4A7C15ull + r.px;
    h = h * 0x9E3779B97F4A7C15ull + r.py;
    h = h * 0x9E3779B97F4A7C15ull + r.len;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::vector<MemRecord> report(const OccIndex& idx, const Grammar& g,
                              const std::vector<WorkTuple>& tuples) {
  std::unordered_set<MemRecord, RecordHash> seen;
  std::vector<WorkTuple> stack(tuples);
  TextCollection bases;
  bases.base = g.text_base;

  while (!stack.empty()) {
    WorkTuple t = stack.back();
    stack.pop_back();
    if (!t.a.resolved || !t.b.resolved) {
      // Expand the first unresolved side over its occurrence bucket.
      SideRef& s = !t.a.resolved ? t.a : t.b;
      std::uint32_t id = s.sym;
      SideRef saved = s;
      for (std::uint64_t k = idx.bucket_start[id]; k < idx.bucket_start[id + 1]; ++k) {
        const OccIndex::Occ& oc = idx.occ[k];
        s.resolved = oc.is_string;
        s.sym = oc.is_string ? 0 : oc.container;
        s.off = saved.off + oc.shift;
        stack.push_back(t);
      }
      continue;
    }
    auto [sx, px] = bases.locate(static_cast<std::uint64_t>(t.a.off));
    auto [sy, py] = bases.locate(static_cast<std::uint64_t>(t.b.off));
    MemRecord r{sx, sy, px + 1, py + 1, t.len};
    if (canonicalize(r)) seen.insert(r);
  }

  std::vector<MemRecord> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

PipelineResult compute_mems(const TextCollection& tc, const PipelineOptions& opt) {
  PipelineResult res;
  res.grammar = build(tc, opt.seed, opt.threads);
  res.tuples = find_prmems(res.grammar, opt.tau);
  SimplifyResult sr = simplify(res.grammar, res.tuples, opt.simplify);
  res.mems = report(sr.idx, res.grammar, sr.tuples);
  return res;
}

std::vector<MemRecord> mems_from_grammar(const Grammar& g, std::uint64_t tau, bool do_simplify) {
  auto tuples = find_prmems(g, tau);
  SimplifyResult sr = simplify(g, tuples, do_simplify);
  return report(sr.idx, g, sr.tuples);
}

}  // namespace ffmem
