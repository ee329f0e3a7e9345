#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ffmem/grammar.hpp"

namespace ffmem {

namespace {

constexpr char kMagic[4] = {'F', 'F', 'G', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw format_error("truncated file");
  return v;
}

template <typename T>
void put_vec(std::ostream& out, const std::vector<T>& v) {
  put<std::uint64_t>(out, v.size());
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
std::vector<T> get_vec(std::istream& in) {
  auto n = get<std::uint64_t>(in);
  std::vector<T> v(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
  if (!in) throw format_error("truncated file");
  return v;
}

}  // namespace

void serialize(const Grammar& g, std::ostream& out) {
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, g.sigma);
  put<std::uint32_t>(out, g.rounds);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.num_strings()));
  for (const auto& lv : g.levels) {
    put<std::uint64_t>(out, lv.num_rules());
    put<std::uint32_t>(out, lv.first_sym);
    put_vec(out, lv.rhs);
    put_vec(out, lv.offsets);
    put_vec(out, lv.starts.words());
  }
  put_vec(out, g.start_bounds);
  put_vec(out, g.text_base);
  put<std::uint64_t>(out, g.string_ids.size());
  for (const auto& s : g.string_ids) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  put_vec(out, g.term_bytes);
}

Grammar deserialize(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw format_error("bad magic");
  auto version = get<std::uint32_t>(in);
  if (version != kVersion) throw format_error("unsupported version " + std::to_string(version));

  Grammar g;
  g.sigma = get<std::uint32_t>(in);
  g.rounds = get<std::uint32_t>(in);
  auto m = get<std::uint32_t>(in);
  g.levels.resize(g.rounds + 1);
  for (auto& lv : g.levels) {
    auto rules = get<std::uint64_t>(in);
    lv.first_sym = get<std::uint32_t>(in);
    lv.rhs = get_vec<Symbol>(in);
    lv.offsets = get_vec<std::int64_t>(in);
    auto words = get_vec<std::uint64_t>(in);
    lv.starts.assign_words(lv.rhs.size(), std::move(words));
    lv.rule_start.assign(1, 0);
    for (std::size_t k = 1; k <= rules; ++k) {
      lv.rule_start.push_back(k < rules ? lv.starts.select1(k + 1) : lv.rhs.size());
    }
    if (lv.num_rules() != rules) throw format_error("corrupt level");
  }
  g.start_bounds = get_vec<std::uint64_t>(in);
  g.text_base = get_vec<std::uint64_t>(in);
  if (g.start_bounds.size() != m) throw format_error("corrupt string table");
  auto nids = get<std::uint64_t>(in);
  g.string_ids.resize(nids);
  for (auto& s : g.string_ids) {
    auto len = get<std::uint32_t>(in);
    s.resize(len);
    in.read(s.data(), len);
    if (!in) throw format_error("truncated file");
  }
  g.term_bytes = get_vec<std::uint8_t>(in);

  // Rebuild the derived per-symbol tables bottom-up.
  g.sym_level.assign(g.sigma, 0);
  g.ef_len.assign(g.sigma, 1);
  g.lx_len.assign(g.sigma, 1);
  g.rx_len.assign(g.sigma, 1);
  for (Symbol s : {kSentL, kSentR}) g.ef_len[s] = g.lx_len[s] = g.rx_len[s] = 0;
  for (std::uint32_t lvno = 1; lvno <= g.rounds; ++lvno) {
    const GrammarLevel& lv = g.levels[lvno - 1];
    if (lv.first_sym != g.num_symbols()) throw format_error("corrupt symbol numbering");
    for (std::size_t r = 0; r < lv.num_rules(); ++r) {
      std::span<const Symbol> row{lv.rhs.data() + lv.rule_start[r],
                                  lv.rule_start[r + 1] - lv.rule_start[r]};
      std::int64_t ef = 0, rx = 0;
      for (std::size_t k = 1; k + 2 < row.size(); ++k) ef += g.ef_len[row[k]];
      for (std::size_t k = 1; k + 1 < row.size(); ++k) rx += g.ef_len[row[k]];
      rx += g.rx_len[row.back()];
      g.ef_len.push_back(ef);
      g.lx_len.push_back(g.lx_len[row[0]] + ef);
      g.rx_len.push_back(rx);
      g.sym_level.push_back(lvno);
    }
  }
  return g;
}

void save_grammar(const Grammar& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path);
  serialize(g, out);
  if (!out) throw io_error("write failed: " + path);
}

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return deserialize(in);
}

bool operator==(const Grammar& a, const Grammar& b) {
  if (a.sigma != b.sigma || a.rounds != b.rounds || a.term_bytes != b.term_bytes ||
      a.start_bounds != b.start_bounds || a.text_base != b.text_base ||
      a.string_ids != b.string_ids || a.levels.size() != b.levels.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    if (a.levels[i].first_sym != b.levels[i].first_sym || a.levels[i].rhs != b.levels[i].rhs ||
        a.levels[i].offsets != b.levels[i].offsets ||
        a.levels[i].rule_start != b.levels[i].rule_start) {
      return false;
    }
  }
  return true;
}

}  // namespace ffmem
