#include "ffmem/textio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ffmem {

std::pair<std::uint32_t, std::uint64_t> TextCollection::locate(std::uint64_t global_offset) const {
  if (global_offset >= total_len()) {
    throw format_error("locate: offset " + std::to_string(global_offset) + " out of range");
  }
  // First x with base[x] > offset; the string is x-1 (0-based), id x (1-based).
  auto it = std::upper_bound(base.begin(), base.end(), global_offset);
  auto idx = static_cast<std::size_t>(it - base.begin()) - 1;
  return {static_cast<std::uint32_t>(idx + 1), global_offset - base[idx]};
}

static void finalize(TextCollection& tc) {
  if (tc.strings.empty()) throw format_error("empty collection");
  tc.base.resize(tc.strings.size() + 1);
  tc.base[0] = 0;
  for (std::size_t i = 0; i < tc.strings.size(); ++i) {
    if (tc.strings[i].empty()) {
      throw format_error("empty record '" + tc.ids[i] + "' rejected");
    }
    tc.base[i + 1] = tc.base[i] + tc.strings[i].size();
  }
}

TextCollection parse_fasta(std::string_view data) {
  TextCollection tc;
  std::string cur;
  bool in_record = false;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    if (line.empty()) continue;
    if (line[0] == '>') {
      if (in_record) {
        tc.strings.push_back(std::move(cur));
        cur.clear();
      }
      std::string_view name = line.substr(1);
      std::size_t sp = name.find_first_of(" \t");
      if (sp != std::string_view::npos) name = name.substr(0, sp);
      tc.ids.emplace_back(name);
      in_record = true;
    } else {
      if (!in_record) throw format_error("malformed FASTA: sequence before first header");
      cur.append(line);
    }
  }
  if (in_record) tc.strings.push_back(std::move(cur));
  finalize(tc);
  return tc;
}

TextCollection parse_lines(std::string_view data) {
  TextCollection tc;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    if (line.empty()) continue;
    tc.strings.emplace_back(line);
    tc.ids.push_back(std::to_string(tc.strings.size()));
  }
  finalize(tc);
  return tc;
}

TextCollection load(const std::string& path, InputFormat fmt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string data = buf.str();
  return fmt == InputFormat::kFasta ? parse_fasta(data) : parse_lines(data);
}

TextCollection make_collection(std::vector<std::string> strings) {
  TextCollection tc;
  tc.strings = std::move(strings);
  for (std::size_t i = 0; i < tc.strings.size(); ++i) tc.ids.push_back(std::to_string(i + 1));
  finalize(tc);
  return tc;
}

AlphabetMap build_alphabet(const TextCollection& tc) {
  AlphabetMap amap;
  std::array<bool, 256> seen{};
  for (const auto& s : tc.strings) {
    for (unsigned char c : s) seen[c] = true;
  }
  Symbol next = kFirstByteSym;
  for (int b = 0; b < 256; ++b) {
    if (seen[b]) {
      amap.sym_of_byte[b] = next++;
      amap.byte_of_sym.push_back(static_cast<std::uint8_t>(b));
    }
  }
  amap.sigma = next;
  return amap;
}

SymString wrap_sentinels(std::string_view raw, const AlphabetMap& amap) {
  SymString out;
  out.reserve(raw.size() + 3);
  out.push_back(kSentL);
  for (unsigned char c : raw) out.push_back(amap.sym_of_byte[c]);
  out.push_back(kSentL);
  out.push_back(kSentR);
  return out;
}

}  // namespace ffmem
