#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffmem {

// Internal symbol ids. Terminals occupy [0..sigma), nonterminals continue
// upward, one contiguous block per grammar level.
using Symbol = std::uint32_t;
using SymString = std::vector<Symbol>;

// The two sentinel codes flanking every string at every level. They sort below
// all real symbols and expand to the empty string.
inline constexpr Symbol kSentL = 0;  // '$'
inline constexpr Symbol kSentR = 1;  // '#'
inline constexpr Symbol kFirstByteSym = 2;

inline bool is_sentinel(Symbol s) { return s < kFirstByteSym; }

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ffmem
