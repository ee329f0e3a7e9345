#pragma once

#include <cstdint>
#include <vector>

#include "ffmem/report.hpp"
#include "ffmem/textio.hpp"

namespace ffmem {

// Reference MEM enumeration straight from the definition: every position pair
// extended maximally both ways, kept when it cannot be extended and reaches
// tau. Quadratic in pair count times match length; for desk-scale validation.
std::vector<MemRecord> brute_mems(const TextCollection& tc, std::uint64_t tau);

// Same result through a generalized suffix array: match lengths come from
// LCP range minima, so each pair costs O(1). Cross-checks the brute scan.
std::vector<MemRecord> sa_mems(const TextCollection& tc, std::uint64_t tau);

}  // namespace ffmem
