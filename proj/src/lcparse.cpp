#include "ffmem/lcparse.hpp"

#include <cassert>

namespace ffmem {

namespace {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t x) {
  while (!is_prime(x)) ++x;
  return x;
}

}  // namespace

HashOrder draw_hash_order(Symbol lo, Symbol hi, std::mt19937_64& rng) {
  const std::uint64_t k = hi > lo ? hi - lo : 1;
  HashOrder h;
  h.p = next_prime(std::max<std::uint64_t>(2 * k * k, k + 3));
  std::uniform_int_distribution<std::uint64_t> dist(1, h.p);
  while (true) {
    h.a = dist(rng);
    h.b = dist(rng);
    // A linear map mod a prime is injective on a range shorter than p as long
    // as a != p; it only remains to keep 0 and p+1 reserved for the sentinels.
    if (h.a == h.p) continue;
    bool ok = true;
    for (Symbol c = lo; c < hi; ++c) {
      if (h(c) == 0) { ok = false; break; }
    }
    if (ok) return h;
  }
}

std::vector<PosType> classify(std::span<const Symbol> s, const HashOrder& h) {
  const std::size_t n = s.size();
  std::vector<PosType> t(n, PosType::kL);
  if (n < 3) return t;
  // Right-to-left over positions 1..n-2 comparing h-values, with equal-symbol
  // runs inheriting the type on their right.
  for (std::size_t j = n - 1; j-- > 1;) {
    PosType right = j + 1 <= n - 2 ? t[j + 1] : PosType::kL;
    if (s[j] == s[j + 1]) {
      t[j] = j + 1 <= n - 2 ? right : PosType::kL;
    } else {
      t[j] = h(s[j]) < h(s[j + 1]) ? PosType::kS : PosType::kL;
    }
  }
  for (std::size_t j = 2; j + 1 < n; ++j) {
    if (t[j] == PosType::kS && t[j - 1] == PosType::kL) t[j] = PosType::kLMS;
  }
  return t;
}

std::vector<std::size_t> local_minima(std::span<const Symbol> s, const HashOrder& h) {
  auto types = classify(s, h);
  std::vector<std::size_t> out;
  for (std::size_t j = 2; j + 1 < s.size(); ++j) {
    if (types[j] == PosType::kLMS) out.push_back(j);
  }
  return out;
}

bool has_interior_minimum(std::span<const Symbol> s, const HashOrder& h) {
  for (std::size_t j : local_minima(s, h)) {
    if (j + 2 < s.size()) return true;
  }
  return false;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> parse(
    std::span<const Symbol> s, const std::vector<std::size_t>& minima) {
  if (minima.empty()) return std::nullopt;
  const std::size_t n = s.size();
  std::vector<std::pair<std::size_t, std::size_t>> iv;
  iv.reserve(minima.size() + 1);
  iv.emplace_back(0, minima.front() + 1);
  for (std::size_t k = 1; k < minima.size(); ++k) {
    iv.emplace_back(minima[k - 1] - 1, minima[k] + 1);
  }
  // The rightmost rule would be a proper suffix of the last pair phrase when
  // the final minimum already touches the string end, so it is emitted only
  // when it still adds coverage.
  std::size_t last = minima.back();
  if (last + 2 < n) iv.emplace_back(last - 1, n - 1);
  return iv;
}

}  // namespace ffmem
