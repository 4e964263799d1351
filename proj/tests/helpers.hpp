#pragma once

#include <vector>

#include "posloc/homsearch.hpp"
#include "posloc/poset.hpp"

namespace posloc::testutil {

inline PosetPtr chain(std::size_t n) { return make_poset(FinPoset::chain(n)); }
inline PosetPtr antichain(std::size_t n) { return make_poset(FinPoset::antichain(n)); }
inline PosetPtr point() { return make_poset(FinPoset::point()); }
inline PosetPtr empty() { return make_poset(FinPoset::empty()); }

inline PosetPtr diamond() {
  return make_poset(FinPoset::from_covers({"0", "x", "y", "1"},
                                          {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
}

inline MonotoneMap map_of(PosetPtr s, PosetPtr t, std::vector<uint32_t> a) {
  return make_map(std::move(s), std::move(t), std::move(a));
}

/// The segment subdivision {0<1} -> {0<A<1}, endpoints to endpoints.
inline MonotoneMap subdivision() { return map_of(chain(2), chain(3), {0, 2}); }

/// Independent brute-force map enumeration: every assignment vector in
/// lexicographic order, filtered by a direct monotonicity (or strictness)
/// predicate. Kept separate from MapSearch on purpose: it is the oracle.
inline std::vector<std::vector<uint32_t>> brute_maps(const FinPoset& p,
                                                     const FinPoset& q,
                                                     bool strict = false) {
  std::vector<std::vector<uint32_t>> out;
  std::size_t n = p.size(), m = q.size();
  if (strict && m == 1) {  // the unique collapse is always admitted
    out.push_back(std::vector<uint32_t>(n, 0));
    return out;
  }
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (m == 0) return out;
  std::vector<uint32_t> a(n, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (p.leq(i, j) && !q.leq(a[i], a[j])) ok = false;
        if (strict && i != j && p.leq(i, j) && a[i] == a[j]) ok = false;
      }
    if (ok) out.push_back(a);
    std::size_t i = n;
    while (i > 0) {
      if (++a[i - 1] < m) break;
      a[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

} // namespace posloc::testutil
