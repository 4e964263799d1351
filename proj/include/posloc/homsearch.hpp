#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "posloc/poset.hpp"

namespace posloc {

/// Which maps count as morphisms when hom-sets are searched or enumerated.
///
/// `monotone` is the default ambient choice: all order-preserving maps.
/// `strict` mirrors the morphisms of loopless flows: x < y forces
/// f(x) < f(y), except that the unique map to the one-point poset is always
/// admitted (the stand-in for the terminal flow, which every flow maps to).
enum class HomMode { monotone, strict };

/// Backtracking search for maps src -> tgt in a given mode, with optional
/// per-element fixed values, candidate restrictions, and global injectivity.
/// Enumeration order is lexicographic on assignment vectors.
class MapSearch {
public:
  MapSearch(PosetPtr src, PosetPtr tgt, HomMode mode);

  void fix(std::size_t elem, uint32_t value);
  /// Restrict elem to the given candidate list (intersected with any
  /// earlier restriction).
  void restrict_to(std::size_t elem, const std::vector<uint32_t>& candidates);
  void require_injective() { injective_ = true; }

  /// Calls fn for each solution in lexicographic order; fn returns false
  /// to stop. Returns true if the enumeration ran to completion.
  bool for_each(const std::function<bool(const MonotoneMap&)>& fn) const;

  std::optional<MonotoneMap> first() const;
  std::vector<MonotoneMap> all() const;
  uint64_t count() const;

private:
  PosetPtr src_, tgt_;
  HomMode mode_;
  bool injective_ = false;
  std::vector<std::optional<uint32_t>> fixed_;
  std::vector<std::optional<std::vector<uint32_t>>> restricted_;
};

bool for_each_map(PosetPtr src, PosetPtr tgt, HomMode mode,
                  const std::function<bool(const MonotoneMap&)>& fn);
std::vector<MonotoneMap> enumerate_maps(PosetPtr src, PosetPtr tgt, HomMode mode);
uint64_t count_maps(PosetPtr src, PosetPtr tgt, HomMode mode);

} // namespace posloc
