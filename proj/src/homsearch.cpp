#include "posloc/homsearch.hpp"

#include <algorithm>

namespace posloc {

MapSearch::MapSearch(PosetPtr src, PosetPtr tgt, HomMode mode)
    : src_(std::move(src)), tgt_(std::move(tgt)), mode_(mode),
      fixed_(src_->size()), restricted_(src_->size()) {}

void MapSearch::fix(std::size_t elem, uint32_t value) { fixed_[elem] = value; }

void MapSearch::restrict_to(std::size_t elem, const std::vector<uint32_t>& candidates) {
  if (!restricted_[elem]) {
    restricted_[elem] = candidates;
    std::sort(restricted_[elem]->begin(), restricted_[elem]->end());
    return;
  }
  std::vector<uint32_t> merged;
  for (auto v : *restricted_[elem])
    if (std::find(candidates.begin(), candidates.end(), v) != candidates.end())
      merged.push_back(v);
  restricted_[elem] = std::move(merged);
}

bool MapSearch::for_each(const std::function<bool(const MonotoneMap&)>& fn) const {
  const FinPoset& P = *src_;
  const FinPoset& Q = *tgt_;
  std::size_t n = P.size();

  // Strict mode: every flow has a unique morphism to the terminal flow, so
  // hom-sets into the one-point poset are the single collapse map.
  if (mode_ == HomMode::strict && Q.size() == 1) {
    std::vector<uint32_t> a(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (fixed_[i] && *fixed_[i] != 0) return true;
      if (restricted_[i] &&
          std::find(restricted_[i]->begin(), restricted_[i]->end(), 0) ==
              restricted_[i]->end())
        return true;
    }
    if (injective_ && n > 1) return true;
    return fn(MonotoneMap{src_, tgt_, std::move(a)});
  }

  std::vector<uint32_t> assign(n, 0);
  std::vector<bool> used(Q.size(), false);
  bool completed = true;

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) {
      if (!fn(MonotoneMap{src_, tgt_, assign})) {
        completed = false;
        return false;
      }
      return true;
    }
    auto try_value = [&](uint32_t v) -> bool {
      if (fixed_[i] && *fixed_[i] != v) return true;
      if (injective_ && used[v]) return true;
      for (std::size_t j = 0; j < i; ++j) {
        if (P.leq(j, i)) {
          if (!Q.leq(assign[j], v)) return true;
          if (mode_ == HomMode::strict && j != i && !P.leq(i, j) && assign[j] == v)
            return true;
        }
        if (P.leq(i, j)) {
          if (!Q.leq(v, assign[j])) return true;
          if (mode_ == HomMode::strict && j != i && !P.leq(j, i) && assign[j] == v)
            return true;
        }
      }
      assign[i] = v;
      if (injective_) used[v] = true;
      bool go_on = rec(i + 1);
      if (injective_) used[v] = false;
      return go_on;
    };
    if (restricted_[i]) {
      for (uint32_t v : *restricted_[i])
        if (!try_value(v)) return false;
    } else {
      for (uint32_t v = 0; v < Q.size(); ++v)
        if (!try_value(v)) return false;
    }
    return true;
  };
  rec(0);
  return completed;
}

std::optional<MonotoneMap> MapSearch::first() const {
  std::optional<MonotoneMap> out;
  for_each([&](const MonotoneMap& m) {
    out = m;
    return false;
  });
  return out;
}

std::vector<MonotoneMap> MapSearch::all() const {
  std::vector<MonotoneMap> out;
  for_each([&](const MonotoneMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

uint64_t MapSearch::count() const {
  uint64_t n = 0;
  for_each([&](const MonotoneMap&) {
    ++n;
    return true;
  });
  return n;
}

bool for_each_map(PosetPtr src, PosetPtr tgt, HomMode mode,
                  const std::function<bool(const MonotoneMap&)>& fn) {
  return MapSearch(std::move(src), std::move(tgt), mode).for_each(fn);
}

std::vector<MonotoneMap> enumerate_maps(PosetPtr src, PosetPtr tgt, HomMode mode) {
  return MapSearch(std::move(src), std::move(tgt), mode).all();
}

uint64_t count_maps(PosetPtr src, PosetPtr tgt, HomMode mode) {
  return MapSearch(std::move(src), std::move(tgt), mode).count();
}

} // namespace posloc
