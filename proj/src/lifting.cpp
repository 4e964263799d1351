#include "posloc/lifting.hpp"

#include <set>

#include "posloc/errors.hpp"

namespace posloc {

LiftingProblem LiftingProblem::make(MonotoneMap i, MonotoneMap p, MonotoneMap top,
                                    MonotoneMap bottom) {
  if (!(*top.src == *i.src) || !(*top.tgt == *p.src) || !(*bottom.src == *i.tgt) ||
      !(*bottom.tgt == *p.tgt))
    throw SourceTargetMismatch("lifting problem: legs do not fit");
  for (std::size_t a = 0; a < i.src->size(); ++a)
    if (p.assign[top.assign[a]] != bottom.assign[i.assign[a]])
      throw SourceTargetMismatch("lifting problem: square does not commute");
  return LiftingProblem{std::move(i), std::move(p), std::move(top), std::move(bottom)};
}

std::optional<MonotoneMap> find_lift(const LiftingProblem& sq, HomMode mode) {
  const MonotoneMap& i = sq.left;
  const MonotoneMap& p = sq.right;
  MapSearch search(i.tgt, p.src, mode);
  // g∘i = top pins g on the image of i; inconsistent pins mean no lift.
  std::vector<std::optional<uint32_t>> pin(i.tgt->size());
  for (std::size_t a = 0; a < i.src->size(); ++a) {
    std::size_t b = i.assign[a];
    if (pin[b] && *pin[b] != sq.top.assign[a]) return std::nullopt;
    pin[b] = sq.top.assign[a];
  }
  for (std::size_t b = 0; b < i.tgt->size(); ++b)
    if (pin[b]) search.fix(b, *pin[b]);
  // p∘g = bottom restricts every element to a fibre of p.
  std::vector<std::vector<uint32_t>> fibre(p.tgt->size());
  for (std::size_t m = 0; m < p.src->size(); ++m)
    fibre[p.assign[m]].push_back(static_cast<uint32_t>(m));
  for (std::size_t b = 0; b < i.tgt->size(); ++b)
    search.restrict_to(b, fibre[sq.bottom.assign[b]]);
  return search.first();
}

GeneratorSet::GeneratorSet(const std::vector<MonotoneMap>& raw) {
  for (const auto& m : raw) {
    auto cs = canonical_form_full(*m.src);
    auto ct = canonical_form_full(*m.tgt);
    std::vector<uint32_t> a(m.assign.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[cs.perm[i]] = ct.perm[m.assign[i]];
    MonotoneMap canon{make_poset(std::move(cs.poset)), make_poset(std::move(ct.poset)),
                      std::move(a)};
    bool dup = false;
    for (const auto& e : maps)
      if (e == canon) { dup = true; break; }
    if (!dup) maps.push_back(std::move(canon));
  }
}

bool for_each_square(const MonotoneMap& k, const MonotoneMap& p, HomMode mode,
                     const std::function<bool(const MonotoneMap&,
                                              const MonotoneMap&)>& fn) {
  bool completed = true;
  for_each_map(k.src, p.src, mode, [&](const MonotoneMap& top) {
    // bottom: cod(k) -> cod(p) with bottom∘k = p∘top; pinned on im(k).
    MapSearch bsearch(k.tgt, p.tgt, mode);
    bool consistent = true;
    std::vector<std::optional<uint32_t>> pin(k.tgt->size());
    for (std::size_t a = 0; a < k.src->size() && consistent; ++a) {
      std::size_t b = k.assign[a];
      uint32_t v = p.assign[top.assign[a]];
      if (pin[b] && *pin[b] != v) consistent = false;
      pin[b] = v;
    }
    if (!consistent) return true;
    for (std::size_t b = 0; b < k.tgt->size(); ++b)
      if (pin[b]) bsearch.fix(b, *pin[b]);
    bool keep_going = bsearch.for_each([&](const MonotoneMap& bottom) {
      if (!fn(top, bottom)) {
        completed = false;
        return false;
      }
      return true;
    });
    return keep_going;
  });
  return completed;
}

InjResult in_inj(const MonotoneMap& p, const GeneratorSet& gens, HomMode mode) {
  for (const auto& k : gens.maps) {
    InjResult fail;
    bool ok = for_each_square(k, p, mode, [&](const MonotoneMap& top,
                                              const MonotoneMap& bottom) {
      LiftingProblem sq{k, p, top, bottom};
      if (!find_lift(sq, mode)) {
        fail.witness = sq;
        return false;
      }
      return true;
    });
    if (!ok) return fail;
  }
  return InjResult{true, std::nullopt};
}

bool is_retract(const MonotoneMap& f, const MonotoneMap& g) {
  // f: A -> B, g: C -> D; need s1: A->C, r1: C->A, s2: B->D, r2: D->B with
  // r1∘s1 = id_A, r2∘s2 = id_B, g∘s1 = s2∘f, f∘r1 = r2∘g.
  auto A = f.src; auto B = f.tgt; auto C = g.src; auto D = g.tgt;
  auto s1s = enumerate_maps(A, C, HomMode::monotone);
  auto s2s = enumerate_maps(B, D, HomMode::monotone);
  auto r1s = enumerate_maps(C, A, HomMode::monotone);
  auto r2s = enumerate_maps(D, B, HomMode::monotone);
  for (const auto& s1 : s1s)
    for (const auto& s2 : s2s) {
      if (!(compose(g, s1) == compose(s2, f))) continue;
      for (const auto& r1 : r1s) {
        if (!compose(r1, s1).is_identity()) continue;
        for (const auto& r2 : r2s) {
          if (!compose(r2, s2).is_identity()) continue;
          if (compose(f, r1) == compose(r2, g)) return true;
        }
      }
    }
  return false;
}

InjResult is_fibrant(PosetPtr x, const GeneratorSet& gens, HomMode mode) {
  auto terminal = make_poset(FinPoset::point());
  return in_inj(unique_to_terminal(std::move(x), terminal), gens, mode);
}

} // namespace posloc
