#pragma once

#include <optional>
#include <vector>

#include "posloc/homsearch.hpp"
#include "posloc/poset.hpp"

namespace posloc {

/// A commutative square: left leg i: A->B, right leg p: X->Y, top: A->X,
/// bottom: B->Y with p∘top = bottom∘i. Checked on construction.
struct LiftingProblem {
  MonotoneMap left, right, top, bottom;
  static LiftingProblem make(MonotoneMap i, MonotoneMap p, MonotoneMap top,
                             MonotoneMap bottom);
};

/// First lift g: B->X with g∘i = top and p∘g = bottom, in lexicographic
/// order over assignment vectors; nullopt only after exhausting all
/// candidates in the given hom mode.
std::optional<MonotoneMap> find_lift(const LiftingProblem& sq,
                                     HomMode mode = HomMode::monotone);

/// A finite set of generating maps. Sources and targets are put into
/// canonical form on construction; exact duplicates are dropped.
struct GeneratorSet {
  std::vector<MonotoneMap> maps;

  GeneratorSet() = default;
  explicit GeneratorSet(const std::vector<MonotoneMap>& raw);
  bool empty() const { return maps.empty(); }
  std::size_t size() const { return maps.size(); }
};

struct InjResult {
  bool ok = false;
  std::optional<LiftingProblem> witness;  // first square with no lift
  explicit operator bool() const { return ok; }
};

/// Does p have the right lifting property against every generator?
/// Squares are enumerated deterministically (generator, top, bottom); the
/// witness is the first failing square.
InjResult in_inj(const MonotoneMap& p, const GeneratorSet& gens,
                 HomMode mode = HomMode::monotone);

/// Enumerates the commuting squares (top, bottom) from generator k to p and
/// calls fn; fn returns false to stop early. Returns true if it ran to the end.
bool for_each_square(const MonotoneMap& k, const MonotoneMap& p, HomMode mode,
                     const std::function<bool(const MonotoneMap& top,
                                              const MonotoneMap& bottom)>& fn);

/// Exhaustive search for a retract presentation of f through g: maps
/// s1,r1,s2,r2 with two commuting squares and r∘s = id on both ends.
bool is_retract(const MonotoneMap& f, const MonotoneMap& g);

/// in_inj on the unique map to the one-point poset.
InjResult is_fibrant(PosetPtr x, const GeneratorSet& gens,
                     HomMode mode = HomMode::monotone);

} // namespace posloc
