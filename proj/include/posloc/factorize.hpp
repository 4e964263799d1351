#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "posloc/lifting.hpp"

namespace posloc {

/// One attaching square of a cell stage: generator index plus the attaching
/// maps, stored as raw assignment vectors (top into the current object,
/// bottom into the factorization target).
struct AttachSquare {
  uint32_t gen;
  std::vector<uint32_t> top;
  std::vector<uint32_t> bottom;

  bool operator==(const AttachSquare& o) const {
    return gen == o.gen && top == o.top && bottom == o.bottom;
  }
  bool operator<(const AttachSquare& o) const {
    if (gen != o.gen) return gen < o.gen;
    if (top != o.top) return top < o.top;
    return bottom < o.bottom;
  }
};

/// One stage of a relative cell complex: the squares attached all at once
/// by a pushout of a coproduct, and the resulting stage map.
struct Stage {
  std::vector<AttachSquare> squares;
  MonotoneMap step;  // X_l -> X_{l+1}
};

enum class StagePolicy { all_at_once, one_at_a_time };

inline constexpr std::size_t kDefaultStageBound = 8;
inline constexpr std::size_t kDefaultElementGuard = 1500;

struct Factorization {
  MonotoneMap source_map;        // the factored map f
  MonotoneMap alpha;             // staged cell complex
  MonotoneMap beta;              // remaining map; in inj(gens) when converged
  std::vector<Stage> stages;
  bool converged = false;
  bool element_guard_hit = false;
  std::size_t stages_used() const { return stages.size(); }
  PosetPtr middle() const { return alpha.tgt; }
};

/// The bounded small object argument. At each stage every outstanding
/// commutative square from the generators into the current map is attached
/// at once by a pushout of the coproduct of their sources; squares already
/// attached at an earlier stage are re-detected (pushed forward along the
/// stage maps) and skipped. Stops as soon as the remaining map passes
/// in_inj, when stage_bound is reached, or when the next stage would push
/// the object past element_guard (reported as element_guard_hit, with the
/// partial certificate).
Factorization small_object_factorize(const MonotoneMap& f, const GeneratorSet& gens,
                                     std::size_t stage_bound = kDefaultStageBound,
                                     HomMode mode = HomMode::monotone,
                                     StagePolicy policy = StagePolicy::all_at_once,
                                     std::size_t element_guard = kDefaultElementGuard);

/// Variant that runs exactly `stages` attachment stages without the
/// convergence early-stop (the stage-indexed functor used for induced maps
/// between replacements).
Factorization small_object_run_stages(const MonotoneMap& f, const GeneratorSet& gens,
                                      std::size_t stages, HomMode mode,
                                      std::size_t element_guard = kDefaultElementGuard);

struct ReplayResult {
  std::vector<PosetPtr> objects;  // X_0, X_1, ..., X_n
  MonotoneMap alpha;              // X_0 -> X_n composite
  std::optional<MonotoneMap> beta;
};

/// Rebuilds the staged pushouts from the recorded squares. Deterministic:
/// replaying a certificate produced by this module reconstructs the same
/// objects and maps bit for bit. If `target` is given, the remaining map is
/// rebuilt from the recorded bottoms as well.
ReplayResult replay_stages(PosetPtr base, const std::vector<Stage>& stages,
                           const GeneratorSet& gens,
                           std::optional<MonotoneMap> base_beta = std::nullopt);

/// A certified relative cell complex presentation of a map: stages replayed
/// from `source`, then a recorded isomorphism onto the target. The certified
/// map is final_iso ∘ (stage composite).
struct CellCertificate {
  PosetPtr source;
  std::vector<Stage> stages;
  MonotoneMap final_iso;

  /// final_iso ∘ (replayed stage composite).
  MonotoneMap certified_map(const GeneratorSet& gens) const;
};

CellCertificate certificate_of_alpha(const Factorization& f);

/// Bounded certified search for a cell presentation of f: at most `bound`
/// single-square stages. nullopt does not prove non-membership.
std::optional<CellCertificate> in_cell_certified(const MonotoneMap& f,
                                                 const GeneratorSet& gens,
                                                 std::size_t bound,
                                                 HomMode mode = HomMode::monotone);

/// Attaches the given squares to x by one pushout of a coproduct.
PushoutResult attach_squares(PosetPtr x, const std::vector<AttachSquare>& squares,
                             const GeneratorSet& gens);

} // namespace posloc
