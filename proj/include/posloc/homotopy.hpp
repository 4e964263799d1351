#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "posloc/factorize.hpp"

namespace posloc {

/// The factorization of the diagonal Y -> Y×Y: an attachment stage complex
/// into the total object followed by a map verified against the generators
/// when converged. Downstream operations refuse non-converged path objects.
struct PathObject {
  PosetPtr base, total;
  MonotoneMap into;    // base -> total, staged cell complex
  MonotoneMap outof;   // total -> base×base
  Product base_square; // base×base with projections
  Factorization fact;
  bool converged = false;
  /// The lift exchanging the two projections (used by swap_witness);
  /// computed once per converged path object.
  std::optional<MonotoneMap> swap_lift;
};

PathObject path_object(PosetPtr y, const GeneratorSet& gens,
                       std::size_t stage_bound = kDefaultStageBound,
                       HomMode mode = HomMode::monotone,
                       StagePolicy policy = StagePolicy::all_at_once,
                       std::size_t element_guard = kDefaultElementGuard);

struct HomotopyWitness {
  MonotoneMap from, to;  // the two maps X -> base
  MonotoneMap h;         // X -> total with outof∘h = (from, to)
};

/// First witness in lexicographic order, or nullopt after exhausting all
/// candidates. For from == to the canonical reflexive witness into∘f is
/// returned directly.
std::optional<HomotopyWitness> right_homotopic(const MonotoneMap& f,
                                               const MonotoneMap& g,
                                               const PathObject& po);

/// Converts a witness from f to g into one from g to f via the cached
/// projection-exchange lift.
HomotopyWitness swap_witness(const HomotopyWitness& w, const PathObject& po);

struct WitnessEdge {
  std::size_t from, to;  // indices into maps
  HomotopyWitness witness;
};

/// The hom-set between two objects partitioned by the transitive closure of
/// the right-homotopy relation, with replayable witness edges.
struct CongruenceTable {
  PosetPtr dom, cod;
  std::vector<MonotoneMap> maps;       // the full hom-set, lexicographic
  std::vector<std::size_t> class_of;   // per map
  std::size_t class_count = 0;
  std::vector<WitnessEdge> edges;

  std::optional<std::size_t> index_of(const MonotoneMap& m) const;
  std::vector<std::size_t> members(std::size_t cls) const;
  /// Witness edges forming a path between two maps of one class (edges may
  /// need swapping when traversed backwards).
  std::vector<WitnessEdge> witness_chain(std::size_t i, std::size_t j) const;
};

CongruenceTable homotopy_congruence(PosetPtr x, PosetPtr y, const GeneratorSet& gens,
                                    std::size_t stage_bound = kDefaultStageBound,
                                    HomMode mode = HomMode::monotone,
                                    StagePolicy policy = StagePolicy::all_at_once);

/// Shared engine state: one generator set, one hom mode, memoised path
/// objects and congruence tables.
class HomotopyContext {
public:
  HomotopyContext(GeneratorSet gens, std::size_t stage_bound = kDefaultStageBound,
                  HomMode mode = HomMode::monotone,
                  StagePolicy policy = StagePolicy::all_at_once,
                  std::size_t element_guard = kDefaultElementGuard)
      : gens_(std::move(gens)), stage_bound_(stage_bound), mode_(mode),
        policy_(policy), guard_(element_guard) {}

  const GeneratorSet& gens() const { return gens_; }
  HomMode mode() const { return mode_; }
  std::size_t stage_bound() const { return stage_bound_; }

  const PathObject& path_obj(PosetPtr y);
  const CongruenceTable& table(PosetPtr x, PosetPtr y);

private:
  GeneratorSet gens_;
  std::size_t stage_bound_;
  HomMode mode_;
  StagePolicy policy_;
  std::size_t guard_;
  std::map<std::string, std::shared_ptr<PathObject>> path_cache_;
  std::map<std::pair<std::string, std::string>, std::shared_ptr<CongruenceTable>> table_cache_;
};

struct CongruenceViolation {
  MonotoneMap f, g;    // homotopic pair
  MonotoneMap u, v;    // post- and pre-composed maps
  bool u_side = false; // which side failed
};

/// Checks that composition with u (after) and v (before) descends to the
/// classes of the table. A violation would signal an engine bug.
bool congruence_respects_composition(const CongruenceTable& table,
                                     const MonotoneMap& u, const MonotoneMap& v,
                                     HomotopyContext& ctx,
                                     std::optional<CongruenceViolation>* out = nullptr);

/// The factorization of the unique map X -> 1.
Factorization fibrant_replacement(PosetPtr x, const GeneratorSet& gens,
                                  std::size_t stage_bound = kDefaultStageBound,
                                  HomMode mode = HomMode::monotone,
                                  StagePolicy policy = StagePolicy::all_at_once,
                                  std::size_t element_guard = kDefaultElementGuard);

struct HalfInverse {
  MonotoneMap g;            // g∘f = id on the nose
  HomotopyWitness witness;  // right homotopy from f∘g to id
};

/// For f in the left class with fibrant source: g with g∘f = id and a
/// witness for (f∘g, id). Throws LiftNotFound when the preconditions were
/// not actually met, PathObjectNotConverged when the target's path object
/// cannot be completed.
HalfInverse half_inverse(const MonotoneMap& f, HomotopyContext& ctx);

/// The stage-indexed fibrant replacement applied to a map f with a cell
/// certificate. Runs both replacements in lockstep for exactly `stages`
/// attachment stages, computes the induced map between the stage objects,
/// and assembles its cell certificate: f's certificate pushed forward
/// through the source stages followed by one stage per level attaching the
/// target's extra squares.
struct ReplacementMap {
  Factorization on_source;      // stages over dom f
  Factorization on_target;      // stages over cod f
  MonotoneMap induced;          // R_s(dom f) -> R_s(cod f)
  CellCertificate certificate;  // for the induced map
};

ReplacementMap fibrant_replacement_map(const MonotoneMap& f,
                                       const CellCertificate& f_cert,
                                       const GeneratorSet& gens, std::size_t stages,
                                       HomMode mode = HomMode::monotone,
                                       std::size_t element_guard = kDefaultElementGuard);

/// The induced map between converged fibrant replacements of both endpoints
/// of an arbitrary map (no certificate; used by Whitehead-class membership).
/// Throws ReplacementNotConverged when either side fails to converge within
/// the bound.
MonotoneMap replacement_of_map(const MonotoneMap& f, const GeneratorSet& gens,
                               std::size_t stage_bound, HomMode mode,
                               Factorization* src_fact = nullptr,
                               Factorization* tgt_fact = nullptr);

} // namespace posloc
