#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posloc/poset.hpp"

namespace posloc {

/// A word of composable generating arrows in diagram order.
using Word = std::vector<uint32_t>;

struct FlowArrow {
  std::string name;
  uint32_t src, tgt;
};

/// A finitely presented flow with discrete path sets: states, generating
/// arrows, and relations between parallel words. Presentations whose arrow
/// graph has a cycle are accepted but flagged cyclic; the operations that
/// would need an infinite path set raise LoopDetected.
class FlowPresentation {
public:
  FlowPresentation(std::vector<std::string> states, std::vector<FlowArrow> arrows,
                   std::vector<std::pair<Word, Word>> relations);

  std::size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<FlowArrow>& arrows() const { return arrows_; }
  const std::vector<std::pair<Word, Word>>& relations() const { return relations_; }
  std::optional<std::size_t> state_index(const std::string& name) const;
  std::optional<std::size_t> arrow_index(const std::string& name) const;

  bool cyclic() const { return cyclic_; }
  /// A cycle of state names when the presentation is cyclic.
  const std::vector<std::string>& cycle_witness() const { return cycle_; }

  uint32_t word_src(const Word& w) const { return arrows_[w.front()].src; }
  uint32_t word_tgt(const Word& w) const { return arrows_[w.back()].tgt; }

  bool operator==(const FlowPresentation& o) const {
    return states_ == o.states_ && arrows_equal(o) && relations_ == o.relations_;
  }

private:
  bool arrows_equal(const FlowPresentation& o) const;
  std::vector<std::string> states_;
  std::vector<FlowArrow> arrows_;
  std::vector<std::pair<Word, Word>> relations_;
  bool cyclic_ = false;
  std::vector<std::string> cycle_;
};

using FlowPtr = std::shared_ptr<const FlowPresentation>;
FlowPtr make_flow(FlowPresentation f);

/// The set of congruence classes of non-constant execution paths from a to b.
struct PathSet {
  uint32_t src, tgt;
  std::vector<Word> classes;        // canonical representatives, sorted
  std::vector<Word> words;          // every word, enumeration order
  std::vector<std::size_t> class_of;  // class index per word
  std::size_t class_count() const { return classes.size(); }
};

/// All generator words from a to b modulo the declared relations.
/// Raises LoopDetected when a cycle is reachable between a and b.
PathSet hom_paths(const FlowPresentation& x, uint32_t a, uint32_t b);

/// Tests whether two parallel words are congruent.
bool words_congruent(const FlowPresentation& x, const Word& u, const Word& v);

struct FlowMorphism {
  FlowPtr source, target;
  std::vector<uint32_t> state_map;
  std::vector<Word> path_map;  // image word per source generator

  Word word_image(const Word& w) const;
};

/// Validates endpoint compatibility, non-emptiness of image words, and
/// relation preservation (up to the target congruence).
FlowMorphism make_flow_morphism(FlowPtr src, FlowPtr tgt,
                                std::vector<uint32_t> state_map,
                                std::vector<Word> path_map);

FlowMorphism flow_identity(FlowPtr f);
FlowMorphism flow_compose(const FlowMorphism& f, const FlowMorphism& g);

/// A poset viewed as a flow: one state per element, one generating arrow per
/// covering pair, all parallel words identified.
FlowPresentation poset_to_flow(const FinPoset& p);

/// The flow morphism induced by a strictly increasing poset map.
FlowMorphism poset_map_to_flow(const MonotoneMap& f);

struct FlowPushout {
  FlowPtr object;
  FlowMorphism inl, inr;
};

/// Pushout of flow presentations along a shared source; loopless targets
/// required, and a gluing that creates a cycle raises LoopDetected with the
/// offending cycle.
FlowPushout flow_pushout(const FlowMorphism& f, const FlowMorphism& g);

/// Both state map and the induced maps on all path-class sets are bijections.
bool discrete_weq(const FlowMorphism& f);

} // namespace posloc
