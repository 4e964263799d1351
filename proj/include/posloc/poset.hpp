#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posloc/bits.hpp"

namespace posloc {

class FinPoset;
using PosetPtr = std::shared_ptr<const FinPoset>;

struct BoundednessCertificate {
  std::size_t bottom;
  std::size_t top;
};

/// A finite poset: labelled elements and a reflexive, antisymmetric,
/// transitive relation stored as bit rows (both directions).
class FinPoset {
public:
  /// Builds from covering (or any) pairs; the order is the
  /// reflexive-transitive closure. Throws InvalidPoset on a cycle or on
  /// duplicate labels.
  static FinPoset from_covers(std::vector<std::string> labels,
                              const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  /// Builds from a full relation matrix; validates the poset axioms.
  static FinPoset from_relation(std::vector<std::string> labels, BitMatrix leq);

  static FinPoset chain(std::size_t n);      // 0 < 1 < ... < n-1
  static FinPoset antichain(std::size_t n);
  static FinPoset point() { return antichain(1); }
  static FinPoset empty() { return antichain(0); }

  std::size_t size() const { return labels_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return up_.get(a, b); }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Row i = { j : i <= j } as a bit set.
  const uint64_t* up_row(std::size_t i) const { return up_.row(i); }
  /// Row i = { j : j <= i } as a bit set.
  const uint64_t* down_row(std::size_t i) const { return down_.row(i); }
  std::size_t words_per_row() const { return up_.words_per_row(); }

  /// Covering pairs a < b with nothing strictly between, in index order.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  std::optional<BoundednessCertificate> bounded() const;

  bool operator==(const FinPoset& o) const {
    return labels_ == o.labels_ && up_ == o.up_;
  }

  /// Stable printable encoding of the structure (labels + relation bits);
  /// equal iff the posets are equal. Used as a hash/cache key.
  std::string encoding() const;

  /// Encoding of the unlabelled structure only (size + relation bits).
  std::string shape_encoding() const;

private:
  FinPoset() = default;
  std::vector<std::string> labels_;
  BitMatrix up_, down_;
};

PosetPtr make_poset(FinPoset p);

/// A monotone map between finite posets. `assign[i]` is the image of
/// element i. Monotonicity is validated on construction.
struct MonotoneMap {
  PosetPtr src, tgt;
  std::vector<uint32_t> assign;

  std::size_t operator()(std::size_t i) const { return assign[i]; }
  bool is_identity() const;
  bool is_injective() const;
  /// x < y implies f(x) < f(y).
  bool is_strict() const;
  bool is_isomorphism() const;

  bool operator==(const MonotoneMap& o) const {
    return *src == *o.src && *tgt == *o.tgt && assign == o.assign;
  }
};

MonotoneMap make_map(PosetPtr src, PosetPtr tgt, std::vector<uint32_t> assign);
MonotoneMap identity_map(PosetPtr p);
MonotoneMap unique_to_terminal(PosetPtr p, PosetPtr terminal);

/// Composition written f∘g : source of f must equal target of g.
MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g);

struct Product {
  PosetPtr object;          // elements (a,b), index a*|Q|+b
  MonotoneMap proj1, proj2;
  /// The pairing <u,v> : R -> P×Q for u: R->P, v: R->Q.
  MonotoneMap pair(const MonotoneMap& u, const MonotoneMap& v) const;
  /// The swap (a,b) -> (b,a); only for P = Q.
  MonotoneMap swap() const;
};
Product product(PosetPtr p, PosetPtr q);

struct Coproduct {
  PosetPtr object;
  std::vector<MonotoneMap> in;
  /// Copairing of maps legs[k] : block k -> R.
  MonotoneMap copair(const std::vector<MonotoneMap>& legs) const;
};
Coproduct coproduct(const std::vector<PosetPtr>& blocks);

struct PushoutResult {
  PosetPtr object;
  MonotoneMap inl;  // from target of f
  MonotoneMap inr;  // from target of g
  /// Mediating map for a cocone (u from tgt f, v from tgt g).
  MonotoneMap mediate(const MonotoneMap& u, const MonotoneMap& v) const;
};

/// Pushout of f: A->B, g: A->C. Computed as the set-level pushout, the
/// preorder generated by both images, then the antisymmetric quotient
/// collapsing strongly connected components. Total: cycles collapse
/// rather than fail.
PushoutResult pushout(const MonotoneMap& f, const MonotoneMap& g);

struct SequentialColimit {
  PosetPtr object;
  std::vector<MonotoneMap> injections;  // from each chain object incl. last
};
/// Colimit of a composable finite chain; the last object with composite
/// injections. Throws EmptyChain.
SequentialColimit sequential_colimit(const std::vector<MonotoneMap>& chain);

struct CanonicalForm {
  FinPoset poset;               // labels "0","1",...
  std::vector<uint32_t> perm;   // perm[old index] = new index
};

/// Canonical relabelling: isomorphic posets yield identical encodings.
/// Rank by (height, cover in-degree, cover out-degree) refined by
/// neighbour colours, then minimise the relation matrix lexicographically
/// over the remaining permutations.
CanonicalForm canonical_form_full(const FinPoset& p);
FinPoset canonical_form(const FinPoset& p);

/// All order-automorphisms of p, as permutation vectors, lexicographic.
std::vector<std::vector<uint32_t>> automorphisms(const FinPoset& p);

} // namespace posloc
