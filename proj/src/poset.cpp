#include "posloc/poset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "posloc/errors.hpp"

namespace posloc {

namespace {

void check_labels(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw InvalidPoset("duplicate element label '" + l + "'");
}

// Reflexive-transitive closure of an arbitrary relation, in place.
void close(BitMatrix& m) {
  std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  // Warshall over bit rows.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m.get(i, k)) {
        uint64_t* ri = m.row(i);
        const uint64_t* rk = m.row(k);
        for (std::size_t w = 0; w < m.words_per_row(); ++w) ri[w] |= rk[w];
      }
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) t.set(j, i);
  return t;
}

} // namespace

FinPoset FinPoset::from_covers(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  check_labels(labels);
  std::size_t n = labels.size();
  BitMatrix up(n, n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw InvalidPoset("relation index out of range");
    up.set(a, b);
  }
  close(up);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (up.get(i, j) && up.get(j, i))
        throw InvalidPoset("relation closure has a cycle through '" +
                           labels[i] + "' and '" + labels[j] + "'");
  FinPoset p;
  p.labels_ = std::move(labels);
  p.down_ = transpose(up);
  p.up_ = std::move(up);
  return p;
}

FinPoset FinPoset::from_relation(std::vector<std::string> labels, BitMatrix leq) {
  check_labels(labels);
  std::size_t n = labels.size();
  if (leq.rows() != n || leq.cols() != n)
    throw InvalidPoset("relation matrix size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq.get(i, i)) throw InvalidPoset("relation not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq.get(i, j) && leq.get(j, i))
        throw InvalidPoset("relation not antisymmetric");
      if (leq.get(i, j) && !leq.row_subset(j, i))
        throw InvalidPoset("relation not transitive");
    }
  }
  FinPoset p;
  p.labels_ = std::move(labels);
  p.down_ = transpose(leq);
  p.up_ = std::move(leq);
  return p;
}

FinPoset FinPoset::chain(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    if (i + 1 < n) pairs.emplace_back(i, i + 1);
  }
  return from_covers(std::move(labels), pairs);
}

FinPoset FinPoset::antichain(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return from_covers(std::move(labels), {});
}

std::optional<std::size_t> FinPoset::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> FinPoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

std::optional<BoundednessCertificate> FinPoset::bounded() const {
  std::size_t n = size();
  std::optional<std::size_t> bot, top;
  for (std::size_t i = 0; i < n; ++i) {
    bool is_bot = true, is_top = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq(i, j)) is_bot = false;
      if (!leq(j, i)) is_top = false;
    }
    if (is_bot) bot = i;
    if (is_top) top = i;
  }
  if (bot && top && *bot != *top) return BoundednessCertificate{*bot, *top};
  return std::nullopt;
}

std::string FinPoset::encoding() const {
  std::string s = shape_encoding();
  s += '|';
  for (const auto& l : labels_) {
    s += l;
    s += ';';
  }
  return s;
}

std::string FinPoset::shape_encoding() const {
  std::size_t n = size();
  std::string s = std::to_string(n);
  s += ':';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += leq(i, j) ? '1' : '0';
  return s;
}

PosetPtr make_poset(FinPoset p) {
  return std::make_shared<const FinPoset>(std::move(p));
}

bool MonotoneMap::is_identity() const {
  if (!(*src == *tgt)) return false;
  for (std::size_t i = 0; i < assign.size(); ++i)
    if (assign[i] != i) return false;
  return true;
}

bool MonotoneMap::is_injective() const {
  std::vector<bool> seen(tgt->size(), false);
  for (auto v : assign) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool MonotoneMap::is_strict() const {
  std::size_t n = src->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && src->leq(a, b) && assign[a] == assign[b]) return false;
  return true;
}

bool MonotoneMap::is_isomorphism() const {
  if (src->size() != tgt->size() || !is_injective()) return false;
  std::size_t n = src->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (tgt->leq(assign[a], assign[b]) != src->leq(a, b)) return false;
  return true;
}

MonotoneMap make_map(PosetPtr src, PosetPtr tgt, std::vector<uint32_t> assign) {
  if (assign.size() != src->size())
    throw InvalidMap("assignment size does not match source");
  std::size_t n = src->size();
  for (auto v : assign)
    if (v >= tgt->size()) throw InvalidMap("assignment value out of range");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (src->leq(a, b) && !tgt->leq(assign[a], assign[b]))
        throw InvalidMap("assignment is not monotone: " + src->label(a) +
                         " <= " + src->label(b) + " but images are unrelated");
  return MonotoneMap{std::move(src), std::move(tgt), std::move(assign)};
}

MonotoneMap identity_map(PosetPtr p) {
  std::vector<uint32_t> a(p->size());
  std::iota(a.begin(), a.end(), 0);
  return MonotoneMap{p, p, std::move(a)};
}

MonotoneMap unique_to_terminal(PosetPtr p, PosetPtr terminal) {
  if (terminal->size() != 1) throw InvalidMap("terminal object must be a point");
  std::vector<uint32_t> a(p->size(), 0);
  return MonotoneMap{std::move(p), std::move(terminal), std::move(a)};
}

MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
  if (!(*g.tgt == *f.src))
    throw SourceTargetMismatch("compose: target of g must equal source of f");
  std::vector<uint32_t> a(g.assign.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.assign[g.assign[i]];
  return MonotoneMap{g.src, f.tgt, std::move(a)};
}

Product product(PosetPtr p, PosetPtr q) {
  std::size_t np = p->size(), nq = q->size(), n = np * nq;
  std::vector<std::string> labels(n);
  BitMatrix leq(n, n);
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < nq; ++b) {
      labels[a * nq + b] = "(" + p->label(a) + "," + q->label(b) + ")";
      for (std::size_t c = 0; c < np; ++c)
        for (std::size_t d = 0; d < nq; ++d)
          if (p->leq(a, c) && q->leq(b, d)) leq.set(a * nq + b, c * nq + d);
    }
  auto obj = make_poset(FinPoset::from_relation(std::move(labels), std::move(leq)));
  std::vector<uint32_t> a1(n), a2(n);
  for (std::size_t i = 0; i < n; ++i) {
    a1[i] = static_cast<uint32_t>(i / nq);
    a2[i] = static_cast<uint32_t>(i % nq);
  }
  return Product{obj, MonotoneMap{obj, p, std::move(a1)},
                 MonotoneMap{obj, q, std::move(a2)}};
}

MonotoneMap Product::pair(const MonotoneMap& u, const MonotoneMap& v) const {
  if (!(*u.src == *v.src)) throw SourceTargetMismatch("pair: sources differ");
  if (!(*u.tgt == *proj1.tgt) || !(*v.tgt == *proj2.tgt))
    throw SourceTargetMismatch("pair: targets do not match the product");
  std::size_t nq = proj2.tgt->size();
  std::vector<uint32_t> a(u.assign.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = static_cast<uint32_t>(u.assign[i] * nq + v.assign[i]);
  return MonotoneMap{u.src, object, std::move(a)};
}

MonotoneMap Product::swap() const {
  if (!(*proj1.tgt == *proj2.tgt))
    throw SourceTargetMismatch("swap: product factors differ");
  std::size_t nq = proj2.tgt->size();
  std::vector<uint32_t> a(object->size());
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = static_cast<uint32_t>((i % nq) * nq + i / nq);
  return MonotoneMap{object, object, std::move(a)};
}

Coproduct coproduct(const std::vector<PosetPtr>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b->size();
  std::vector<std::string> labels;
  labels.reserve(n);
  BitMatrix leq(n, n);
  std::vector<std::size_t> offset(blocks.size());
  std::size_t at = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    offset[k] = at;
    for (std::size_t i = 0; i < blocks[k]->size(); ++i)
      labels.push_back(std::to_string(k) + "." + blocks[k]->label(i));
    for (std::size_t i = 0; i < blocks[k]->size(); ++i)
      for (std::size_t j = 0; j < blocks[k]->size(); ++j)
        if (blocks[k]->leq(i, j)) leq.set(at + i, at + j);
    at += blocks[k]->size();
  }
  auto obj = make_poset(FinPoset::from_relation(std::move(labels), std::move(leq)));
  Coproduct cp;
  cp.object = obj;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    std::vector<uint32_t> a(blocks[k]->size());
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = static_cast<uint32_t>(offset[k] + i);
    cp.in.push_back(MonotoneMap{blocks[k], obj, std::move(a)});
  }
  return cp;
}

MonotoneMap Coproduct::copair(const std::vector<MonotoneMap>& legs) const {
  if (legs.size() != in.size())
    throw SourceTargetMismatch("copair: wrong number of legs");
  if (legs.empty()) throw SourceTargetMismatch("copair: empty coproduct needs a target");
  std::vector<uint32_t> a(object->size());
  for (std::size_t k = 0; k < legs.size(); ++k) {
    if (!(*legs[k].src == *in[k].src))
      throw SourceTargetMismatch("copair: leg source mismatch");
    for (std::size_t i = 0; i < legs[k].assign.size(); ++i)
      a[in[k].assign[i]] = legs[k].assign[i];
  }
  return make_map(object, legs[0].tgt, std::move(a));
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);  // keep smallest index
  }
};

// Deterministic fresh-label pick: the candidate, with primes appended
// until it is unused.
std::string fresh_label(std::string candidate, std::set<std::string>& used) {
  while (used.count(candidate)) candidate += "'";
  used.insert(candidate);
  return candidate;
}

} // namespace

PushoutResult pushout(const MonotoneMap& f, const MonotoneMap& g) {
  if (!(*f.src == *g.src)) throw SourceTargetMismatch("pushout: legs must share a source");
  const FinPoset& B = *f.tgt;
  const FinPoset& C = *g.tgt;
  std::size_t nb = B.size(), nc = C.size(), n = nb + nc;

  // Set-level pushout.
  UnionFind uf(n);
  for (std::size_t a = 0; a < f.src->size(); ++a)
    uf.unite(f.assign[a], nb + g.assign[a]);

  // Preorder generated by the two images, on set-pushout classes.
  std::vector<std::size_t> rep(n);
  for (std::size_t i = 0; i < n; ++i) rep[i] = uf.find(i);
  BitMatrix reach(n, n);
  for (std::size_t i = 0; i < n; ++i) reach.set(rep[i], rep[i]);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      if (B.leq(i, j)) reach.set(rep[i], rep[j]);
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      if (C.leq(i, j)) reach.set(rep[nb + i], rep[nb + j]);
  close(reach);

  // Antisymmetric quotient: collapse strongly connected components.
  UnionFind scc(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[i] == i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rep[j] == j && reach.get(i, j) && reach.get(j, i)) scc.unite(i, j);

  std::vector<std::size_t> cls(n);
  std::vector<std::size_t> order;  // class reps in first-member order
  for (std::size_t i = 0; i < n; ++i) {
    cls[i] = scc.find(rep[i]);
    if (cls[i] == i) order.push_back(i);
  }
  std::vector<std::size_t> index(n, 0);
  for (std::size_t k = 0; k < order.size(); ++k) index[order[k]] = k;

  std::size_t m = order.size();
  // Labels: a class keeps the label of its smallest member; members from C
  // get fresh labels when they collide with kept B labels.
  std::set<std::string> used;
  std::vector<std::string> labels(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t r = order[k];
    labels[k] = r < nb ? B.label(r) : C.label(r - nb);
  }
  // Resolve collisions deterministically in class order.
  {
    std::set<std::string> seen;
    for (std::size_t k = 0; k < m; ++k) labels[k] = fresh_label(labels[k], seen);
  }

  BitMatrix leq(m, m);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[i] == i)
      for (std::size_t j = 0; j < n; ++j)
        if (rep[j] == j && reach.get(i, j)) leq.set(index[cls[i]], index[cls[j]]);

  auto obj = make_poset(FinPoset::from_relation(std::move(labels), std::move(leq)));
  std::vector<uint32_t> al(nb), ar(nc);
  for (std::size_t i = 0; i < nb; ++i) al[i] = static_cast<uint32_t>(index[cls[i]]);
  for (std::size_t i = 0; i < nc; ++i) ar[i] = static_cast<uint32_t>(index[cls[nb + i]]);
  return PushoutResult{obj, MonotoneMap{f.tgt, obj, std::move(al)},
                       MonotoneMap{g.tgt, obj, std::move(ar)}};
}

MonotoneMap PushoutResult::mediate(const MonotoneMap& u, const MonotoneMap& v) const {
  if (!(*u.tgt == *v.tgt)) throw SourceTargetMismatch("mediate: cocone targets differ");
  std::vector<uint32_t> a(object->size(), 0);
  std::vector<bool> set(object->size(), false);
  for (std::size_t i = 0; i < inl.assign.size(); ++i) {
    a[inl.assign[i]] = u.assign[i];
    set[inl.assign[i]] = true;
  }
  for (std::size_t i = 0; i < inr.assign.size(); ++i) {
    if (set[inr.assign[i]] && a[inr.assign[i]] != v.assign[i])
      throw SourceTargetMismatch("mediate: cocone does not commute");
    a[inr.assign[i]] = v.assign[i];
    set[inr.assign[i]] = true;
  }
  return make_map(object, u.tgt, std::move(a));
}

SequentialColimit sequential_colimit(const std::vector<MonotoneMap>& chain) {
  if (chain.empty()) throw EmptyChain("sequential_colimit of an empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!(*chain[i].tgt == *chain[i + 1].src))
      throw SourceTargetMismatch("sequential_colimit: chain is not composable");
  SequentialColimit out;
  out.object = chain.back().tgt;
  // Composite injections X_i -> colim, plus the identity of the last object.
  for (std::size_t i = 0; i < chain.size(); ++i) {
    MonotoneMap m = chain[i];
    for (std::size_t j = i + 1; j < chain.size(); ++j) m = compose(chain[j], m);
    out.injections.push_back(std::move(m));
  }
  out.injections.push_back(identity_map(out.object));
  return out;
}

namespace {

// Height of each element: longest chain strictly below.
std::vector<std::size_t> heights(const FinPoset& p) {
  std::size_t n = p.size();
  std::vector<std::size_t> h(n, 0);
  // Process in an order compatible with the relation.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    std::size_t da = 0, db = 0;
    for (std::size_t j = 0; j < n; ++j) {
      da += p.leq(j, a);
      db += p.leq(j, b);
    }
    return da < db;
  });
  for (std::size_t x : order)
    for (std::size_t y = 0; y < n; ++y)
      if (y != x && p.leq(y, x)) h[x] = std::max(h[x], h[y] + 1);
  return h;
}

} // namespace

CanonicalForm canonical_form_full(const FinPoset& p) {
  std::size_t n = p.size();
  if (n == 0) {
    return CanonicalForm{FinPoset::antichain(0), {}};
  }
  auto cov = p.covers();
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  for (auto [a, b] : cov) {
    outdeg[a]++;
    indeg[b]++;
  }
  auto h = heights(p);

  // Iterative colour refinement. Colour ids are ranks of the sorted
  // signature keys, so they are isomorphism-invariant.
  std::vector<std::size_t> colour(n);
  {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i)
      ids[std::make_tuple(h[i], indeg[i], outdeg[i])] = 0;
    std::size_t rank = 0;
    for (auto& [k, v] : ids) v = rank++;
    for (std::size_t i = 0; i < n; ++i)
      colour[i] = ids[std::make_tuple(h[i], indeg[i], outdeg[i])];
  }
  for (;;) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> sig;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (p.leq(i, j)) sig.push_back(2 * colour[j]);
        if (p.leq(j, i)) sig.push_back(2 * colour[j] + 1);
      }
      std::sort(sig.begin(), sig.end());
      keys[i] = {colour[i], std::move(sig)};
    }
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    for (const auto& k : keys) ids[k] = 0;
    std::size_t rank = 0;
    for (auto& [k, v] : ids) v = rank++;
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = ids[keys[i]];
    if (next == colour) break;
    colour = std::move(next);
  }

  // Minimal relation matrix over permutations ordered by colour. Cells are
  // compared in staircase order (all cells involving the first k positions
  // before any cell involving position k+1), so that prefix comparisons are
  // consistent under extension and admit branch-and-bound pruning.
  std::vector<std::size_t> best;  // best[pos] = old element at new pos
  std::vector<std::size_t> cur;
  std::vector<bool> usedel(n, false);

  auto cmp_staircase = [&](const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b, std::size_t len) {
    for (std::size_t k = 0; k < len; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        bool ra = p.leq(a[k], a[j]);
        bool rb = p.leq(b[k], b[j]);
        if (ra != rb) return ra ? -1 : 1;
        ra = p.leq(a[j], a[k]);
        rb = p.leq(b[j], b[k]);
        if (ra != rb) return ra ? -1 : 1;
      }
    }
    return 0;
  };

  std::function<void()> rec = [&]() {
    std::size_t pos = cur.size();
    if (pos == n) {
      if (best.empty() || cmp_staircase(cur, best, n) < 0) best = cur;
      return;
    }
    std::size_t mincol = SIZE_MAX;
    for (std::size_t i = 0; i < n; ++i)
      if (!usedel[i]) mincol = std::min(mincol, colour[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (usedel[i] || colour[i] != mincol) continue;
      cur.push_back(i);
      usedel[i] = true;
      bool prune = false;
      if (!best.empty() && cmp_staircase(cur, best, cur.size()) > 0) prune = true;
      if (!prune) rec();
      usedel[i] = false;
      cur.pop_back();
    }
  };
  rec();

  std::vector<uint32_t> perm(n);
  for (std::size_t pos = 0; pos < n; ++pos) perm[best[pos]] = static_cast<uint32_t>(pos);
  std::vector<std::string> labels(n);
  BitMatrix leq(n, n);
  for (std::size_t pos = 0; pos < n; ++pos) labels[pos] = std::to_string(pos);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(i, j)) leq.set(perm[i], perm[j]);
  return CanonicalForm{FinPoset::from_relation(std::move(labels), std::move(leq)),
                       std::move(perm)};
}

FinPoset canonical_form(const FinPoset& p) { return canonical_form_full(p).poset; }

std::vector<std::vector<uint32_t>> automorphisms(const FinPoset& p) {
  std::size_t n = p.size();
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> cur(n, 0);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (p.leq(j, i) != p.leq(cur[j], v)) ok = false;
        if (p.leq(i, j) != p.leq(v, cur[j])) ok = false;
      }
      if (!ok) continue;
      cur[i] = static_cast<uint32_t>(v);
      used[v] = true;
      rec(i + 1);
      used[v] = false;
    }
  };
  rec(0);
  return out;
}

} // namespace posloc
