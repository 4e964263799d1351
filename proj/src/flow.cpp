#include "posloc/flow.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "posloc/errors.hpp"

namespace posloc {

namespace {

// Finds a directed cycle in the arrow graph; returns the state names on it.
std::vector<std::string> find_cycle(const std::vector<std::string>& states,
                                    const std::vector<FlowArrow>& arrows) {
  std::size_t n = states.size();
  std::vector<int> state_col(n, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<std::size_t> stack;
  std::vector<std::string> cycle;
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) -> bool {
    state_col[v] = 1;
    stack.push_back(v);
    for (const auto& a : arrows) {
      if (a.src != v) continue;
      if (state_col[a.tgt] == 1) {
        auto it = std::find(stack.begin(), stack.end(), std::size_t{a.tgt});
        for (; it != stack.end(); ++it) cycle.push_back(states[*it]);
        return true;
      }
      if (state_col[a.tgt] == 0 && dfs(a.tgt)) return true;
    }
    state_col[v] = 2;
    stack.pop_back();
    return false;
  };
  for (std::size_t v = 0; v < n; ++v)
    if (state_col[v] == 0 && dfs(v)) return cycle;
  return {};
}

} // namespace

FlowPresentation::FlowPresentation(std::vector<std::string> states,
                                   std::vector<FlowArrow> arrows,
                                   std::vector<std::pair<Word, Word>> relations)
    : states_(std::move(states)), arrows_(std::move(arrows)),
      relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& s : states_)
    if (!seen.insert(s).second) throw InvalidFlow("duplicate state '" + s + "'");
  std::set<std::string> aseen;
  for (const auto& a : arrows_) {
    if (!aseen.insert(a.name).second)
      throw InvalidFlow("duplicate arrow '" + a.name + "'");
    if (a.src >= states_.size() || a.tgt >= states_.size())
      throw InvalidFlow("arrow endpoint out of range");
  }
  for (const auto& [u, v] : relations_) {
    if (u.empty() || v.empty())
      throw InvalidFlow("relation words must be non-empty");
    auto check_word = [&](const Word& w) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] >= arrows_.size()) throw InvalidFlow("relation arrow out of range");
        if (i + 1 < w.size() && arrows_[w[i]].tgt != arrows_[w[i + 1]].src)
          throw InvalidFlow("relation word is not composable");
      }
    };
    check_word(u);
    check_word(v);
    if (word_src(u) != word_src(v) || word_tgt(u) != word_tgt(v))
      throw InvalidFlow("relation words are not parallel");
  }
  cycle_ = find_cycle(states_, arrows_);
  cyclic_ = !cycle_.empty();
}

bool FlowPresentation::arrows_equal(const FlowPresentation& o) const {
  if (arrows_.size() != o.arrows_.size()) return false;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name != o.arrows_[i].name || arrows_[i].src != o.arrows_[i].src ||
        arrows_[i].tgt != o.arrows_[i].tgt)
      return false;
  return true;
}

std::optional<std::size_t> FlowPresentation::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> FlowPresentation::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return i;
  return std::nullopt;
}

FlowPtr make_flow(FlowPresentation f) {
  return std::make_shared<const FlowPresentation>(std::move(f));
}

namespace {

// Reachability over the arrow graph.
std::vector<bool> reachable_from(const FlowPresentation& x, uint32_t a) {
  std::vector<bool> r(x.state_count(), false);
  std::vector<uint32_t> todo = {a};
  r[a] = true;
  while (!todo.empty()) {
    uint32_t v = todo.back();
    todo.pop_back();
    for (const auto& e : x.arrows())
      if (e.src == v && !r[e.tgt]) {
        r[e.tgt] = true;
        todo.push_back(e.tgt);
      }
  }
  return r;
}

void ensure_finite_hom(const FlowPresentation& x, uint32_t a, uint32_t b) {
  if (!x.cyclic()) return;
  // Infinite exactly when some cycle state lies on an a ~> b route.
  auto from_a = reachable_from(x, a);
  for (uint32_t v = 0; v < x.state_count(); ++v) {
    if (!from_a[v]) continue;
    bool on_cycle = false;
    for (const auto& e : x.arrows())
      if (e.src == v && reachable_from(x, e.tgt)[v]) on_cycle = true;
    if (on_cycle && reachable_from(x, v)[b])
      throw LoopDetected("hom_paths(" + x.states()[a] + ", " + x.states()[b] +
                             "): a reachable cycle makes the path set infinite",
                         x.cycle_witness());
  }
}

struct WordUF {
  std::vector<std::size_t> parent;
  explicit WordUF(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace

PathSet hom_paths(const FlowPresentation& x, uint32_t a, uint32_t b) {
  if (a >= x.state_count() || b >= x.state_count())
    throw InvalidFlow("hom_paths: state out of range");
  ensure_finite_hom(x, a, b);

  // Enumerate all words a -> b (non-constant paths), arrows in index order.
  std::vector<Word> words;
  Word cur;
  std::function<void(uint32_t)> dfs = [&](uint32_t v) {
    if (v == b && !cur.empty()) words.push_back(cur);
    for (uint32_t e = 0; e < x.arrows().size(); ++e)
      if (x.arrows()[e].src == v) {
        cur.push_back(e);
        dfs(x.arrows()[e].tgt);
        cur.pop_back();
      }
  };
  dfs(a);

  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;

  // Congruence closure: apply each relation as a bidirectional rewrite at
  // every position of every word until stable.
  WordUF uf(words.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const Word& w = words[i];
      for (const auto& [u, v] : x.relations()) {
        for (const Word* lhs : {&u, &v}) {
          const Word& rhs = (lhs == &u) ? v : u;
          if (lhs->size() > w.size()) continue;
          for (std::size_t at = 0; at + lhs->size() <= w.size(); ++at) {
            if (!std::equal(lhs->begin(), lhs->end(), w.begin() + at)) continue;
            Word rewritten(w.begin(), w.begin() + at);
            rewritten.insert(rewritten.end(), rhs.begin(), rhs.end());
            rewritten.insert(rewritten.end(), w.begin() + at + lhs->size(), w.end());
            auto it = index.find(rewritten);
            if (it == index.end()) continue;
            if (uf.find(i) != uf.find(it->second)) {
              uf.unite(i, it->second);
              changed = true;
            }
          }
        }
      }
    }
  }

  PathSet out;
  out.src = a;
  out.tgt = b;
  out.words = words;
  out.class_of.resize(words.size());
  std::map<std::size_t, std::size_t> root_to_class;
  std::vector<Word> reps;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::size_t r = uf.find(i);
    auto it = root_to_class.find(r);
    if (it == root_to_class.end()) {
      it = root_to_class.emplace(r, reps.size()).first;
      reps.push_back(words[i]);
    }
    out.class_of[i] = it->second;
    if (words[i] < reps[it->second]) reps[it->second] = words[i];
  }
  // canonical representatives; classes ordered by representative
  std::vector<std::size_t> order(reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t p, std::size_t q) { return reps[p] < reps[q]; });
  std::vector<std::size_t> rank(reps.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
  for (auto& c : out.class_of) c = rank[c];
  out.classes.resize(reps.size());
  for (std::size_t k = 0; k < order.size(); ++k) out.classes[k] = reps[order[k]];
  return out;
}

bool words_congruent(const FlowPresentation& x, const Word& u, const Word& v) {
  if (u.empty() || v.empty()) throw InvalidFlow("words_congruent: empty word");
  if (x.word_src(u) != x.word_src(v) || x.word_tgt(u) != x.word_tgt(v)) return false;
  auto ps = hom_paths(x, x.word_src(u), x.word_tgt(u));
  std::size_t cu = SIZE_MAX, cv = SIZE_MAX;
  for (std::size_t i = 0; i < ps.words.size(); ++i) {
    if (ps.words[i] == u) cu = ps.class_of[i];
    if (ps.words[i] == v) cv = ps.class_of[i];
  }
  if (cu == SIZE_MAX || cv == SIZE_MAX)
    throw InvalidFlow("words_congruent: word is not a path of the presentation");
  return cu == cv;
}

Word FlowMorphism::word_image(const Word& w) const {
  Word out;
  for (uint32_t e : w)
    out.insert(out.end(), path_map[e].begin(), path_map[e].end());
  return out;
}

FlowMorphism make_flow_morphism(FlowPtr src, FlowPtr tgt,
                                std::vector<uint32_t> state_map,
                                std::vector<Word> path_map) {
  if (state_map.size() != src->state_count() ||
      path_map.size() != src->arrows().size())
    throw InvalidFlow("flow morphism: size mismatch");
  for (auto s : state_map)
    if (s >= tgt->state_count()) throw InvalidFlow("flow morphism: state out of range");
  for (std::size_t e = 0; e < path_map.size(); ++e) {
    const Word& w = path_map[e];
    if (w.empty())
      throw InvalidFlow("flow morphism: generator '" + src->arrows()[e].name +
                        "' must map to a non-empty word");
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] >= tgt->arrows().size())
        throw InvalidFlow("flow morphism: arrow out of range in image word");
      if (i + 1 < w.size() && tgt->arrows()[w[i]].tgt != tgt->arrows()[w[i + 1]].src)
        throw InvalidFlow("flow morphism: image word is not composable");
    }
    if (tgt->word_src(w) != state_map[src->arrows()[e].src] ||
        tgt->word_tgt(w) != state_map[src->arrows()[e].tgt])
      throw InvalidFlow("flow morphism: image word endpoints do not match");
  }
  FlowMorphism m{std::move(src), std::move(tgt), std::move(state_map),
                 std::move(path_map)};
  // Declared relations must be preserved up to the target congruence.
  for (const auto& [u, v] : m.source->relations()) {
    if (!words_congruent(*m.target, m.word_image(u), m.word_image(v)))
      throw InvalidFlow("flow morphism: a declared relation is not preserved");
  }
  return m;
}

FlowMorphism flow_identity(FlowPtr f) {
  std::vector<uint32_t> sm(f->state_count());
  std::iota(sm.begin(), sm.end(), 0);
  std::vector<Word> pm;
  for (uint32_t e = 0; e < f->arrows().size(); ++e) pm.push_back({e});
  return FlowMorphism{f, f, std::move(sm), std::move(pm)};
}

FlowMorphism flow_compose(const FlowMorphism& f, const FlowMorphism& g) {
  if (!(*g.target == *f.source))
    throw SourceTargetMismatch("flow_compose: target of g must equal source of f");
  std::vector<uint32_t> sm(g.state_map.size());
  for (std::size_t i = 0; i < sm.size(); ++i) sm[i] = f.state_map[g.state_map[i]];
  std::vector<Word> pm;
  for (const auto& w : g.path_map) pm.push_back(f.word_image(w));
  return FlowMorphism{g.source, f.target, std::move(sm), std::move(pm)};
}

FlowPresentation poset_to_flow(const FinPoset& p) {
  std::vector<std::string> states = p.labels();
  std::vector<FlowArrow> arrows;
  for (auto [a, b] : p.covers())
    arrows.push_back(FlowArrow{p.label(a) + "_" + p.label(b),
                               static_cast<uint32_t>(a), static_cast<uint32_t>(b)});
  // Identify all parallel words: for each pair x < y relate every cover
  // path to the first one.
  FlowPresentation bare(states, arrows, {});
  std::vector<std::pair<Word, Word>> relations;
  for (uint32_t x = 0; x < p.size(); ++x)
    for (uint32_t y = 0; y < p.size(); ++y) {
      if (x == y || !p.leq(x, y)) continue;
      auto ps = hom_paths(bare, x, y);
      for (std::size_t i = 1; i < ps.words.size(); ++i)
        relations.emplace_back(ps.words[0], ps.words[i]);
    }
  return FlowPresentation(std::move(states), std::move(arrows), std::move(relations));
}

FlowMorphism poset_map_to_flow(const MonotoneMap& f) {
  if (!f.is_strict())
    throw InvalidFlow("poset_map_to_flow: the map must be strictly increasing");
  auto src = make_flow(poset_to_flow(*f.src));
  auto tgt = make_flow(poset_to_flow(*f.tgt));
  std::vector<Word> pm;
  for (const auto& e : src->arrows()) {
    uint32_t a = f.assign[e.src];
    uint32_t b = f.assign[e.tgt];
    auto ps = hom_paths(*tgt, a, b);
    if (ps.classes.empty())
      throw InvalidFlow("poset_map_to_flow: no image path available");
    pm.push_back(ps.classes[0]);  // lexicographically least representative
  }
  std::vector<uint32_t> sm(f.assign.begin(), f.assign.end());
  return make_flow_morphism(src, tgt, std::move(sm), std::move(pm));
}

FlowPushout flow_pushout(const FlowMorphism& f, const FlowMorphism& g) {
  if (!(*f.source == *g.source))
    throw SourceTargetMismatch("flow_pushout: legs must share a source");
  const FlowPresentation& B = *f.target;
  const FlowPresentation& C = *g.target;
  if (B.cyclic() || C.cyclic())
    throw LoopDetected("flow_pushout: targets must be loopless",
                       B.cyclic() ? B.cycle_witness() : C.cycle_witness());

  std::size_t nb = B.state_count(), nc = C.state_count();
  // Set pushout of states.
  std::vector<std::size_t> parent(nb + nc);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (std::size_t s = 0; s < f.source->state_count(); ++s) {
    std::size_t a = find(f.state_map[s]);
    std::size_t b = find(nb + g.state_map[s]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> cls(nb + nc);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < nb + nc; ++i) {
    cls[i] = find(i);
    if (cls[i] == i) order.push_back(i);
  }
  std::vector<std::size_t> index(nb + nc);
  for (std::size_t k = 0; k < order.size(); ++k) index[order[k]] = k;

  std::vector<std::string> states;
  {
    std::set<std::string> used;
    for (std::size_t r : order) {
      std::string cand = r < nb ? B.states()[r] : C.states()[r - nb];
      while (used.count(cand)) cand += "'";
      used.insert(cand);
      states.push_back(cand);
    }
  }

  // Arrows: disjoint union, names de-collided deterministically.
  std::vector<FlowArrow> arrows;
  {
    std::set<std::string> used;
    auto add = [&](const FlowArrow& a, std::size_t offset) {
      std::string name = a.name;
      while (used.count(name)) name += "'";
      used.insert(name);
      arrows.push_back(FlowArrow{name, static_cast<uint32_t>(index[cls[offset + a.src]]),
                                 static_cast<uint32_t>(index[cls[offset + a.tgt]])});
    };
    for (const auto& a : B.arrows()) add(a, 0);
    for (const auto& a : C.arrows()) add(a, nb);
  }

  auto map_word_c = [&](const Word& w) {
    Word out;
    for (uint32_t e : w) out.push_back(static_cast<uint32_t>(B.arrows().size() + e));
    return out;
  };

  std::vector<std::pair<Word, Word>> relations;
  for (const auto& [u, v] : B.relations()) relations.emplace_back(u, v);
  for (const auto& [u, v] : C.relations())
    relations.emplace_back(map_word_c(u), map_word_c(v));
  // Identifications induced by the legs: the two images of each shared arrow.
  for (std::size_t e = 0; e < f.source->arrows().size(); ++e)
    relations.emplace_back(f.path_map[e], map_word_c(g.path_map[e]));

  FlowPresentation glued(states, arrows, relations);
  if (glued.cyclic())
    throw LoopDetected("flow_pushout: gluing created a cycle (a contraction in "
                       "the direction of time)",
                       glued.cycle_witness());
  auto obj = make_flow(std::move(glued));

  std::vector<uint32_t> sm_b(nb), sm_c(nc);
  for (std::size_t i = 0; i < nb; ++i) sm_b[i] = static_cast<uint32_t>(index[cls[i]]);
  for (std::size_t i = 0; i < nc; ++i)
    sm_c[i] = static_cast<uint32_t>(index[cls[nb + i]]);
  std::vector<Word> pm_b, pm_c;
  for (uint32_t e = 0; e < B.arrows().size(); ++e) pm_b.push_back({e});
  for (uint32_t e = 0; e < C.arrows().size(); ++e)
    pm_c.push_back({static_cast<uint32_t>(B.arrows().size() + e)});
  FlowMorphism inl = make_flow_morphism(f.target, obj, std::move(sm_b), std::move(pm_b));
  FlowMorphism inr = make_flow_morphism(g.target, obj, std::move(sm_c), std::move(pm_c));
  return FlowPushout{obj, std::move(inl), std::move(inr)};
}

bool discrete_weq(const FlowMorphism& m) {
  const FlowPresentation& X = *m.source;
  const FlowPresentation& Y = *m.target;
  if (X.cyclic())
    throw LoopDetected("discrete_weq: source is cyclic", X.cycle_witness());
  if (Y.cyclic())
    throw LoopDetected("discrete_weq: target is cyclic", Y.cycle_witness());
  if (X.state_count() != Y.state_count()) return false;
  std::vector<bool> hit(Y.state_count(), false);
  for (auto s : m.state_map) {
    if (hit[s]) return false;
    hit[s] = true;
  }
  for (uint32_t a = 0; a < X.state_count(); ++a)
    for (uint32_t b = 0; b < X.state_count(); ++b) {
      auto px = hom_paths(X, a, b);
      auto py = hom_paths(Y, m.state_map[a], m.state_map[b]);
      std::set<std::size_t> image;
      for (const auto& cls : px.classes) {
        Word img = m.word_image(cls);
        std::size_t target_class = SIZE_MAX;
        for (std::size_t i = 0; i < py.words.size(); ++i)
          if (py.words[i] == img) {
            target_class = py.class_of[i];
            break;
          }
        if (target_class == SIZE_MAX) return false;
        image.insert(target_class);
      }
      if (image.size() != px.class_count()) return false;  // injective
      if (image.size() != py.class_count()) return false;  // surjective
    }
  return true;
}

} // namespace posloc
