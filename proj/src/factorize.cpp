#include "posloc/factorize.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "posloc/errors.hpp"

namespace posloc {

PushoutResult attach_squares(PosetPtr x, const std::vector<AttachSquare>& squares,
                             const GeneratorSet& gens) {
  std::vector<PosetPtr> doms, cods;
  doms.reserve(squares.size());
  cods.reserve(squares.size());
  for (const auto& s : squares) {
    doms.push_back(gens.maps[s.gen].src);
    cods.push_back(gens.maps[s.gen].tgt);
  }
  Coproduct cd = coproduct(doms);
  Coproduct cc = coproduct(cods);
  // tops: coproduct of sources -> x ; k: coproduct of sources -> coproduct of targets
  std::vector<uint32_t> tops(cd.object->size());
  std::vector<uint32_t> kk(cd.object->size());
  for (std::size_t s = 0; s < squares.size(); ++s) {
    const auto& gen = gens.maps[squares[s].gen];
    for (std::size_t a = 0; a < gen.src->size(); ++a) {
      std::size_t idx = cd.in[s].assign[a];
      tops[idx] = squares[s].top[a];
      kk[idx] = cc.in[s].assign[gen.assign[a]];
    }
  }
  MonotoneMap top_map = make_map(cd.object, x, std::move(tops));
  MonotoneMap k_map = make_map(cd.object, cc.object, std::move(kk));
  return pushout(top_map, k_map);
}

namespace {

// beta on the attached object: old elements keep their values, each cell
// element takes its square's bottom value.
MonotoneMap extend_beta(const PushoutResult& po, const MonotoneMap& beta,
                        const std::vector<AttachSquare>& squares,
                        const GeneratorSet& gens) {
  std::vector<uint32_t> vals(po.object->size(), 0);
  std::vector<bool> have(po.object->size(), false);
  for (std::size_t i = 0; i < beta.src->size(); ++i) {
    vals[po.inl.assign[i]] = beta.assign[i];
    have[po.inl.assign[i]] = true;
  }
  std::size_t at = 0;  // walk the coproduct-of-targets blocks in square order
  for (const auto& s : squares) {
    const auto& gen = gens.maps[s.gen];
    for (std::size_t b = 0; b < gen.tgt->size(); ++b) {
      std::size_t cls = po.inr.assign[at + b];
      vals[cls] = s.bottom[b];
      have[cls] = true;
    }
    at += gen.tgt->size();
  }
  for (bool h : have)
    if (!h) throw Error("internal: attached element without a beta value");
  return make_map(po.object, beta.tgt, std::move(vals));
}

using SquareKey = AttachSquare;  // compared structurally

struct SoaState {
  PosetPtr x;
  MonotoneMap beta;
  MonotoneMap alpha;
  std::set<SquareKey> attached;
  std::vector<Stage> stages;
};

std::vector<AttachSquare> outstanding_squares(const SoaState& st,
                                              const GeneratorSet& gens,
                                              HomMode mode) {
  std::vector<AttachSquare> out;
  for (uint32_t gi = 0; gi < gens.maps.size(); ++gi) {
    for_each_square(gens.maps[gi], st.beta, mode,
                    [&](const MonotoneMap& top, const MonotoneMap& bottom) {
                      AttachSquare sq{gi, top.assign, bottom.assign};
                      if (!st.attached.count(sq)) out.push_back(std::move(sq));
                      return true;
                    });
  }
  return out;
}

void apply_stage(SoaState& st, std::vector<AttachSquare> squares,
                 const GeneratorSet& gens) {
  PushoutResult po = attach_squares(st.x, squares, gens);
  MonotoneMap beta2 = extend_beta(po, st.beta, squares, gens);
  std::set<SquareKey> moved;
  auto push_forward = [&](const SquareKey& k) {
    SquareKey nk = k;
    for (auto& t : nk.top) t = po.inl.assign[t];
    return nk;
  };
  for (const auto& k : st.attached) moved.insert(push_forward(k));
  for (const auto& k : squares) moved.insert(push_forward(k));
  st.attached = std::move(moved);
  st.stages.push_back(Stage{std::move(squares), po.inl});
  st.alpha = compose(po.inl, st.alpha);
  st.beta = std::move(beta2);
  st.x = po.object;
}

Factorization run_soa(const MonotoneMap& f, const GeneratorSet& gens,
                      std::size_t stage_bound, HomMode mode, StagePolicy policy,
                      std::size_t element_guard, bool early_stop) {
  SoaState st{f.src, f, identity_map(f.src), {}, {}};
  Factorization out;
  out.source_map = f;
  for (std::size_t stage = 0;; ++stage) {
    if (early_stop && in_inj(st.beta, gens, mode)) {
      out.converged = true;
      break;
    }
    if (stage == stage_bound) break;
    auto squares = outstanding_squares(st, gens, mode);
    if (early_stop && squares.empty()) break;
    if (policy == StagePolicy::one_at_a_time && squares.size() > 1) squares.resize(1);
    std::size_t projected = st.x->size();
    for (const auto& s : squares) projected += gens.maps[s.gen].tgt->size();
    if (projected > element_guard) {
      out.element_guard_hit = true;
      break;
    }
    // Exact-stage runs record empty stages to keep stage indices aligned.
    apply_stage(st, std::move(squares), gens);
  }
  if (!early_stop) out.converged = in_inj(st.beta, gens, mode).ok;
  out.alpha = st.alpha;
  out.beta = st.beta;
  out.stages = std::move(st.stages);
  return out;
}

} // namespace

Factorization small_object_factorize(const MonotoneMap& f, const GeneratorSet& gens,
                                     std::size_t stage_bound, HomMode mode,
                                     StagePolicy policy, std::size_t element_guard) {
  return run_soa(f, gens, stage_bound, mode, policy, element_guard, true);
}

Factorization small_object_run_stages(const MonotoneMap& f, const GeneratorSet& gens,
                                      std::size_t stages, HomMode mode,
                                      std::size_t element_guard) {
  return run_soa(f, gens, stages, mode, StagePolicy::all_at_once, element_guard,
                 false);
}

ReplayResult replay_stages(PosetPtr base, const std::vector<Stage>& stages,
                           const GeneratorSet& gens,
                           std::optional<MonotoneMap> base_beta) {
  ReplayResult out;
  out.objects.push_back(base);
  MonotoneMap alpha = identity_map(base);
  std::optional<MonotoneMap> beta = std::move(base_beta);
  for (const auto& st : stages) {
    PushoutResult po = attach_squares(out.objects.back(), st.squares, gens);
    if (beta) beta = extend_beta(po, *beta, st.squares, gens);
    alpha = compose(po.inl, alpha);
    out.objects.push_back(po.object);
  }
  out.alpha = std::move(alpha);
  out.beta = std::move(beta);
  return out;
}

MonotoneMap CellCertificate::certified_map(const GeneratorSet& gens) const {
  ReplayResult r = replay_stages(source, stages, gens);
  return compose(final_iso, r.alpha);
}

CellCertificate certificate_of_alpha(const Factorization& f) {
  return CellCertificate{f.source_map.src, f.stages, identity_map(f.alpha.tgt)};
}

std::optional<CellCertificate> in_cell_certified(const MonotoneMap& f,
                                                 const GeneratorSet& gens,
                                                 std::size_t bound, HomMode mode) {
  std::size_t max_cod = 0;
  for (const auto& g : gens.maps) max_cod = std::max(max_cod, g.tgt->size());

  std::optional<CellCertificate> found;
  std::vector<Stage> trail;
  std::size_t depth_cap = 0;  // iterative deepening: minimal stage count wins

  std::function<bool(PosetPtr, const MonotoneMap&, std::size_t)> dfs =
      [&](PosetPtr z, const MonotoneMap& psi, std::size_t depth) -> bool {
    if (psi.is_isomorphism()) {
      found = CellCertificate{f.src, trail, psi};
      return true;
    }
    if (depth == depth_cap) return false;
    for (uint32_t gi = 0; gi < gens.maps.size(); ++gi) {
      const MonotoneMap& k = gens.maps[gi];
      bool stop = false;
      for_each_map(k.src, z, mode, [&](const MonotoneMap& top) {
        // cod-side map c with c∘k = psi∘top
        MapSearch cs(k.tgt, f.tgt, mode);
        std::vector<std::optional<uint32_t>> pin(k.tgt->size());
        bool consistent = true;
        for (std::size_t a = 0; a < k.src->size() && consistent; ++a) {
          uint32_t v = psi.assign[top.assign[a]];
          std::size_t b = k.assign[a];
          if (pin[b] && *pin[b] != v) consistent = false;
          pin[b] = v;
        }
        if (!consistent) return true;
        for (std::size_t b = 0; b < k.tgt->size(); ++b)
          if (pin[b]) cs.fix(b, *pin[b]);
        cs.for_each([&](const MonotoneMap& c) {
          AttachSquare sq{gi, top.assign, c.assign};
          PushoutResult po = attach_squares(z, {sq}, gens);
          if (po.object->size() > f.tgt->size() + max_cod) return true;
          MonotoneMap psi2 = extend_beta(po, psi, {sq}, gens);
          trail.push_back(Stage{{sq}, po.inl});
          if (dfs(po.object, psi2, depth + 1)) {
            stop = true;
            return false;
          }
          trail.pop_back();
          return true;
        });
        return !stop;
      });
      if (stop) return true;
    }
    return false;
  };
  for (depth_cap = 0; depth_cap <= bound && !found; ++depth_cap)
    dfs(f.src, f, 0);
  return found;
}

} // namespace posloc
