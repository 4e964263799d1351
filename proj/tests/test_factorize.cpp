#include "doctest.h"

#include "helpers.hpp"
#include "posloc/errors.hpp"
#include "posloc/factorize.hpp"

using namespace posloc;
using namespace posloc::testutil;

namespace {

void check_replay(const Factorization& f, const GeneratorSet& gens) {
  auto r = replay_stages(f.source_map.src, f.stages, gens, f.source_map);
  CHECK(r.alpha == f.alpha);
  REQUIRE(r.beta);
  CHECK(*r.beta == f.beta);
  CHECK(compose(f.beta, f.alpha) == f.source_map);
}

} // namespace

TEST_CASE("soa: map already in inj factors trivially") {
  GeneratorSet gens({subdivision()});
  auto f = identity_map(chain(3));
  auto fact = small_object_factorize(f, gens);
  CHECK(fact.converged);
  CHECK(fact.stages_used() == 0);
  CHECK(fact.alpha.is_identity());
  CHECK(fact.beta == f);
  check_replay(fact, gens);
}

TEST_CASE("soa: empty generator set factors trivially") {
  GeneratorSet gens;
  auto f = map_of(chain(2), chain(3), {0, 2});
  auto fact = small_object_factorize(f, gens);
  CHECK(fact.converged);
  CHECK(fact.alpha.is_identity());
  CHECK(fact.beta == f);
}

TEST_CASE("soa strict: the 2-chain subdivides forever under strict segments") {
  GeneratorSet gens({subdivision()});
  auto f = unique_to_terminal(chain(2), point());
  auto fact = small_object_factorize(f, gens, 3, HomMode::strict);
  CHECK(!fact.converged);
  CHECK(fact.stages_used() == 3);
  // stage 1 attaches the single segment square; the chain keeps growing
  REQUIRE(fact.stages.size() == 3);
  CHECK(fact.stages[0].squares.size() == 1);
  CHECK(fact.stages[0].step.tgt->size() == 3);
  CHECK(fact.stages[1].step.tgt->size() == 5);
  CHECK(fact.stages[2].step.tgt->size() == 12);
  check_replay(fact, gens);
}

TEST_CASE("soa strict: maps between small bounded posets converge quickly") {
  GeneratorSet gens({subdivision()});
  auto f = map_of(chain(2), chain(4), {0, 3});
  auto fact = small_object_factorize(f, gens, 8, HomMode::strict);
  CHECK(fact.converged);
  CHECK(fact.stages_used() == 2);
  CHECK(in_inj(fact.beta, gens, HomMode::strict).ok);
  check_replay(fact, gens);
}

TEST_CASE("soa monotone: non-convergent maps stop at the element guard") {
  GeneratorSet gens({subdivision()});
  auto f = map_of(chain(2), chain(4), {0, 3});
  auto fact = small_object_factorize(f, gens, 8, HomMode::monotone,
                                     StagePolicy::all_at_once, 700);
  CHECK(!fact.converged);
  CHECK(fact.element_guard_hit);
  // growth pattern 2, 6, 26, 216 before the guard trips
  REQUIRE(fact.stages.size() == 3);
  CHECK(fact.stages[0].step.tgt->size() == 6);
  CHECK(fact.stages[1].step.tgt->size() == 26);
  CHECK(fact.stages[2].step.tgt->size() == 216);
  check_replay(fact, gens);
}

TEST_CASE("soa: one-at-a-time policy attaches single squares") {
  GeneratorSet gens({subdivision()});
  auto f = unique_to_terminal(chain(2), point());
  auto fact = small_object_factorize(f, gens, 4, HomMode::strict,
                                     StagePolicy::one_at_a_time);
  for (const auto& st : fact.stages) CHECK(st.squares.size() == 1);
  check_replay(fact, gens);
}

TEST_CASE("soa stage maps are single-stage attachments") {
  GeneratorSet gens({subdivision()});
  auto f = unique_to_terminal(chain(3), point());
  auto fact = small_object_factorize(f, gens, 2, HomMode::strict);
  auto base = f.src;
  for (const auto& st : fact.stages) {
    auto po = attach_squares(base, st.squares, gens);
    CHECK(po.inl == st.step);
    base = po.object;
  }
}

TEST_CASE("exact-stage runs keep attaching after convergence") {
  // gens_C: adding a free point; everything nonempty is already injective
  // against it, but the stage-indexed functor still attaches the square.
  GeneratorSet gens({map_of(empty(), point(), {})});
  auto f = unique_to_terminal(chain(2), point());
  auto fact = small_object_run_stages(f, gens, 1, HomMode::monotone);
  CHECK(fact.stages_used() == 1);
  CHECK(fact.middle()->size() == 3);  // the segment plus one isolated point
  CHECK(fact.converged);
}

TEST_CASE("in_cell_certified: identity, generator, double subdivision") {
  GeneratorSet gens({subdivision()});

  auto idc = identity_map(chain(2));
  auto c0 = in_cell_certified(idc, gens, 2);
  REQUIRE(c0);
  CHECK(c0->stages.empty());
  CHECK(c0->certified_map(gens) == idc);

  auto sub = subdivision();
  auto c1 = in_cell_certified(sub, gens, 2);
  REQUIRE(c1);
  CHECK(c1->stages.size() == 1);
  CHECK(c1->certified_map(gens) == sub);

  auto dbl = map_of(chain(2), chain(4), {0, 3});
  auto c2m = in_cell_certified(dbl, gens, 3);
  REQUIRE(c2m);
  CHECK(c2m->stages.size() == 2);
  CHECK(c2m->certified_map(gens) == dbl);

  // The collapse is not reachable by attaching subdivisions.
  auto collapse = map_of(chain(2), point(), {0, 0});
  CHECK(!in_cell_certified(collapse, gens, 3));
}

TEST_CASE("retract closure of the lifting property on sampled instances") {
  // sub is a retract of the double subdivision, which carries a certificate;
  // anything lifting against the double must lift against sub.
  GeneratorSet gens({subdivision()});
  auto sub = subdivision();
  auto dbl = map_of(chain(2), chain(4), {0, 3});
  REQUIRE(in_cell_certified(dbl, gens, 3));
  CHECK(is_retract(sub, dbl));

  std::vector<PosetPtr> objs = {point(), chain(2), chain(3), antichain(2), diamond()};
  for (const auto& X : objs)
    for (const auto& Y : objs)
      for (const auto& p : enumerate_maps(X, Y, HomMode::monotone)) {
        bool against_g = in_inj(p, GeneratorSet({dbl}), HomMode::monotone).ok;
        bool against_f = in_inj(p, GeneratorSet({sub}), HomMode::monotone).ok;
        if (against_g) CHECK(against_f);
      }
}
