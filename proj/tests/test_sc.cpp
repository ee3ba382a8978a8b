#include "doctest.h"
#include "scissors/error.hpp"
#include "scissors/examples.hpp"
#include "scissors/sc.hpp"
#include "twist_helpers.hpp"
#include "universal.hpp"

using namespace scissors;
using namespace support;
using helpers::shuf;
using helpers::sub;

namespace {

ScMorphism span(const PolytopeComplex& c, const SubMap& p, const Shuffle& sigma) { return make_sc_morphism(c, p, sigma); }

ScMorphism pure(const PolytopeComplex& c, const Shuffle& sigma) { return sc_shuffle(c, sigma); }

// f with its apex listed in a different order, bypassing normalization.
ScMorphism permuted(const ScMorphism& f, Rng& rng) {
  std::vector<std::size_t> perm(f.apex().size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.shuffle(perm);
  ScMorphism g = f;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    g.p.src.components[i] = f.p.src[perm[i]];
    g.p.set_map[i] = f.p.set_map[perm[i]];
    g.sigma.set_map[i] = f.sigma.set_map[perm[i]];
    g.sigma.comps[i] = f.sigma.comps[perm[i]];
  }
  g.sigma.src = g.p.src;
  return g;
}

ScMorphism random_morphism(const PolytopeComplex& c, const TwObject& a, const TwObject& b, Rng& rng) {
  const auto hs = universal::hom(c, a, b);
  return hs[rng.below(hs.size())];
}

}  // namespace

TEST_CASE("composition examples") {
  const auto iv = interval_line(1, 3);
  const auto cover = sub(iv, {"[0,1]", "[1,2]"}, {"[0,2]"}, {0, 0});
  const auto f = span(iv, cover, identity_shuffle(iv, cover.src));
  const auto g = pure(iv, shuf(iv, {"[0,1]", "[1,2]"}, {"[1,2]", "[2,3]"}, {0, 1}, {"+1:[0,1]", "+1:[1,2]"}));
  const auto gf = sc_compose(iv, f, g);
  const auto expected = span(iv, cover, shuf(iv, {"[0,1]", "[1,2]"}, {"[1,2]", "[2,3]"}, {0, 1}, {"+1:[0,1]", "+1:[1,2]"}));
  CHECK(gf == expected);
  CHECK(is_covering_sub_map(iv, gf.p));

  const auto s = s_g(cyclic_group(2));
  const auto rot = pure(s, shuf(s, {"*"}, {"*"}, {0}, {"g:g"}));
  CHECK(sc_compose(s, rot, rot) == sc_identity(s, tw(s, {"*"})));

  CHECK_THROWS_AS(sc_compose(iv, f, f), PreconditionError);
}

TEST_CASE("unit laws and associativity") {
  const auto s = s_g(cyclic_group(2));
  for (const auto& A : objects_of_size(s, 1)) {
    const auto one = universal::hom(s, A, A);
    for (const auto& f : one) {
      CHECK(sc_compose(s, sc_identity(s, A), f) == f);
      CHECK(sc_compose(s, f, sc_identity(s, A)) == f);
      for (const auto& g : one) {
        for (const auto& h : one) CHECK(sc_compose(s, sc_compose(s, f, g), h) == sc_compose(s, f, sc_compose(s, g, h)));
      }
    }
  }
  const auto iv = interval_line(1, 3);
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    TwObject ob[4];
    for (auto& o : ob) o = objects_of_size(iv, 1 + rng.below(2))[0];
    for (auto& o : ob) {
      for (auto& x : o.components) x = iv.polytopes()[rng.below(iv.polytopes().size())];
    }
    const auto f = random_morphism(iv, ob[0], ob[1], rng);
    const auto g = random_morphism(iv, ob[1], ob[2], rng);
    const auto h = random_morphism(iv, ob[2], ob[3], rng);
    CHECK(sc_compose(iv, sc_identity(iv, ob[0]), f) == f);
    CHECK(sc_compose(iv, f, sc_identity(iv, ob[1])) == f);
    CHECK(sc_compose(iv, sc_compose(iv, f, g), h) == sc_compose(iv, f, sc_compose(iv, g, h)));
    // Reordering either apex does not change the composite.
    CHECK(sc_equal(sc_compose(iv, permuted(f, rng), permuted(g, rng)), sc_compose(iv, f, g)));
    // Flags are closed under composition.
    const auto kf = classify(iv, f), kg = classify(iv, g), kgf = classify(iv, sc_compose(iv, f, g));
    if (kf.cofibration && kg.cofibration) CHECK(kgf.cofibration);
    if (kf.weak_equivalence && kg.weak_equivalence) CHECK(kgf.weak_equivalence);
    if (kf.isomorphism && kg.isomorphism) CHECK(kgf.isomorphism);
  }
}

TEST_CASE("equality of spans") {
  const auto iv = interval_line(1, 3);
  Rng rng(5);
  const auto f = span(iv, sub(iv, {"[0,1]", "[2,3]", "[1,2]"}, {"[0,3]"}, {0, 0, 0}),
                      shuf(iv, {"[0,1]", "[2,3]", "[1,2]"}, {"[0,1]", "[2,3]"}, {0, 1, 0},
                           {"id:[0,1]", "id:[2,3]", "-1:[1,2]"}));
  const auto g = permuted(f, rng);
  CHECK_FALSE(g == f);
  CHECK(sc_equal(make_sc_morphism(iv, g.p, g.sigma), f));
  const auto a = span(iv, sub(iv, {"[0,1]", "[1,2]"}, {"[0,2]"}, {0, 0}),
                      shuf(iv, {"[0,1]", "[1,2]"}, {"[0,1]", "[1,2]"}, {0, 1}, {"id:[0,1]", "id:[1,2]"}));
  CHECK_FALSE(sc_equal(a, sc_identity(iv, tw(iv, {"[0,2]"}))));

  const auto s = s_g(cyclic_group(2));
  CHECK_FALSE(sc_equal(pure(s, shuf(s, {"*"}, {"*"}, {0}, {"id:*"})), pure(s, shuf(s, {"*"}, {"*"}, {0}, {"g:g"}))));
}

TEST_CASE("classification") {
  const auto iv = interval_line(1, 3);
  const auto id = classify(iv, sc_identity(iv, tw(iv, {"[0,2]"})));
  CHECK((id.cofibration && id.weak_equivalence && id.isomorphism));

  const auto tiling = span(iv, sub(iv, {"[0,1]", "[1,2]"}, {"[0,2]"}, {0, 0}),
                           identity_shuffle(iv, tw(iv, {"[0,1]", "[1,2]"})));
  const auto kt = classify(iv, tiling);
  CHECK(kt.cofibration);
  CHECK(kt.weak_equivalence);
  CHECK_FALSE(kt.isomorphism);

  const auto summand = pure(iv, shuf(iv, {"[0,1]"}, {"[0,1]", "[2,3]"}, {0}, {"id:[0,1]"}));
  const auto ks = classify(iv, summand);
  CHECK(ks.cofibration);
  CHECK_FALSE(ks.weak_equivalence);
  CHECK_FALSE(ks.isomorphism);

  const auto partial = span(iv, sub(iv, {"[0,1]"}, {"[0,2]"}, {0}), shuf(iv, {"[0,1]"}, {"[0,1]"}, {0}, {"id:[0,1]"}));
  const auto kp = classify(iv, partial);
  CHECK_FALSE(kp.cofibration);
  CHECK_FALSE(kp.weak_equivalence);

  // Isomorphism implies both flags, on a whole hom set.
  for (const auto& f : universal::hom(iv, tw(iv, {"[0,1]", "[1,2]"}), tw(iv, {"[1,2]", "[0,1]"}))) {
    const auto k = classify(iv, f);
    if (k.isomorphism) CHECK((k.cofibration && k.weak_equivalence));
  }
}

TEST_CASE("inverses of isomorphisms") {
  const auto iv = interval_line(1, 3);
  const auto A = tw(iv, {"[0,1]", "[1,3]"}), B = tw(iv, {"[1,3]", "[2,3]"});
  std::size_t isos = 0;
  for (const auto& f : universal::hom(iv, A, B)) {
    const auto inv = sc_inverse(iv, f);
    CHECK(inv.has_value() == classify(iv, f).isomorphism);
    if (!inv) continue;
    ++isos;
    CHECK(sc_compose(iv, f, *inv) == sc_identity(iv, A));
    CHECK(sc_compose(iv, *inv, f) == sc_identity(iv, B));
  }
  CHECK(isos == 1);
}

TEST_CASE("coproducts") {
  const auto iv = interval_line(1, 3);
  const auto A = tw(iv, {"[0,1]"}), B = tw(iv, {"[1,3]"});
  CHECK(sc_coproduct(iv, {sc_identity(iv, A), sc_identity(iv, B)}) == sc_identity(iv, concat(A, B)));
  CHECK(sc_coproduct(iv, {}) == sc_identity(iv, TwObject{}));
  const auto tiling = span(iv, sub(iv, {"[0,1]", "[1,2]"}, {"[0,2]"}, {0, 0}), identity_shuffle(iv, tw(iv, {"[0,1]", "[1,2]"})));
  const auto summand = pure(iv, shuf(iv, {"[0,1]"}, {"[0,1]", "[2,3]"}, {0}, {"id:[0,1]"}));
  const auto sum = sc_coproduct(iv, {tiling, summand});
  const auto k = classify(iv, sum), k1 = classify(iv, tiling), k2 = classify(iv, summand);
  CHECK(k.cofibration == (k1.cofibration && k2.cofibration));
  CHECK(k.weak_equivalence == (k1.weak_equivalence && k2.weak_equivalence));
  CHECK(k.isomorphism == (k1.isomorphism && k2.isomorphism));
}

TEST_CASE("pushouts along cofibrations") {
  const auto iv = interval_line(1, 3);
  const auto A = tw(iv, {"[0,1]"});
  const auto f = pure(iv, shuf(iv, {"[0,1]"}, {"[1,2]"}, {0}, {"+1:[0,1]"}));
  const auto cof = pure(iv, shuf(iv, {"[0,1]"}, {"[0,1]", "[2,3]"}, {0}, {"id:[0,1]"}));
  SUBCASE("identity cofibration") {
    const auto po = sc_pushout(iv, f, sc_identity(iv, A));
    CHECK(po.D == f.dst());
    CHECK(classify(iv, po.from_c).isomorphism);
  }
  SUBCASE("identity along the other leg") {
    const auto po = sc_pushout(iv, sc_identity(iv, A), cof);
    CHECK(po.D == cof.dst());
    CHECK(classify(iv, po.from_b).isomorphism);
  }
  SUBCASE("translation against a summand inclusion") {
    const auto po = sc_pushout(iv, f, cof);
    CHECK(po.D == tw(iv, {"[1,2]", "[2,3]"}));
    CHECK(po.from_c == pure(iv, shuf(iv, {"[1,2]"}, {"[1,2]", "[2,3]"}, {0}, {"id:[1,2]"})));
    CHECK(po.from_b ==
          pure(iv, shuf(iv, {"[0,1]", "[2,3]"}, {"[1,2]", "[2,3]"}, {0, 1}, {"+1:[0,1]", "id:[2,3]"})));
    CHECK(sc_compose(iv, f, po.from_c) == sc_compose(iv, cof, po.from_b));
  }
  SUBCASE("not a cofibration") {
    CHECK_THROWS_AS(sc_pushout(iv, f, sc_zero(A, tw(iv, {"[1,2]"}))), PreconditionError);
  }
}

TEST_CASE("pushout universal property") {
  for (const auto& c : {interval_line(1, 2), s_g(cyclic_group(2))}) {
    const auto t = universal::pushout_universality(c, 3);
    INFO((t.examples.empty() ? std::string() : t.examples.front()));
    CHECK(t.instances > 0);
    CHECK(t.failures == 0);
  }
}

TEST_CASE("cofibers") {
  const auto iv = interval_line(1, 3);
  SUBCASE("identity") {
    const auto A = tw(iv, {"[0,2]"});
    const auto q = cofiber(iv, sc_identity(iv, A));
    CHECK(q.Q.size() == 0);
    CHECK(q.section == sc_zero(TwObject{}, A));
  }
  SUBCASE("summand inclusion") {
    const auto cof = pure(iv, shuf(iv, {"[0,1]"}, {"[0,1]", "[1,3]"}, {0}, {"id:[0,1]"}));
    const auto q = cofiber(iv, cof);
    CHECK(q.Q == tw(iv, {"[1,3]"}));
    CHECK(q.section == pure(iv, shuf(iv, {"[1,3]"}, {"[0,1]", "[1,3]"}, {1}, {"id:[1,3]"})));
    CHECK(classify(iv, q.section).cofibration);
    CHECK(sc_compose(iv, q.section, q.quot) == sc_identity(iv, q.Q));
  }
  SUBCASE("cofibration with a covering refinement") {
    const auto cof = span(iv, sub(iv, {"[0,1]", "[1,2]"}, {"[0,2]"}, {0, 0}),
                          shuf(iv, {"[0,1]", "[1,2]"}, {"[0,1]", "[2,3]", "[1,2]"}, {0, 2}, {"id:[0,1]", "id:[1,2]"}));
    REQUIRE(classify(iv, cof).cofibration);
    const auto q = cofiber(iv, cof);
    CHECK(q.Q == tw(iv, {"[2,3]"}));
    CHECK(sc_compose(iv, q.section, q.quot) == sc_identity(iv, q.Q));
    CHECK_FALSE(sc_compose(iv, q.quot, q.section) == sc_identity(iv, cof.dst()));
    CHECK(classify(iv, q.section).cofibration);
    CHECK(sc_compose(iv, cof, q.quot) == sc_zero(cof.src(), q.Q));
  }
  SUBCASE("every cofibration between small objects") {
    for (const auto& A : objects_of_size(iv, 1)) {
      for (const auto& B : objects_of_size(iv, 2)) {
        for (const auto& f : universal::hom(iv, A, B)) {
          if (!classify(iv, f).cofibration) continue;
          const auto q = cofiber(iv, f);
          CHECK(sc_compose(iv, q.section, q.quot) == sc_identity(iv, q.Q));
          CHECK(classify(iv, q.section).cofibration);
        }
      }
    }
  }
}

TEST_CASE("hom enumeration") {
  const auto s = s_g(cyclic_group(2));
  CHECK(sc_morphisms(s, TwObject{}, TwObject{}, 4).size() == 1);
  const auto star = tw(s, {"*"});
  const auto one = sc_morphisms(s, star, star, 1);
  // The empty span plus one automorphism per group element.
  CHECK(one.size() == 3);
  std::size_t autos = 0;
  for (const auto& f : one) autos += classify(s, f).isomorphism;
  CHECK(autos == 2);
  CHECK(one.size() == brute_force_hom(s, star, star, 1).size());

  const auto iv = interval_line(1, 2);
  const auto top = tw(iv, {"[0,2]"});
  const auto hs = sc_morphisms(iv, top, top, 2);
  const auto bf = brute_force_hom(iv, top, top, 2);
  CHECK(hs.size() == bf.size());
  for (const auto& f : bf) CHECK(std::count(hs.begin(), hs.end(), f) == 1);

  const auto i3 = interval_line(1, 3);
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ps = i3.polytopes();
    TwObject a, b;
    for (std::size_t k = 0, n = 1 + rng.below(2); k < n; ++k) a.components.push_back(ps[rng.below(ps.size())]);
    for (std::size_t k = 0, n = 1 + rng.below(2); k < n; ++k) b.components.push_back(ps[rng.below(ps.size())]);
    const std::size_t bound = universal::max_apex(i3, a);
    auto mine = sc_morphisms(i3, a, b, bound);
    auto theirs = brute_force_hom(i3, a, b, bound);
    INFO(to_string(i3, a), " -> ", to_string(i3, b));
    CHECK(mine.size() == theirs.size());
    for (const auto& f : theirs) CHECK(std::count(mine.begin(), mine.end(), f) == 1);
  }

  // 8 choices per source component: any subset of the unit cells, all sent to [0,1].
  CHECK(sc_morphisms(i3, tw(i3, {"[0,3]"}), tw(i3, {"[0,1]"}), 6).size() == 8);
  CHECK_THROWS_AS(sc_morphisms(i3, tw(i3, {"[0,3]", "[0,3]"}), tw(i3, {"[0,1]"}), 6, 50), BoundExceeded);
}
