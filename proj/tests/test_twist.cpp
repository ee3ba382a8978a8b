#include "doctest.h"
#include "scissors/error.hpp"
#include "scissors/examples.hpp"
#include "twist_helpers.hpp"
#include "universal.hpp"

using namespace scissors;
using namespace support;
using helpers::shuf;
using helpers::sub;

TEST_CASE("covering sub-maps") {
  const auto iv = interval_line(1, 2);
  const auto a = tw(iv, {"[0,2]", "[0,1]"});
  CHECK(is_covering_sub_map(iv, identity_sub_map(a)));
  CHECK(is_covering_sub_map(iv, sub(iv, {"[0,1]", "[1,2]"}, {"[0,2]"}, {0, 0})));
  CHECK_FALSE(is_covering_sub_map(iv, sub(iv, {"[0,1]"}, {"[0,2]"}, {0})));
  CHECK_FALSE(is_covering_sub_map(iv, SubMap{{}, tw(iv, {"[0,2]"}), {}}));
  CHECK_THROWS_AS(check_sub_map(iv, SubMap{tw(iv, {"[0,1]", "[0,2]"}), tw(iv, {"[0,2]"}), {0, 0}}), PreconditionError);
}

TEST_CASE("vertical pullback") {
  const auto iv = interval_line(1, 3);
  const auto f = sub(iv, {"[0,2]"}, {"[0,3]"}, {0});
  const auto g = sub(iv, {"[1,3]"}, {"[0,3]"}, {0});
  const auto pb = vertical_pullback(iv, f, g);
  CHECK(pb.P == tw(iv, {"[1,2]"}));
  CHECK(compose(f, pb.to_f) == compose(g, pb.to_g));

  const auto id = vertical_pullback(iv, identity_sub_map(g.dst), g);
  CHECK(id.P == g.src);

  const auto r = rationals(6);
  const auto rp = vertical_pullback(r, sub(r, {"(2)", "(3)"}, {"(6)"}, {0, 0}), sub(r, {"(6)"}, {"(6)"}, {0}));
  CHECK(rp.P == tw(r, {"(2)", "(3)"}));

  // Every commuting cone of sub-maps factors through P exactly once.
  for (const auto& x : sub_maps_into(iv, f.src, 2)) {
    for (const auto& y : universal::sub_maps_between(iv, x.src, g.src)) {
      if (compose(f, x) != compose(g, y)) continue;
      std::size_t n = 0;
      for (const auto& k : universal::sub_maps_between(iv, x.src, pb.P)) n += compose(pb.to_f, k) == x && compose(pb.to_g, k) == y;
      CHECK(n == 1);
    }
  }
}

TEST_CASE("pullback along a shuffle") {
  const auto iv = interval_line(1, 3);
  const auto sigma = shuf(iv, {"[0,2]"}, {"[1,3]"}, {0}, {"+1:[0,2]"});
  SUBCASE("identity sub-map") {
    const auto pb = pullback_along_shuffle(iv, sigma, identity_sub_map(sigma.dst));
    CHECK(pb.b_star == sigma.src);
    CHECK(pb.sigma_tilde == sigma);
  }
  SUBCASE("translation") {
    const auto q = sub(iv, {"[1,2]", "[2,3]"}, {"[1,3]"}, {0, 0});
    const auto pb = pullback_along_shuffle(iv, sigma, q);
    CHECK(pb.b_star == tw(iv, {"[0,1]", "[1,2]"}));
    CHECK(is_covering_sub_map(iv, pb.q_star));
    CHECK(square_commutes(iv, pb.sigma_tilde, sigma, pb.q_star, q));
    CHECK(iv.hmor(pb.sigma_tilde.comps[0]).name == "+1:[0,1]");
  }
  SUBCASE("conjugation in Q(i)") {
    const auto qi = quadratic(-1, 25);
    const auto conj = shuf(qi, {"p5*p5'"}, {"p5*p5'"}, {0}, {"conj:p5*p5'"});
    const auto q = sub(qi, {"p5", "p5'"}, {"p5*p5'"}, {0, 0});
    const auto pb = pullback_along_shuffle(qi, conj, q);
    CHECK(pb.b_star == tw(qi, {"p5'", "p5"}));
    CHECK(qi.hmor(pb.sigma_tilde.comps[0]).name == "conj:p5'");
    CHECK(qi.hmor(pb.sigma_tilde.comps[1]).name == "conj:p5");
    CHECK(helpers::is_pullback_square(qi, pb.sigma_tilde, conj, pb.q_star, q));
  }
}

TEST_CASE("pullback along a shuffle is terminal") {
  for (const auto& c : {interval_line(1, 3), s_g(cyclic_group(2)), quadratic(-1, 10)}) {
    const auto t = universal::pullback_terminality(c, 3);
    INFO((t.examples.empty() ? std::string() : t.examples.front()));
    CHECK(t.instances > 0);
    CHECK(t.failures == 0);
  }
}

TEST_CASE("pushforward") {
  SUBCASE("identity shuffle") {
    const auto iv = interval_line(1, 3);
    const auto p = sub(iv, {"[0,1]", "[2,3]"}, {"[0,3]"}, {0, 0});
    CHECK(pushforward(iv, identity_shuffle(iv, p.dst), p) == p);
  }
  SUBCASE("translation on the half grid") {
    const auto iv = interval_line(2, 2);
    const auto sigma = shuf(iv, {"[0,1]"}, {"[1,2]"}, {0}, {"+1:[0,1]"});
    const auto push = pushforward(iv, sigma, sub(iv, {"[0,1/2]"}, {"[0,1]"}, {0}));
    CHECK(push == sub(iv, {"[1,3/2]"}, {"[1,2]"}, {0}));
  }
  SUBCASE("two pieces onto one, one side empty") {
    const auto iv = interval_line(1, 4);
    const auto sigma = shuf(iv, {"[0,1]", "[2,3]"}, {"[3,4]"}, {0, 0}, {"+3:[0,1]", "+1:[2,3]"});
    const auto push = pushforward(iv, sigma, sub(iv, {"[0,1]"}, {"[0,1]", "[2,3]"}, {0}));
    CHECK(push.src.size() == 0);
    CHECK(push.dst == sigma.dst);
  }
  SUBCASE("empty fiber keeps the whole component") {
    const auto iv = interval_line(1, 3);
    const auto sigma = shuf(iv, {"[0,1]"}, {"[1,2]", "[2,3]"}, {0}, {"+1:[0,1]"});
    const auto push = pushforward(iv, sigma, sub(iv, {"[0,1]"}, {"[0,1]"}, {0}));
    CHECK(push == sub(iv, {"[1,2]", "[2,3]"}, {"[1,2]", "[2,3]"}, {0, 1}));
  }
}

TEST_CASE("pushforward is right adjoint to pulling back") {
  for (const auto& c : {interval_line(1, 3), s_g(cyclic_group(2)), quadratic(-1, 10)}) {
    const auto t = universal::pushforward_adjunction(c, 3);
    INFO((t.examples.empty() ? std::string() : t.examples.front()));
    CHECK(t.instances > 0);
    CHECK(t.failures == 0);
  }
}

TEST_CASE("pullback and pushforward preserve coverings; unit and counit") {
  const auto c = interval_line(1, 3);
  std::size_t checked = 0;
  for (std::size_t na = 1; na <= 2; ++na) {
    for (const auto& A : objects_of_size(c, na)) {
      for (const auto& B : objects_of_size(c, 3 - na)) {
        for (const auto& sigma : shuffles(c, A, B)) {
          const bool inj = is_injective(sigma.set_map, B.size());
          std::vector<bool> hit(B.size());
          for (auto j : sigma.set_map) hit[j] = true;
          const bool surj = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
          for (const auto& p : sub_maps_into(c, A, 2)) {
            const auto push = pushforward(c, sigma, p);
            if (is_covering_sub_map(c, p)) CHECK(is_covering_sub_map(c, push));
            if (inj) CHECK(helpers::same_up_to_reindex(pullback_along_shuffle(c, sigma, push).q_star, p));
            ++checked;
          }
          for (const auto& q : sub_maps_into(c, B, 2)) {
            const auto pb = pullback_along_shuffle(c, sigma, q);
            if (is_covering_sub_map(c, q)) CHECK(is_covering_sub_map(c, pb.q_star));
            if (surj) CHECK(helpers::same_up_to_reindex(pushforward(c, sigma, pb.q_star), q));
          }
        }
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("horizontal pushout") {
  const auto iv = interval_line(1, 3);
  SUBCASE("empty source is a coproduct") {
    const auto C = tw(iv, {"[0,1]"}), B = tw(iv, {"[1,3]", "[2,3]"});
    const auto hp = horizontal_pushout(iv, Shuffle{{}, C, {}, {}}, Shuffle{{}, B, {}, {}});
    CHECK(hp.D == concat(C, B));
    CHECK(hp.from_b.set_map == std::vector<std::size_t>{1, 2});
  }
  SUBCASE("identity pushed leg") {
    const auto tau = shuf(iv, {"[0,1]"}, {"[2,3]"}, {0}, {"+2:[0,1]"});
    const auto hp = horizontal_pushout(iv, tau, identity_shuffle(iv, tau.src));
    CHECK(hp.D == tau.dst);
    CHECK(hp.from_b == tau);
  }
  SUBCASE("S_C2 cocone") {
    const auto s = s_g(cyclic_group(2));
    const auto tau = shuf(s, {"*"}, {"*"}, {0}, {"g:g"});
    const auto sigma = shuf(s, {"*"}, {"*"}, {0}, {"id:*"});
    const auto hp = horizontal_pushout(s, tau, sigma);
    CHECK(hp.D == tw(s, {"*"}));
    CHECK(s.hmor(hp.from_b.comps[0]).name == "g:g");
    CHECK(compose(s, hp.from_c, tau) == compose(s, hp.from_b, sigma));
    // Any cocone (u, v) with u tau = v sigma factors uniquely through (from_c, from_b).
    for (const auto& u : shuffles(s, tau.dst, tw(s, {"*"}))) {
      for (const auto& v : shuffles(s, sigma.dst, tw(s, {"*"}))) {
        if (compose(s, u, tau) != compose(s, v, sigma)) continue;
        std::size_t n = 0;
        for (const auto& m : shuffles(s, hp.D, tw(s, {"*"}))) n += compose(s, m, hp.from_c) == u && compose(s, m, hp.from_b) == v;
        CHECK(n == 1);
      }
    }
  }
  SUBCASE("non-injective pushed leg") {
    const auto sigma = shuf(iv, {"[0,1]", "[1,2]"}, {"[1,2]"}, {0, 0}, {"+1:[0,1]", "id:[1,2]"});
    CHECK_THROWS_AS(horizontal_pushout(iv, identity_shuffle(iv, sigma.src), sigma), PreconditionError);
  }
}

TEST_CASE("induced sub-map between horizontal pushouts") {
  SUBCASE("identity verticals") {
    const auto iv = interval_line(1, 3);
    const auto tau = shuf(iv, {"[0,1]"}, {"[1,2]"}, {0}, {"+1:[0,1]"});
    const auto sigma = shuf(iv, {"[0,1]"}, {"[0,1]", "[2,3]"}, {0}, {"id:[0,1]"});
    const PushoutGrid g{tau, sigma, tau, sigma, identity_sub_map(tau.dst), identity_sub_map(tau.src),
                        identity_sub_map(sigma.dst)};
    const auto out = induced_pushout_submap(iv, g);
    CHECK(out == identity_sub_map(horizontal_pushout(iv, tau, sigma).D));
  }
  SUBCASE("S_C2") {
    const auto s = s_g(cyclic_group(2));
    const auto tau = shuf(s, {"*"}, {"*"}, {0}, {"g:g"});
    const auto sigma = shuf(s, {"*"}, {"*", "*"}, {1}, {"id:*"});
    const auto id_a = identity_sub_map(tau.src);
    const PushoutGrid g{tau, sigma, tau, sigma, identity_sub_map(tau.dst), id_a, identity_sub_map(sigma.dst)};
    const auto out = induced_pushout_submap(s, g);
    CHECK(out == identity_sub_map(tw(s, {"*", "*"})));
  }
  SUBCASE("interval grid built from a shuffle pullback") {
    const auto iv = interval_line(1, 3);
    const auto tau = shuf(iv, {"[0,2]"}, {"[1,3]"}, {0}, {"+1:[0,2]"});
    const auto sigma = shuf(iv, {"[0,2]"}, {"[0,2]", "[2,3]"}, {0}, {"id:[0,2]"});
    const auto q = sub(iv, {"[0,1]", "[1,2]", "[2,3]"}, {"[0,2]", "[2,3]"}, {0, 0, 1});
    const auto pb = pullback_along_shuffle(iv, sigma, q);
    // Carry the refinement across tau as well.
    const auto r = pushforward(iv, tau, pb.q_star);
    const auto left = pullback_along_shuffle(iv, tau, r);
    const auto k = factor_through(iv, pb.q_star, left.q_star);
    REQUIRE(k.has_value());
    Shuffle reindex{k->src, left.b_star, k->set_map, {}};
    for (ObjectId x : k->src.components) reindex.comps.push_back(iv.identity[x.v]);
    const PushoutGrid g{compose(iv, left.sigma_tilde, reindex), pb.sigma_tilde, tau, sigma, r, pb.q_star, q};
    const auto out = induced_pushout_submap(iv, g);
    CHECK(is_covering_sub_map(iv, out));
    CHECK(out.dst == horizontal_pushout(iv, tau, sigma).D);
  }
}

TEST_CASE("induced sub-map between pushforwards") {
  SUBCASE("identity verticals") {
    const auto iv = interval_line(1, 3);
    const auto sigma = shuf(iv, {"[0,1]"}, {"[2,3]"}, {0}, {"+2:[0,1]"});
    const auto f = identity_sub_map(sigma.src);
    const PushforwardGrid g{f, f, sigma, sigma, identity_sub_map(f.src), identity_sub_map(f.dst), identity_sub_map(sigma.dst)};
    CHECK(induced_pushforward_submap(iv, g) == identity_sub_map(pushforward(iv, sigma, f).src));
  }
  SUBCASE("S_C2: the top pushforward equals the bottom one") {
    const auto s = s_g(cyclic_group(2));
    const auto sigma = shuf(s, {"*", "*"}, {"*"}, {0, 0}, {"g:g", "id:*"});
    const auto f = sub(s, {"*"}, {"*", "*"}, {1});
    const PushforwardGrid g{f, f, sigma, sigma, identity_sub_map(f.src), identity_sub_map(f.dst), identity_sub_map(sigma.dst)};
    const auto out = induced_pushforward_submap(s, g);
    CHECK(out.src == pushforward(s, sigma, f).src);
    CHECK(out.dst == out.src);
  }
  SUBCASE("interval grid with covering verticals") {
    const auto iv = interval_line(1, 3);
    const auto sigma = shuf(iv, {"[0,2]"}, {"[1,3]"}, {0}, {"+1:[0,2]"});
    const auto q = sub(iv, {"[1,2]", "[2,3]"}, {"[1,3]"}, {0, 0});
    const auto pb = pullback_along_shuffle(iv, sigma, q);
    const auto f = identity_sub_map(sigma.src);
    const auto r = pb.q_star;
    const auto f_top = identity_sub_map(pb.b_star);
    const PushforwardGrid g{f_top, f, pb.sigma_tilde, sigma, r, pb.q_star, q};
    const auto out = induced_pushforward_submap(iv, g);
    CHECK(is_covering_sub_map(iv, out));
  }
}

TEST_CASE("squares between covering sub-maps are pullbacks") {
  for (const auto& c : {interval_line(1, 3), s_g(cyclic_group(2))}) {
    std::size_t squares = 0;
    for (std::size_t na = 1; na <= 2; ++na) {
      for (const auto& A : objects_of_size(c, na)) {
        for (const auto& B : objects_of_size(c, na)) {
          for (const auto& bottom : shuffles(c, A, B)) {
            for (const auto& left : sub_maps_into(c, A, 3 - na + 1)) {
              if (!is_covering_sub_map(c, left)) continue;
              for (const auto& right : sub_maps_into(c, B, 3 - na + 1)) {
                if (!is_covering_sub_map(c, right)) continue;
                for (const auto& top : shuffles(c, left.src, right.src)) {
                  if (!square_commutes(c, top, bottom, left, right)) continue;
                  ++squares;
                  CHECK(helpers::is_pullback_square(c, top, bottom, left, right));
                  CHECK(is_bijective(top.set_map, top.dst.size()) == is_bijective(bottom.set_map, bottom.dst.size()));
                }
              }
            }
          }
        }
      }
    }
    CHECK(squares > 0);
  }
}

TEST_CASE("composites of sub-maps") {
  const auto c = interval_line(1, 3);
  for (const auto& A : objects_of_size(c, 1)) {
    for (const auto& p : sub_maps_into(c, A, 3)) {
      for (const auto& r : sub_maps_into(c, p.src, 3)) {
        const auto pr = compose(p, r);
        CHECK(is_sub_map(c, pr));
        if (is_covering_sub_map(c, p) && is_covering_sub_map(c, r)) CHECK(is_covering_sub_map(c, pr));
      }
    }
  }
}

TEST_CASE("shuffles factor as componentwise then set map") {
  const auto c = interval_line(1, 3);
  for (const auto& A : objects_of_size(c, 2)) {
    for (const auto& B : objects_of_size(c, 2)) {
      for (const auto& s : shuffles(c, A, B)) {
        TwObject mid;
        for (std::size_t i = 0; i < A.size(); ++i) mid.components.push_back(B[s.set_map[i]]);
        const Shuffle pointwise{A, mid, {0, 1}, s.comps};
        Shuffle pure{mid, B, s.set_map, {}};
        for (ObjectId x : mid.components) pure.comps.push_back(c.identity[x.v]);
        CHECK(compose(c, pure, pointwise) == s);
      }
    }
  }
}
