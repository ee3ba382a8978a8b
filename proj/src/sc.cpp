#include "scissors/sc.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "scissors/error.hpp"

namespace scissors {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

ScMorphism normalize(ScMorphism f) {
  const std::size_t n = f.p.src.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(f.p.set_map[a], f.p.src[a]) < std::pair(f.p.set_map[b], f.p.src[b]);
  });
  ScMorphism g;
  g.p.dst = std::move(f.p.dst);
  g.sigma.dst = std::move(f.sigma.dst);
  for (std::size_t i : order) {
    g.p.src.components.push_back(f.p.src[i]);
    g.p.set_map.push_back(f.p.set_map[i]);
    g.sigma.set_map.push_back(f.sigma.set_map[i]);
    g.sigma.comps.push_back(f.sigma.comps[i]);
  }
  g.sigma.src = g.p.src;
  return g;
}

}  // namespace

std::string to_string(const PolytopeComplex& c, const ScMorphism& f) {
  return "[" + to_string(c, f.p) + " | " + to_string(c, f.sigma) + "]";
}

ScMorphism make_sc_morphism(const PolytopeComplex& c, SubMap p, Shuffle sigma) {
  require(p.src == sigma.src, "span legs have different apexes");
  check_sub_map(c, p);
  check_shuffle(c, sigma);
  return normalize(ScMorphism{std::move(p), std::move(sigma)});
}

ScMorphism sc_identity(const PolytopeComplex& c, const TwObject& a) {
  return ScMorphism{identity_sub_map(a), identity_shuffle(c, a)};
}

ScMorphism sc_zero(const TwObject& a, const TwObject& b) {
  return ScMorphism{SubMap{{}, a, {}}, Shuffle{{}, b, {}, {}}};
}

ScMorphism sc_shuffle(const PolytopeComplex& c, const Shuffle& sigma) {
  return make_sc_morphism(c, identity_sub_map(sigma.src), sigma);
}

ScMorphism sc_compose(const PolytopeComplex& c, const ScMorphism& f, const ScMorphism& g) {
  require(f.dst() == g.src(), "sc_compose: target of the first morphism is not the source of the second");
  const ShufflePullback pb = pullback_along_shuffle(c, f.sigma, g.p);
  return normalize(ScMorphism{compose(f.p, pb.q_star), compose(c, g.sigma, pb.sigma_tilde)});
}

bool sc_equal(const ScMorphism& f, const ScMorphism& g) { return normalize(f) == normalize(g); }

MorphismKind classify(const PolytopeComplex& c, const ScMorphism& f) {
  MorphismKind k;
  const bool covering = is_covering_sub_map(c, f.p);
  const bool injective = is_injective(f.sigma.set_map, f.dst().size());
  const bool bijective = is_bijective(f.sigma.set_map, f.dst().size());
  k.cofibration = covering && injective;
  k.weak_equivalence = covering && bijective;
  bool p_iso = is_bijective(f.p.set_map, f.src().size());
  for (std::size_t i = 0; p_iso && i < f.apex().size(); ++i) p_iso = f.apex()[i] == f.src()[f.p.set_map[i]];
  k.isomorphism = p_iso && bijective;
  return k;
}

ScMorphism sc_coproduct(const PolytopeComplex& c, const std::vector<ScMorphism>& fs) {
  (void)c;
  ScMorphism out;
  for (const ScMorphism& f : fs) {
    const std::size_t src_off = out.p.dst.size(), dst_off = out.sigma.dst.size();
    out.p.src = concat(out.p.src, f.apex());
    out.p.dst = concat(out.p.dst, f.src());
    out.sigma.dst = concat(out.sigma.dst, f.dst());
    for (std::size_t j : f.p.set_map) out.p.set_map.push_back(j + src_off);
    for (std::size_t j : f.sigma.set_map) out.sigma.set_map.push_back(j + dst_off);
    out.sigma.comps.insert(out.sigma.comps.end(), f.sigma.comps.begin(), f.sigma.comps.end());
  }
  out.sigma.src = out.p.src;
  return normalize(std::move(out));
}

std::optional<ScMorphism> sc_inverse(const PolytopeComplex& c, const ScMorphism& f) {
  if (!classify(c, f).isomorphism) return std::nullopt;
  const Shuffle back = inverse(c, f.sigma);  // dst -> apex
  Shuffle sigma{f.dst(), f.src(), {}, back.comps};
  for (std::size_t i : back.set_map) sigma.set_map.push_back(f.p.set_map[i]);
  return make_sc_morphism(c, identity_sub_map(f.dst()), std::move(sigma));
}

ScPushout sc_pushout(const PolytopeComplex& c, const ScMorphism& f, const ScMorphism& cof) {
  require(f.src() == cof.src(), "sc_pushout: morphisms have different sources");
  require(classify(c, cof).cofibration, "sc_pushout: the second morphism is not a cofibration");
  const SubMap& q = f.p;         // A'' >-> A
  const Shuffle& tau = f.sigma;  // A'' -> C
  const SubMap& p = cof.p;       // A' >-> A, covering
  const Shuffle& sigma = cof.sigma;

  const VerticalPullback tilde = vertical_pullback(c, q, p);  // p' = to_f, q' = to_g
  const SubMap s = pushforward(c, tau, tilde.to_f);           // C' >-> C
  const ShufflePullback left = pullback_along_shuffle(c, tau, s);
  const auto r_prime = factor_through(c, compose(q, left.q_star), p);
  if (!r_prime) throw Error("sc_pushout: refinement does not factor through the cofibration's cover");
  const SubMap r = pushforward(c, sigma, *r_prime);  // B' >-> B
  const ShufflePullback right = pullback_along_shuffle(c, sigma, r);

  // Identify sigma^* B' with A''' by (piece of A', component).
  std::map<std::pair<std::size_t, ObjectId>, std::size_t> by_key;
  for (std::size_t m = 0; m < right.b_star.size(); ++m) by_key[{right.q_star.set_map[m], right.b_star[m]}] = m;
  if (by_key.size() != left.b_star.size()) throw Error("sc_pushout: pulled-back pieces do not match");
  Shuffle sigma_prime{left.b_star, r.src, {}, {}};
  for (std::size_t k = 0; k < left.b_star.size(); ++k) {
    const auto it = by_key.find({r_prime->set_map[k], left.b_star[k]});
    if (it == by_key.end()) throw Error("sc_pushout: pulled-back pieces do not match");
    sigma_prime.set_map.push_back(right.sigma_tilde.set_map[it->second]);
    sigma_prime.comps.push_back(right.sigma_tilde.comps[it->second]);
  }

  const HorizontalPushout hp = horizontal_pushout(c, left.sigma_tilde, sigma_prime);
  ScPushout out;
  out.D = hp.D;
  out.from_c = make_sc_morphism(c, s, hp.from_c);
  out.from_b = make_sc_morphism(c, r, hp.from_b);
  return out;
}

namespace {

// Adds to `u` the pieces of g's apex that lie in a piece of `leg` landing in one of `slots`.
bool carry_pieces(const PolytopeComplex& c, const ScMorphism& leg, const ScMorphism& g, const std::vector<bool>& slots,
                  ScMorphism& u) {
  const auto k = factor_through(c, g.p, leg.p);
  if (!k) return false;
  for (std::size_t i = 0; i < g.apex().size(); ++i) {
    const std::size_t piece = k->set_map[i];
    const std::size_t d = leg.sigma.set_map[piece];
    if (!slots[d]) continue;
    const auto back = c.inverse(leg.sigma.comps[piece]);
    if (!back) return false;
    const Lift lift = restrict_h(c, *back, g.apex()[i]);
    const auto h = c.compose(g.sigma.comps[i], lift.hmor);
    if (!h) return false;
    u.p.src.components.push_back(lift.src);
    u.p.set_map.push_back(d);
    u.sigma.set_map.push_back(g.sigma.set_map[i]);
    u.sigma.comps.push_back(*h);
  }
  return true;
}

}  // namespace

std::optional<ScMorphism> pushout_mediator(const PolytopeComplex& c, const ScMorphism& f, const ScMorphism& cof,
                                           const ScPushout& po, const ScMorphism& x, const ScMorphism& y) {
  if (x.src() != f.dst() || y.src() != cof.dst() || x.dst() != y.dst()) return std::nullopt;
  ScMorphism u;
  u.p.dst = po.D;
  u.sigma.dst = x.dst();
  std::vector<bool> from_c(po.D.size(), false);
  for (std::size_t d : po.from_c.sigma.set_map) from_c[d] = true;
  std::vector<bool> rest(po.D.size());
  for (std::size_t d = 0; d < po.D.size(); ++d) rest[d] = !from_c[d];
  if (!carry_pieces(c, po.from_c, x, from_c, u) || !carry_pieces(c, po.from_b, y, rest, u)) return std::nullopt;
  u.sigma.src = u.p.src;
  if (!is_sub_map(c, u.p)) return std::nullopt;
  u = normalize(std::move(u));
  if (!sc_equal(sc_compose(c, po.from_c, u), x) || !sc_equal(sc_compose(c, po.from_b, u), y)) return std::nullopt;
  return u;
}

Cofiber cofiber(const PolytopeComplex& c, const ScMorphism& cof) {
  require(classify(c, cof).cofibration, "cofiber: not a cofibration");
  const ScPushout po = sc_pushout(c, sc_zero(cof.src(), TwObject{}), cof);
  Cofiber out;
  out.Q = po.D;
  out.quot = po.from_b;
  // quot's apex consists of whole components of B, moved bijectively onto Q.
  const Shuffle back = inverse(c, out.quot.sigma);  // Q -> apex
  Shuffle to_b{out.Q, out.quot.src(), {}, back.comps};
  for (std::size_t i = 0; i < back.set_map.size(); ++i) {
    const std::size_t piece = back.set_map[i];
    const std::size_t j = out.quot.p.set_map[piece];
    if (out.quot.apex()[piece] != out.quot.src()[j]) throw Error("cofiber: quotient does not keep whole components");
    to_b.set_map.push_back(j);
  }
  out.section = make_sc_morphism(c, identity_sub_map(out.Q), std::move(to_b));
  return out;
}

namespace {

// Pairwise disjoint families of polytopes below x, each sorted by id.
const std::vector<std::vector<ObjectId>>& disjoint_families(const PolytopeComplex& c, ObjectId x,
                                                            std::map<ObjectId, std::vector<std::vector<ObjectId>>>& memo) {
  auto it = memo.find(x);
  if (it != memo.end()) return it->second;
  std::vector<ObjectId> below;
  for (ObjectId y : c.down[x.v]) {
    if (y != c.bottom) below.push_back(y);
  }
  std::vector<std::vector<ObjectId>> out;
  std::vector<ObjectId> cur;
  std::function<void(std::size_t)> go = [&](std::size_t from) {
    out.push_back(cur);
    for (std::size_t k = from; k < below.size(); ++k) {
      if (std::all_of(cur.begin(), cur.end(), [&](ObjectId z) { return c.disjoint(z, below[k]); })) {
        cur.push_back(below[k]);
        go(k + 1);
        cur.pop_back();
      }
    }
  };
  go(0);
  return memo.emplace(x, std::move(out)).first->second;
}

}  // namespace

void enumerate_sc_morphisms(const PolytopeComplex& c, const TwObject& a, const TwObject& b, std::size_t max_apex,
                            const std::function<void(const ScMorphism&)>& visit, std::size_t limit) {
  check_object(c, a);
  check_object(c, b);
  std::map<ObjectId, std::vector<std::vector<ObjectId>>> memo;
  std::size_t count = 0;
  ScMorphism f;
  f.p.dst = a;
  f.sigma.dst = b;

  std::function<void(std::size_t)> place = [&](std::size_t i) {
    if (i == f.p.src.size()) {
      f.sigma.src = f.p.src;
      if (++count > limit) throw BoundExceeded("more than " + std::to_string(limit) + " morphisms");
      visit(f);
      return;
    }
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (HMorId h : c.homs(f.p.src[i], b[k])) {
        f.sigma.set_map.push_back(k);
        f.sigma.comps.push_back(h);
        place(i + 1);
        f.sigma.set_map.pop_back();
        f.sigma.comps.pop_back();
      }
    }
  };
  std::function<void(std::size_t)> choose = [&](std::size_t j) {
    if (j == a.size()) {
      place(0);
      return;
    }
    for (const auto& fam : disjoint_families(c, a[j], memo)) {
      if (f.p.src.size() + fam.size() > max_apex) continue;
      for (ObjectId y : fam) {
        f.p.src.components.push_back(y);
        f.p.set_map.push_back(j);
      }
      choose(j + 1);
      for (std::size_t t = 0; t < fam.size(); ++t) {
        f.p.src.components.pop_back();
        f.p.set_map.pop_back();
      }
    }
  };
  choose(0);
}

std::vector<ScMorphism> sc_morphisms(const PolytopeComplex& c, const TwObject& a, const TwObject& b,
                                     std::size_t max_apex, std::size_t limit) {
  std::vector<ScMorphism> out;
  enumerate_sc_morphisms(c, a, b, max_apex, [&](const ScMorphism& f) { out.push_back(f); }, limit);
  return out;
}

}  // namespace scissors
