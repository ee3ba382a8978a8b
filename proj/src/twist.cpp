#include "scissors/twist.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "scissors/error.hpp"

namespace scissors {

namespace {

std::string set_map_text(const std::vector<std::size_t>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + std::to_string(m[i]);
  return out + "]";
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace

std::string to_string(const PolytopeComplex& c, const TwObject& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? ", " : "") + c.name(a[i]);
  return out + "}";
}

std::string to_string(const PolytopeComplex& c, const SubMap& p) {
  return to_string(c, p.src) + " >-> " + to_string(c, p.dst) + " via " + set_map_text(p.set_map);
}

std::string to_string(const PolytopeComplex& c, const Shuffle& s) {
  std::string comps;
  for (std::size_t i = 0; i < s.comps.size(); ++i) comps += (i ? ", " : "") + c.hmor(s.comps[i]).name;
  return to_string(c, s.src) + " -> " + to_string(c, s.dst) + " via " + set_map_text(s.set_map) + " (" + comps + ")";
}

void check_object(const PolytopeComplex& c, const TwObject& a) {
  for (ObjectId x : a.components) {
    require(x.v < c.size(), "object id out of range");
    require(x != c.bottom, "families may not contain the bottom object");
  }
}

void check_sub_map(const PolytopeComplex& c, const SubMap& p) {
  check_object(c, p.src);
  check_object(c, p.dst);
  require(p.set_map.size() == p.src.size(), "sub-map set map has the wrong length");
  for (std::size_t i = 0; i < p.src.size(); ++i) {
    require(p.set_map[i] < p.dst.size(), "sub-map set map points outside its target");
    require(c.leq(p.src[i], p.dst[p.set_map[i]]),
            "sub-map component " + c.name(p.src[i]) + " is not below " + c.name(p.dst[p.set_map[i]]));
  }
  for (std::size_t i = 0; i < p.src.size(); ++i) {
    for (std::size_t k = i + 1; k < p.src.size(); ++k) {
      if (p.set_map[i] == p.set_map[k]) {
        require(c.disjoint(p.src[i], p.src[k]),
                "sub-map pieces " + c.name(p.src[i]) + " and " + c.name(p.src[k]) + " overlap");
      }
    }
  }
}

bool is_sub_map(const PolytopeComplex& c, const SubMap& p) {
  try {
    check_sub_map(c, p);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

void check_shuffle(const PolytopeComplex& c, const Shuffle& s) {
  check_object(c, s.src);
  check_object(c, s.dst);
  require(s.set_map.size() == s.src.size() && s.comps.size() == s.src.size(), "shuffle data has the wrong length");
  for (std::size_t i = 0; i < s.src.size(); ++i) {
    require(s.set_map[i] < s.dst.size(), "shuffle set map points outside its target");
    require(s.comps[i].v < c.hmors.size(), "shuffle component out of range");
    const HMor& h = c.hmor(s.comps[i]);
    require(h.src == s.src[i] && h.dst == s.dst[s.set_map[i]],
            "shuffle component " + h.name + " does not run " + c.name(s.src[i]) + " -> " +
                c.name(s.dst[s.set_map[i]]));
  }
}

bool is_injective(const std::vector<std::size_t>& set_map, std::size_t codomain) {
  std::vector<bool> hit(codomain, false);
  for (std::size_t j : set_map) {
    if (j >= codomain || hit[j]) return false;
    hit[j] = true;
  }
  return true;
}

bool is_bijective(const std::vector<std::size_t>& set_map, std::size_t codomain) {
  return set_map.size() == codomain && is_injective(set_map, codomain);
}

bool is_covering_sub_map(const PolytopeComplex& c, const SubMap& p) {
  std::vector<Family> fibers(p.dst.size());
  for (std::size_t i = 0; i < p.src.size(); ++i) fibers[p.set_map[i]].push_back(p.src[i]);
  for (std::size_t j = 0; j < p.dst.size(); ++j) {
    if (!is_cover(c, p.dst[j], make_family(fibers[j]))) return false;
  }
  return true;
}

SubMap identity_sub_map(const TwObject& a) {
  SubMap p{a, a, std::vector<std::size_t>(a.size())};
  std::iota(p.set_map.begin(), p.set_map.end(), 0);
  return p;
}

Shuffle identity_shuffle(const PolytopeComplex& c, const TwObject& a) {
  Shuffle s{a, a, std::vector<std::size_t>(a.size()), {}};
  std::iota(s.set_map.begin(), s.set_map.end(), 0);
  for (ObjectId x : a.components) s.comps.push_back(c.identity[x.v]);
  return s;
}

SubMap compose(const SubMap& outer, const SubMap& inner) {
  require(inner.dst == outer.src, "sub-maps are not composable");
  SubMap p{inner.src, outer.dst, {}};
  for (std::size_t j : inner.set_map) p.set_map.push_back(outer.set_map[j]);
  return p;
}

Shuffle compose(const PolytopeComplex& c, const Shuffle& outer, const Shuffle& inner) {
  require(inner.dst == outer.src, "shuffles are not composable");
  Shuffle s{inner.src, outer.dst, {}, {}};
  for (std::size_t i = 0; i < inner.src.size(); ++i) {
    const std::size_t j = inner.set_map[i];
    s.set_map.push_back(outer.set_map[j]);
    const auto h = c.compose(outer.comps[j], inner.comps[i]);
    require(h.has_value(), "composite of " + c.hmor(outer.comps[j]).name + " and " + c.hmor(inner.comps[i]).name +
                               " is undefined");
    s.comps.push_back(*h);
  }
  return s;
}

Shuffle inverse(const PolytopeComplex& c, const Shuffle& s) {
  require(is_bijective(s.set_map, s.dst.size()), "only shuffles with bijective set maps are invertible");
  Shuffle inv{s.dst, s.src, std::vector<std::size_t>(s.dst.size()), std::vector<HMorId>(s.dst.size())};
  for (std::size_t i = 0; i < s.src.size(); ++i) {
    const auto h = c.inverse(s.comps[i]);
    require(h.has_value(), c.hmor(s.comps[i]).name + " has no inverse");
    inv.set_map[s.set_map[i]] = i;
    inv.comps[s.set_map[i]] = *h;
  }
  return inv;
}

std::optional<SubMap> factor_through(const PolytopeComplex& c, const SubMap& a, const SubMap& b) {
  require(a.dst == b.dst, "factor_through: sub-maps have different targets");
  SubMap k{a.src, b.src, {}};
  for (std::size_t i = 0; i < a.src.size(); ++i) {
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < b.src.size(); ++j) {
      if (b.set_map[j] == a.set_map[i] && c.leq(a.src[i], b.src[j])) {
        found = j;
        break;
      }
    }
    if (!found) return std::nullopt;
    k.set_map.push_back(*found);
  }
  return k;
}

bool square_commutes(const PolytopeComplex& c, const Shuffle& top, const Shuffle& bottom, const SubMap& left,
                     const SubMap& right) {
  if (top.src != left.src || top.dst != right.src || bottom.src != left.dst || bottom.dst != right.dst) return false;
  for (std::size_t i = 0; i < top.src.size(); ++i) {
    const std::size_t below = left.set_map[i];
    if (right.set_map[top.set_map[i]] != bottom.set_map[below]) return false;
    const auto lift = c.restriction(bottom.comps[below], top.dst[top.set_map[i]]);
    if (!lift || *lift != top.comps[i]) return false;
  }
  return true;
}

VerticalPullback vertical_pullback(const PolytopeComplex& c, const SubMap& f, const SubMap& g) {
  require(f.dst == g.dst, "vertical_pullback: sub-maps have different targets");
  VerticalPullback out;
  out.to_f.dst = f.src;
  out.to_g.dst = g.src;
  for (std::size_t i = 0; i < f.src.size(); ++i) {
    for (std::size_t j = 0; j < g.src.size(); ++j) {
      if (f.set_map[i] != g.set_map[j]) continue;
      const ObjectId m = c.meet(f.src[i], g.src[j]);
      if (m == c.bottom) continue;
      out.P.components.push_back(m);
      out.to_f.set_map.push_back(i);
      out.to_g.set_map.push_back(j);
    }
  }
  out.to_f.src = out.P;
  out.to_g.src = out.P;
  return out;
}

ShufflePullback pullback_along_shuffle(const PolytopeComplex& c, const Shuffle& sigma, const SubMap& q) {
  require(sigma.dst == q.dst, "pullback_along_shuffle: shuffle and sub-map have different targets");
  ShufflePullback out;
  out.q_star.dst = sigma.src;
  out.sigma_tilde.dst = q.src;
  for (std::size_t i = 0; i < sigma.src.size(); ++i) {
    for (std::size_t j = 0; j < q.src.size(); ++j) {
      if (sigma.set_map[i] != q.set_map[j]) continue;
      const Lift lift = restrict_h(c, sigma.comps[i], q.src[j]);
      out.b_star.components.push_back(lift.src);
      out.q_star.set_map.push_back(i);
      out.sigma_tilde.set_map.push_back(j);
      out.sigma_tilde.comps.push_back(lift.hmor);
    }
  }
  out.q_star.src = out.b_star;
  out.sigma_tilde.src = out.b_star;
  return out;
}

SubMap pushforward(const PolytopeComplex& c, const Shuffle& sigma, const SubMap& p) {
  require(sigma.src == p.dst, "pushforward: sub-map does not land in the source of the shuffle");
  SubMap out;
  out.dst = sigma.dst;
  for (std::size_t j = 0; j < sigma.dst.size(); ++j) {
    // Each piece over i, carried into b_j.
    std::vector<std::vector<ObjectId>> factors;
    for (std::size_t i = 0; i < sigma.src.size(); ++i) {
      if (sigma.set_map[i] != j) continue;
      const auto back = c.inverse(sigma.comps[i]);
      require(back.has_value(), c.hmor(sigma.comps[i]).name + " has no inverse");
      std::vector<ObjectId> moved;
      for (std::size_t k = 0; k < p.src.size(); ++k) {
        if (p.set_map[k] == i) moved.push_back(restrict_h(c, *back, p.src[k]).src);
      }
      factors.push_back(std::move(moved));
    }
    if (factors.empty()) {
      out.src.components.push_back(sigma.dst[j]);
      out.set_map.push_back(j);
      continue;
    }
    // Meets over all tuples, in lexicographic order of the tuple.
    std::vector<std::size_t> pick(factors.size(), 0);
    if (std::any_of(factors.begin(), factors.end(), [](const auto& f) { return f.empty(); })) continue;
    while (true) {
      ObjectId m = factors[0][pick[0]];
      for (std::size_t t = 1; t < factors.size() && m != c.bottom; ++t) m = c.meet(m, factors[t][pick[t]]);
      if (m != c.bottom) {
        out.src.components.push_back(m);
        out.set_map.push_back(j);
      }
      std::size_t t = factors.size();
      while (t > 0 && ++pick[t - 1] == factors[t - 1].size()) pick[--t] = 0;
      if (t == 0) break;
    }
  }
  return out;
}

HorizontalPushout horizontal_pushout(const PolytopeComplex& c, const Shuffle& tau, const Shuffle& sigma) {
  require(tau.src == sigma.src, "horizontal_pushout: shuffles have different sources");
  require(is_injective(sigma.set_map, sigma.dst.size()), "horizontal_pushout: the pushed shuffle must be injective");
  HorizontalPushout out;
  out.D = tau.dst;
  std::vector<std::optional<std::size_t>> from(sigma.dst.size());
  for (std::size_t i = 0; i < sigma.src.size(); ++i) from[sigma.set_map[i]] = i;
  std::vector<std::size_t> slot(sigma.dst.size());
  for (std::size_t j = 0; j < sigma.dst.size(); ++j) {
    if (from[j]) continue;
    slot[j] = out.D.size();
    out.D.components.push_back(sigma.dst[j]);
  }
  out.from_c = Shuffle{tau.dst, out.D, {}, {}};
  for (std::size_t k = 0; k < tau.dst.size(); ++k) {
    out.from_c.set_map.push_back(k);
    out.from_c.comps.push_back(c.identity[tau.dst[k].v]);
  }
  out.from_b = Shuffle{sigma.dst, out.D, {}, {}};
  for (std::size_t j = 0; j < sigma.dst.size(); ++j) {
    if (!from[j]) {
      out.from_b.set_map.push_back(slot[j]);
      out.from_b.comps.push_back(c.identity[sigma.dst[j].v]);
      continue;
    }
    const std::size_t i = *from[j];
    const auto back = c.inverse(sigma.comps[i]);
    require(back.has_value(), c.hmor(sigma.comps[i]).name + " has no inverse");
    const auto h = c.compose(tau.comps[i], *back);
    require(h.has_value(), "composite " + c.hmor(tau.comps[i]).name + " o " + c.hmor(*back).name + " is undefined");
    out.from_b.set_map.push_back(tau.set_map[i]);
    out.from_b.comps.push_back(*h);
  }
  return out;
}

SubMap induced_pushout_submap(const PolytopeComplex& c, const PushoutGrid& g) {
  require(g.tau_top.src == g.p.src && g.sigma_top.src == g.p.src, "pushout grid: top row does not start at p");
  require(g.tau.src == g.p.dst && g.sigma.src == g.p.dst, "pushout grid: bottom row does not start at p");
  require(g.r.src == g.tau_top.dst && g.r.dst == g.tau.dst, "pushout grid: r has the wrong boundary");
  require(g.q.src == g.sigma_top.dst && g.q.dst == g.sigma.dst, "pushout grid: q has the wrong boundary");
  require(square_commutes(c, g.tau_top, g.tau, g.p, g.r), "pushout grid: left square does not commute");
  require(square_commutes(c, g.sigma_top, g.sigma, g.p, g.q), "pushout grid: right square does not commute");

  // The right square is a pullback iff A' matches sigma^*B' piece for piece.
  const ShufflePullback pb = pullback_along_shuffle(c, g.sigma, g.q);
  require(pb.b_star.size() == g.p.src.size(), "pushout grid: right square is not a pullback");
  std::map<std::pair<std::size_t, ObjectId>, std::size_t> by_key;
  for (std::size_t k = 0; k < pb.b_star.size(); ++k) by_key[{pb.q_star.set_map[k], pb.b_star[k]}] = k;
  for (std::size_t i = 0; i < g.p.src.size(); ++i) {
    const auto it = by_key.find({g.p.set_map[i], g.p.src[i]});
    require(it != by_key.end() && pb.sigma_tilde.set_map[it->second] == g.sigma_top.set_map[i] &&
                pb.sigma_tilde.comps[it->second] == g.sigma_top.comps[i],
            "pushout grid: right square is not a pullback");
  }

  const HorizontalPushout top = horizontal_pushout(c, g.tau_top, g.sigma_top);
  const HorizontalPushout bottom = horizontal_pushout(c, g.tau, g.sigma);
  SubMap out{top.D, bottom.D, {}};
  for (std::size_t k = 0; k < g.tau_top.dst.size(); ++k) out.set_map.push_back(g.r.set_map[k]);
  std::vector<bool> merged(g.sigma.dst.size(), false);
  for (std::size_t j : g.sigma.set_map) merged[j] = true;
  std::vector<bool> merged_top(g.sigma_top.dst.size(), false);
  for (std::size_t j : g.sigma_top.set_map) merged_top[j] = true;
  for (std::size_t j = 0; j < g.sigma_top.dst.size(); ++j) {
    if (merged_top[j]) continue;
    const std::size_t below = g.q.set_map[j];
    require(!merged[below], "pushout grid: right square is not a pullback");
    out.set_map.push_back(bottom.from_b.set_map[below]);
  }
  check_sub_map(c, out);
  return out;
}

SubMap induced_pushforward_submap(const PolytopeComplex& c, const PushforwardGrid& g) {
  require(g.f_top.dst == g.p.src && g.f.dst == g.p.dst, "pushforward grid: f does not land on p");
  require(g.r.src == g.f_top.src && g.r.dst == g.f.src, "pushforward grid: r has the wrong boundary");
  require(g.q.src == g.sigma_top.dst && g.q.dst == g.sigma.dst, "pushforward grid: q has the wrong boundary");
  require(compose(g.p, g.f_top).set_map == compose(g.f, g.r).set_map, "pushforward grid: left square does not commute");
  require(square_commutes(c, g.sigma_top, g.sigma, g.p, g.q), "pushforward grid: right square does not commute");
  const SubMap top = pushforward(c, g.sigma_top, g.f_top);
  const SubMap bottom = pushforward(c, g.sigma, g.f);
  const auto k = factor_through(c, compose(g.q, top), bottom);
  require(k.has_value(), "pushforward grid: no induced sub-map");
  return *k;
}

TwObject concat(const TwObject& a, const TwObject& b) {
  TwObject out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  return out;
}

}  // namespace scissors
