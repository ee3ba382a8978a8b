#include "scissors/waldhausen.hpp"

#include <algorithm>
#include <random>

#include "scissors/error.hpp"

namespace scissors {

bool WaldhausenReport::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.failures == 0; });
}

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

class Sampler {
 public:
  Sampler(const PolytopeComplex& c, std::uint64_t seed) : c_(c), rng_(seed), polytopes_(c.polytopes()) {
    disjoint_covers_.resize(c.size());
    for (ObjectId a : polytopes_) {
      const TargetCovers& tc = c.covers.closed[a.v];
      for (std::uint32_t mask : tc.list()) {
        Family fam = tc.family_of(mask);
        std::erase(fam, c.bottom);
        if (pairwise_disjoint(fam)) disjoint_covers_[a.v].push_back(std::move(fam));
      }
    }
  }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 0; }

  TwObject object(std::size_t max_size) {
    TwObject a;
    if (polytopes_.empty()) return a;
    const std::size_t n = below(max_size + 1);
    for (std::size_t i = 0; i < n; ++i) a.components.push_back(polytopes_[below(polytopes_.size())]);
    return a;
  }

  // A weak equivalence out of a, or a cofibration when extra > 0.
  ScMorphism weq_from(const TwObject& a, std::size_t extra = 0) {
    SubMap p{{}, a, {}};
    for (std::size_t j = 0; j < a.size(); ++j) {
      const auto& covers = disjoint_covers_[a[j].v];
      for (ObjectId y : covers[below(covers.size())]) {
        p.src.components.push_back(y);
        p.set_map.push_back(j);
      }
    }
    return shuffle_out(std::move(p), false, extra);
  }

  ScMorphism cofibration_from(const TwObject& a) { return weq_from(a, below(3)); }

  ScMorphism morphism_from(const TwObject& a) {
    SubMap p{{}, a, {}};
    for (std::size_t j = 0; j < a.size(); ++j) {
      std::vector<ObjectId> down;
      for (ObjectId y : c_.down[a[j].v]) {
        if (y != c_.bottom) down.push_back(y);
      }
      std::shuffle(down.begin(), down.end(), rng_);
      std::vector<ObjectId> fam;
      for (ObjectId y : down) {
        if (below(3) == 0 && std::all_of(fam.begin(), fam.end(), [&](ObjectId z) { return c_.disjoint(y, z); })) {
          fam.push_back(y);
        }
      }
      for (ObjectId y : fam) {
        p.src.components.push_back(y);
        p.set_map.push_back(j);
      }
    }
    return shuffle_out(std::move(p), true, below(2));
  }

  ScMorphism any_from(const TwObject& a) {
    switch (below(3)) {
      case 0: return weq_from(a);
      case 1: return cofibration_from(a);
      default: return morphism_from(a);
    }
  }

 private:
  bool pairwise_disjoint(const Family& fam) const {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      for (std::size_t k = i + 1; k < fam.size(); ++k) {
        if (!c_.disjoint(fam[i], fam[k])) return false;
      }
    }
    return true;
  }

  // Moves each apex piece by a random horizontal morphism into a fresh target,
  // optionally merging pieces with equal images, then adds `extra` components.
  ScMorphism shuffle_out(SubMap p, bool merge, std::size_t extra) {
    const std::size_t n = p.src.size();
    std::vector<HMorId> comps;
    std::vector<ObjectId> targets;
    std::vector<std::size_t> slot(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& out = c_.out[p.src[i].v];
      const HMorId h = out[below(out.size())];
      comps.push_back(h);
      const ObjectId t = c_.hmor(h).dst;
      std::optional<std::size_t> reuse;
      if (merge && coin()) {
        for (std::size_t k = 0; k < targets.size(); ++k) {
          if (targets[k] == t) reuse = k;
        }
      }
      if (reuse) {
        slot[i] = *reuse;
      } else {
        slot[i] = targets.size();
        targets.push_back(t);
      }
    }
    if (polytopes_.empty()) extra = 0;
    for (std::size_t e = 0; e < extra; ++e) targets.push_back(polytopes_[below(polytopes_.size())]);
    std::vector<std::size_t> perm(targets.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng_);
    TwObject b;
    b.components.resize(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) b.components[perm[k]] = targets[k];
    Shuffle sigma{p.src, b, {}, comps};
    for (std::size_t i = 0; i < n; ++i) sigma.set_map.push_back(perm[slot[i]]);
    return make_sc_morphism(c_, std::move(p), std::move(sigma));
  }

  const PolytopeComplex& c_;
  std::mt19937_64 rng_;
  std::vector<ObjectId> polytopes_;
  std::vector<std::vector<Family>> disjoint_covers_;
};

class Recorder {
 public:
  Recorder(PropertyResult& r, const PolytopeComplex& c) : r_(r), c_(c) {}

  void fail(std::size_t sample, const std::string& what, const std::vector<const ScMorphism*>& ms) {
    ++r_.failures;
    if (r_.counterexamples.size() >= kMaxCounterexamples) return;
    std::string text = "sample " + std::to_string(sample) + ": " + what;
    for (const ScMorphism* m : ms) text += "\n    " + to_string(c_, *m);
    r_.counterexamples.push_back(std::move(text));
  }

 private:
  PropertyResult& r_;
  const PolytopeComplex& c_;
};

constexpr std::size_t kObjectSize = 2;

void saturation(const PolytopeComplex& c, Sampler& s, std::size_t samples, PropertyResult& r) {
  Recorder rec(r, c);
  for (std::size_t k = 0; k < samples; ++k) {
    const TwObject a = s.object(kObjectSize);
    const ScMorphism f = s.any_from(a);
    const ScMorphism g = s.any_from(f.dst());
    const ScMorphism gf = sc_compose(c, f, g);
    const bool wf = classify(c, f).weak_equivalence, wg = classify(c, g).weak_equivalence,
               wgf = classify(c, gf).weak_equivalence;
    if (int(wf) + int(wg) + int(wgf) < 2) continue;
    ++r.applicable;
    if (!(wf && wg && wgf)) rec.fail(k, "two of f, g, g∘f are weak equivalences but not the third", {&f, &g, &gf});
  }
  r.samples = samples;
}

void closure(const PolytopeComplex& c, Sampler& s, std::size_t samples, PropertyResult& r) {
  Recorder rec(r, c);
  for (std::size_t k = 0; k < samples; ++k) {
    const TwObject a = s.object(kObjectSize);
    const bool weq = s.coin();
    const ScMorphism f = weq ? s.weq_from(a) : s.cofibration_from(a);
    const ScMorphism g = weq ? s.weq_from(f.dst()) : s.cofibration_from(f.dst());
    const ScMorphism gf = sc_compose(c, f, g);
    const ScMorphism id = sc_identity(c, a);
    ++r.applicable;
    const MorphismKind kind = classify(c, gf), idk = classify(c, id);
    if (!(idk.isomorphism && idk.cofibration && idk.weak_equivalence)) rec.fail(k, "identity is not an isomorphism", {&id});
    if (weq && !kind.weak_equivalence) rec.fail(k, "composite of weak equivalences is not one", {&f, &g, &gf});
    if (!weq && !kind.cofibration) rec.fail(k, "composite of cofibrations is not one", {&f, &g, &gf});
  }
  r.samples = samples;
}

void pushout(const PolytopeComplex& c, Sampler& s, std::size_t samples, PropertyResult& r) {
  Recorder rec(r, c);
  for (std::size_t k = 0; k < samples; ++k) {
    const TwObject a = s.object(kObjectSize);
    const ScMorphism f = s.any_from(a);
    const ScMorphism cof = s.coin() ? s.weq_from(a) : s.cofibration_from(a);
    ++r.applicable;
    const ScPushout po = sc_pushout(c, f, cof);
    const MorphismKind kc = classify(c, po.from_c), kcof = classify(c, cof);
    if (!sc_equal(sc_compose(c, f, po.from_c), sc_compose(c, cof, po.from_b))) {
      rec.fail(k, "pushout square does not commute", {&f, &cof, &po.from_c, &po.from_b});
    }
    if (!kc.cofibration) rec.fail(k, "pushout of a cofibration is not a cofibration", {&f, &cof, &po.from_c});
    if (kcof.weak_equivalence && !kc.weak_equivalence) {
      rec.fail(k, "pushout of a weak equivalence is not one", {&f, &cof, &po.from_c});
    }
    const auto u = pushout_mediator(c, f, cof, po, po.from_c, po.from_b);
    if (!u || !sc_equal(*u, sc_identity(c, po.D))) rec.fail(k, "pushout cocone does not mediate to the identity", {&f, &cof});
  }
  r.samples = samples;
}

void gluing(const PolytopeComplex& c, Sampler& s, std::size_t samples, PropertyResult& r) {
  Recorder rec(r, c);
  for (std::size_t k = 0; k < samples; ++k) {
    //   C <-f- A -cof-> B
    //   |wC    |wA      |wB
    //   C'<-f'- A'-cof'->B'
    const TwObject a = s.object(kObjectSize);
    const ScMorphism f = s.any_from(a);
    const ScMorphism cof = s.cofibration_from(a);
    const ScMorphism wA = s.weq_from(a);
    const ScPushout left = sc_pushout(c, f, wA);
    const ScPushout right = sc_pushout(c, wA, cof);
    const ScMorphism extra_c = s.weq_from(left.D), extra_b = s.weq_from(right.D);
    const ScMorphism wC = sc_compose(c, left.from_c, extra_c);
    const ScMorphism f2 = sc_compose(c, left.from_b, extra_c);
    const ScMorphism wB = sc_compose(c, right.from_b, extra_b);
    const ScMorphism cof2 = sc_compose(c, right.from_c, extra_b);
    if (!classify(c, wB).weak_equivalence || !classify(c, cof2).cofibration) {
      rec.fail(k, "pushout along a weak equivalence lost its kind", {&wA, &cof, &wB, &cof2});
      continue;
    }
    ++r.applicable;
    const ScPushout top = sc_pushout(c, f, cof);
    const ScPushout bottom = sc_pushout(c, f2, cof2);
    const ScMorphism x = sc_compose(c, wC, bottom.from_c), y = sc_compose(c, wB, bottom.from_b);
    const auto u = pushout_mediator(c, f, cof, top, x, y);
    if (!u) {
      rec.fail(k, "no induced map between pushouts", {&f, &cof, &wA, &wB, &wC});
    } else if (!classify(c, *u).weak_equivalence) {
      rec.fail(k, "induced map between pushouts is not a weak equivalence", {&f, &cof, &wA, &wB, &wC, &*u});
    }
  }
  r.samples = samples;
}

void extension(const PolytopeComplex& c, Sampler& s, std::size_t samples, PropertyResult& r) {
  Recorder rec(r, c);
  for (std::size_t k = 0; k < samples; ++k) {
    //   A -cof-> B -> B/A
    //   |wA      |wB   |u
    //   A'-cof'->B'-> B'/A'
    const TwObject a = s.object(kObjectSize);
    const ScMorphism cof = s.cofibration_from(a);
    const ScMorphism wA = s.coin() ? s.weq_from(a) : s.morphism_from(a);
    const ScPushout po = sc_pushout(c, wA, cof);
    const ScMorphism h = s.coin() ? s.weq_from(po.D) : s.any_from(po.D);
    const ScMorphism cof2 = sc_compose(c, po.from_c, h);
    const ScMorphism wB = sc_compose(c, po.from_b, h);
    if (!classify(c, cof2).cofibration) continue;
    const Cofiber q1 = cofiber(c, cof), q2 = cofiber(c, cof2);
    const ScMorphism zero = sc_zero(a, TwObject{});
    const ScPushout p1 = sc_pushout(c, zero, cof);
    const auto u = pushout_mediator(c, zero, cof, p1, sc_zero(TwObject{}, q2.Q), sc_compose(c, wB, q2.quot));
    if (!u) {
      rec.fail(k, "no induced map between cofibers", {&cof, &cof2, &wA, &wB});
      continue;
    }
    if (!classify(c, wA).weak_equivalence || !classify(c, *u).weak_equivalence) continue;
    ++r.applicable;
    if (!classify(c, wB).weak_equivalence) {
      rec.fail(k, "extension: outer maps are weak equivalences but the middle is not", {&cof, &cof2, &wA, &wB, &*u});
    }
    if (!sc_equal(sc_compose(c, q1.section, q1.quot), sc_identity(c, q1.Q))) {
      rec.fail(k, "cofiber section is not a right inverse", {&cof, &q1.quot, &q1.section});
    }
  }
  r.samples = samples;
}

}  // namespace

WaldhausenReport check_waldhausen(const PolytopeComplex& c, std::size_t samples, std::uint64_t seed) {
  using Check = void (*)(const PolytopeComplex&, Sampler&, std::size_t, PropertyResult&);
  const std::pair<const char*, Check> checks[] = {
      {"saturation", saturation}, {"gluing", gluing}, {"extension", extension}, {"closure", closure}, {"pushout", pushout}};
  WaldhausenReport report;
  report.seed = seed;
  report.samples = samples;
  std::uint64_t stream = 0;
  for (const auto& [name, check] : checks) {
    PropertyResult r;
    r.name = name;
    Sampler s(c, seed * 0x9e3779b97f4a7c15ULL + stream++);
    try {
      check(c, s, samples, r);
    } catch (const Error& e) {
      ++r.failures;
      r.counterexamples.push_back(std::string("error: ") + e.what());
    }
    report.properties.push_back(std::move(r));
  }
  return report;
}

std::string format_report(const WaldhausenReport& r) {
  std::string out = "seed " + std::to_string(r.seed) + ", " + std::to_string(r.samples) + " samples per property\n";
  for (const PropertyResult& p : r.properties) {
    out += p.name + ": " + (p.failures ? "FAIL" : "pass") + " (" + std::to_string(p.applicable) + " applicable, " +
           std::to_string(p.failures) + " counterexamples)\n";
    for (const std::string& e : p.counterexamples) out += "  " + e + "\n";
  }
  return out;
}

}  // namespace scissors
