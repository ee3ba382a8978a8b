#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scissors/twist.hpp"

namespace scissors {

// A span  src <-p- apex -sigma-> dst  in normal form: apex indices sorted by
// (p.set_map[i], apex component).
struct ScMorphism {
  SubMap p;
  Shuffle sigma;

  const TwObject& src() const { return p.dst; }
  const TwObject& dst() const { return sigma.dst; }
  const TwObject& apex() const { return p.src; }
  friend bool operator==(const ScMorphism&, const ScMorphism&) = default;
};

struct MorphismKind {
  bool cofibration = false;
  bool weak_equivalence = false;
  bool isomorphism = false;
};

std::string to_string(const PolytopeComplex& c, const ScMorphism& f);

// Validates the legs and reorders the apex into normal form.
ScMorphism make_sc_morphism(const PolytopeComplex& c, SubMap p, Shuffle sigma);
ScMorphism sc_identity(const PolytopeComplex& c, const TwObject& a);
// The morphism with empty apex.
ScMorphism sc_zero(const TwObject& a, const TwObject& b);
// A pure shuffle  src = sigma.src.
ScMorphism sc_shuffle(const PolytopeComplex& c, const Shuffle& sigma);

// g ∘ f for f : A -> B, g : B -> C.
ScMorphism sc_compose(const PolytopeComplex& c, const ScMorphism& f, const ScMorphism& g);
bool sc_equal(const ScMorphism& f, const ScMorphism& g);
MorphismKind classify(const PolytopeComplex& c, const ScMorphism& f);
ScMorphism sc_coproduct(const PolytopeComplex& c, const std::vector<ScMorphism>& fs);
// Two-sided inverse of an isomorphism.
std::optional<ScMorphism> sc_inverse(const PolytopeComplex& c, const ScMorphism& f);

struct ScPushout {
  TwObject D;
  ScMorphism from_c;  // C -> D
  ScMorphism from_b;  // B -> D
};
// Pushout of f : A -> C along a cofibration cof : A -> B.
ScPushout sc_pushout(const PolytopeComplex& c, const ScMorphism& f, const ScMorphism& cof);

// The morphism u : po.D -> X with u ∘ po.from_c = x and u ∘ po.from_b = y, where
// po = sc_pushout(c, f, cof) and x : C -> X, y : B -> X. Nullopt when (x, y) is
// not a cocone.
std::optional<ScMorphism> pushout_mediator(const PolytopeComplex& c, const ScMorphism& f, const ScMorphism& cof,
                                           const ScPushout& po, const ScMorphism& x, const ScMorphism& y);

struct Cofiber {
  TwObject Q;
  ScMorphism quot;     // B -> Q
  ScMorphism section;  // Q -> B
};
Cofiber cofiber(const PolytopeComplex& c, const ScMorphism& cof);

// Visits every normal-form morphism a -> b whose apex has at most max_apex
// pieces, in a fixed order. Throws BoundExceeded after `limit` morphisms.
void enumerate_sc_morphisms(const PolytopeComplex& c, const TwObject& a, const TwObject& b, std::size_t max_apex,
                            const std::function<void(const ScMorphism&)>& visit, std::size_t limit = 200000);
std::vector<ScMorphism> sc_morphisms(const PolytopeComplex& c, const TwObject& a, const TwObject& b,
                                     std::size_t max_apex, std::size_t limit = 200000);

}  // namespace scissors
