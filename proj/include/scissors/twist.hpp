#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scissors/complex.hpp"

namespace scissors {

// A finite family of polytopes indexed by 0..n-1.
struct TwObject {
  std::vector<ObjectId> components;

  std::size_t size() const { return components.size(); }
  ObjectId operator[](std::size_t i) const { return components[i]; }
  friend bool operator==(const TwObject&, const TwObject&) = default;
};

// Vertical morphism: src_i ⊑ dst_{set_map[i]}, pieces in one fiber pairwise disjoint.
struct SubMap {
  TwObject src;
  TwObject dst;
  std::vector<std::size_t> set_map;
  friend bool operator==(const SubMap&, const SubMap&) = default;
};

// Horizontal morphism: comps[i] : src_i -> dst_{set_map[i]}.
struct Shuffle {
  TwObject src;
  TwObject dst;
  std::vector<std::size_t> set_map;
  std::vector<HMorId> comps;
  friend bool operator==(const Shuffle&, const Shuffle&) = default;
};

std::string to_string(const PolytopeComplex& c, const TwObject& a);
std::string to_string(const PolytopeComplex& c, const SubMap& p);
std::string to_string(const PolytopeComplex& c, const Shuffle& s);

// Throw PreconditionError when the data is not a valid morphism of Tw(C_p).
void check_object(const PolytopeComplex& c, const TwObject& a);
void check_sub_map(const PolytopeComplex& c, const SubMap& p);
void check_shuffle(const PolytopeComplex& c, const Shuffle& s);
bool is_sub_map(const PolytopeComplex& c, const SubMap& p);

bool is_injective(const std::vector<std::size_t>& set_map, std::size_t codomain);
bool is_bijective(const std::vector<std::size_t>& set_map, std::size_t codomain);

// Every fiber {src_i : set_map(i) = j} covers dst_j.
bool is_covering_sub_map(const PolytopeComplex& c, const SubMap& p);

SubMap identity_sub_map(const TwObject& a);
Shuffle identity_shuffle(const PolytopeComplex& c, const TwObject& a);
// outer ∘ inner
SubMap compose(const SubMap& outer, const SubMap& inner);
Shuffle compose(const PolytopeComplex& c, const Shuffle& outer, const Shuffle& inner);
// Requires a bijective set map.
Shuffle inverse(const PolytopeComplex& c, const Shuffle& s);

// The unique k with b ∘ k = a, for sub-maps a, b into the same object.
std::optional<SubMap> factor_through(const PolytopeComplex& c, const SubMap& a, const SubMap& b);

// Does   top_src --top--> top_dst
//          |left             |right
//        bot_src --bottom--> bot_dst   commute?
bool square_commutes(const PolytopeComplex& c, const Shuffle& top, const Shuffle& bottom, const SubMap& left,
                     const SubMap& right);

struct VerticalPullback {
  TwObject P;
  SubMap to_f;
  SubMap to_g;
};
// Indexed by pairs (i, j) with f(i) = g(j), lexicographically; bottom meets dropped.
VerticalPullback vertical_pullback(const PolytopeComplex& c, const SubMap& f, const SubMap& g);

struct ShufflePullback {
  TwObject b_star;
  SubMap q_star;        // b_star -> sigma.src
  Shuffle sigma_tilde;  // b_star -> q.src
};
// Indexed by pairs (i, j') with sigma(i) = q(j'); components are restriction lifts.
ShufflePullback pullback_along_shuffle(const PolytopeComplex& c, const Shuffle& sigma, const SubMap& q);

// Right adjoint to pulling back along sigma: a sub-map into sigma.dst.
SubMap pushforward(const PolytopeComplex& c, const Shuffle& sigma, const SubMap& p);

struct HorizontalPushout {
  TwObject D;
  Shuffle from_c;
  Shuffle from_b;
};
// tau : A -> C, sigma : A -> B with injective set map. D is indexed by C's
// indices followed by the indices of B outside the image of sigma.
HorizontalPushout horizontal_pushout(const PolytopeComplex& c, const Shuffle& tau, const Shuffle& sigma);

//   C' <-tau_top- A' -sigma_top-> B'
//   |r            |p              |q
//   C  <-tau----- A  -sigma-----> B
struct PushoutGrid {
  Shuffle tau_top, sigma_top, tau, sigma;
  SubMap r, p, q;
};
// The sub-map C' ∪_{A'} B' -> C ∪_A B; the right square must be a pullback.
SubMap induced_pushout_submap(const PolytopeComplex& c, const PushoutGrid& g);

//   C' -f_top-> A' -sigma_top-> B'
//   |r          |p              |q
//   C  -f-----> A  -sigma-----> B
struct PushforwardGrid {
  SubMap f_top, f;
  Shuffle sigma_top, sigma;
  SubMap r, p, q;
};
// The sub-map sigma_top_* C' -> sigma_* C.
SubMap induced_pushforward_submap(const PolytopeComplex& c, const PushforwardGrid& g);

// Objects and sub-maps as coproducts.
TwObject concat(const TwObject& a, const TwObject& b);

}  // namespace scissors
