#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scissors/complex.hpp"
#include "scissors/functor.hpp"
#include "scissors/snf.hpp"
#include "scissors/twist.hpp"

namespace scissors {

struct K0Presentation {
  std::vector<ObjectId> generators;  // non-bottom objects in id order
  IntMatrix relations;               // one row per relation, one column per generator
};

// [a] - sum [a_i] for every pairwise disjoint closed cover, and [a] - [b] for
// every horizontal morphism a -> b with a != b. Zero rows and duplicates dropped.
K0Presentation build_presentation(const PolytopeComplex& c);

// Canonical coordinates: `rank` free integers followed by one residue per
// invariant factor.
struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<mpz_class> invariant_factors;  // each > 1, dividing the next
  IntMatrix projection;                      // generators x coordinates
  IntMatrix lift;                            // coordinates x generators, a preimage of each unit vector

  std::size_t coordinates() const { return rank + invariant_factors.size(); }
};

struct K0Class {
  std::vector<mpz_class> coords;
  friend bool operator==(const K0Class&, const K0Class&) = default;
};

AbelianGroup k0_group(const K0Presentation& pres);

// Reduces torsion coordinates into [0, d).
K0Class reduce(const AbelianGroup& g, std::vector<mpz_class> coords);
K0Class project(const AbelianGroup& g, const std::vector<mpz_class>& generator_vector);
K0Class add(const AbelianGroup& g, const K0Class& a, const K0Class& b);
K0Class scale(const AbelianGroup& g, const K0Class& a, const mpz_class& k);
K0Class zero_class(const AbelianGroup& g);

struct K0 {
  K0Presentation presentation;
  AbelianGroup group;
  std::vector<std::optional<std::size_t>> generator_of;  // by object id

  K0Class generator_class(ObjectId a) const;
};

K0 compute_k0(const PolytopeComplex& c);

// Throws PreconditionError for the bottom object or an id out of range.
K0Class class_of(const K0& k, const TwObject& a);
bool equal_in_k0(const K0& k, const TwObject& a, const TwObject& b);

// Column per source generator: the class of F(generator) in the target.
IntMatrix induced_k0_map(const PolytopeFunctor& f, const K0& source, const K0& target);
// The same map between canonical coordinates.
IntMatrix induced_k0_map_canonical(const PolytopeFunctor& f, const K0& source, const K0& target);

std::string to_string(const K0Class& k);
// "Z^2 + Z/2", "0" for the trivial group.
std::string group_string(const AbelianGroup& g);

}  // namespace scissors
