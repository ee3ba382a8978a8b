#pragma once

#include <memory>
#include <vector>

#include "scissors/complex.hpp"

namespace scissors {

// Object and horizontal-morphism maps between two complexes.
struct PolytopeFunctor {
  std::shared_ptr<const PolytopeComplex> source;
  std::shared_ptr<const PolytopeComplex> target;
  std::vector<ObjectId> objects;  // by source object id
  std::vector<HMorId> hmors;      // by source hmor id

  ObjectId operator()(ObjectId a) const { return objects.at(a.v); }
  HMorId operator()(HMorId h) const { return hmors.at(h.v); }
};

PolytopeFunctor identity_functor(std::shared_ptr<const PolytopeComplex> c);

}  // namespace scissors
