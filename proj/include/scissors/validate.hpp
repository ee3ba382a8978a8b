#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scissors/complex.hpp"
#include "scissors/functor.hpp"

namespace scissors {

struct AxiomCheck {
  std::string axiom;  // "V", "H", "P", "C", "B", "FC", "FP"
  bool passed = true;
  bool skipped = false;  // not checked because a prerequisite axiom failed
  std::string witness;  // first counterexample found, empty on success
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;

  bool ok() const;
  const AxiomCheck& at(std::string_view axiom) const;
  std::vector<std::string> failed() const;
};

ValidationReport validate(const PolytopeComplex& c);
ValidationReport validate_functor(const PolytopeFunctor& f);

std::string format_report(const ValidationReport& r);

}  // namespace scissors
