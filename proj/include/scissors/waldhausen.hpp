#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "scissors/sc.hpp"

namespace scissors {

struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t applicable = 0;  // samples whose hypotheses held
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;  // first few, verbatim
};

struct WaldhausenReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<PropertyResult> properties;

  bool ok() const;
};

// Property names: saturation, gluing, extension, closure, pushout.
WaldhausenReport check_waldhausen(const PolytopeComplex& c, std::size_t samples, std::uint64_t seed);
std::string format_report(const WaldhausenReport& r);

}  // namespace scissors
