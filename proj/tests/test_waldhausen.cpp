#include "doctest.h"
#include "scissors/examples.hpp"
#include "scissors/waldhausen.hpp"

using namespace scissors;

TEST_CASE("the property suite passes on bundled complexes") {
  for (const auto& c : {sphere(), s_g(cyclic_group(2)), interval_line(1, 3), interval_line(1, 4), rationals(8),
                        quadratic(-1, 10)}) {
    const auto r = check_waldhausen(c, 200, 0);
    INFO(format_report(r));
    CHECK(r.ok());
    REQUIRE(r.properties.size() == 5);
    for (const auto& p : r.properties) {
      CHECK(p.samples == 200);
      CHECK(p.failures == 0);
    }
  }
}

TEST_CASE("sampling exercises every property") {
  const auto r = check_waldhausen(interval_line(1, 3), 200, 0);
  std::vector<std::string> names;
  for (const auto& p : r.properties) {
    names.push_back(p.name);
    CHECK(p.applicable > 0);
  }
  CHECK(names == std::vector<std::string>{"saturation", "gluing", "extension", "closure", "pushout"});
}

TEST_CASE("reports are deterministic and carry the seed") {
  const auto c = s_g(cyclic_group(2));
  const auto a = format_report(check_waldhausen(c, 100, 42));
  CHECK(a == format_report(check_waldhausen(c, 100, 42)));
  CHECK(a.rfind("seed 42", 0) == 0);
  const auto b = check_waldhausen(c, 100, 43);
  CHECK(b.seed == 43);
}
