#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "scissors/complex.hpp"
#include "scissors/examples.hpp"
#include "scissors/sc.hpp"
#include "scissors/snf.hpp"

namespace support {

using namespace scissors;

// splitmix64
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return next() & 1; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
};

inline TwObject tw(const PolytopeComplex& c, std::initializer_list<const char*> names) {
  TwObject a;
  for (const char* n : names) a.components.push_back(c.at(n));
  return a;
}

inline std::vector<std::string> names_of(const PolytopeComplex& c, const std::vector<ObjectId>& xs) {
  std::vector<std::string> out;
  for (ObjectId x : xs) out.push_back(c.name(x));
  return out;
}

// ---- rationals: "(n)" names, covers by prime powers -------------------------

inline std::uint64_t ideal_value(const std::string& name) { return std::stoull(name.substr(1, name.size() - 2)); }

inline std::map<std::uint64_t, int> factor(std::uint64_t n) {
  std::map<std::uint64_t, int> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Members are unitary divisors of n (m | n, gcd(m, n/m) = 1) and every prime
// power exactly dividing n divides some member.
inline bool unitary_cover(std::uint64_t n, const std::vector<std::uint64_t>& fam) {
  for (std::uint64_t m : fam) {
    if (n % m != 0 || std::gcd(m, n / m) != 1) return false;
  }
  for (const auto& [p, e] : factor(n)) {
    const std::uint64_t q = ipow(p, e);
    if (std::none_of(fam.begin(), fam.end(), [&](std::uint64_t m) { return m % q == 0; })) return false;
  }
  return true;
}

inline bool is_prime_power(std::uint64_t n) { return n > 1 && factor(n).size() == 1; }

// ---- interval: names "[a,b]u[c,d]" with integer or fractional endpoints ------

inline double parse_number(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return std::stod(s);
  return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

// Bitmask of grid cells of width 1/q.
inline std::uint32_t interval_cells(const std::string& name, std::size_t q) {
  if (name == "empty") return 0;
  std::uint32_t mask = 0;
  std::size_t pos = 0;
  while (pos < name.size()) {
    const auto close = name.find(']', pos);
    const std::string part = name.substr(pos + 1, close - pos - 1);
    const auto comma = part.find(',');
    const long lo = std::lround(parse_number(part.substr(0, comma)) * double(q));
    const long hi = std::lround(parse_number(part.substr(comma + 1)) * double(q));
    for (long k = lo; k < hi; ++k) mask |= std::uint32_t{1} << k;
    pos = close + 1;
    if (pos < name.size() && name[pos] == 'u') ++pos;
  }
  return mask;
}

inline bool union_cover(std::uint32_t target, const std::vector<std::uint32_t>& fam) {
  std::uint32_t u = 0;
  for (std::uint32_t m : fam) {
    if ((m & ~target) != 0) return false;
    u |= m;
  }
  return u == target;
}

// ---- quadratic: names like "p2^2*p5'" or "(3)" ------------------------------

// The unit ideal "(1)" has no factors.
inline std::map<std::string, int> ideal_exponents(const std::string& name) {
  std::map<std::string, int> out;
  if (name == "(1)") return out;
  std::size_t pos = 0;
  while (pos < name.size()) {
    auto star = name.find('*', pos);
    if (star == std::string::npos) star = name.size();
    std::string part = name.substr(pos, star - pos);
    int e = 1;
    const auto caret = part.rfind('^');
    if (caret != std::string::npos) {
      e = std::stoi(part.substr(caret + 1));
      part = part.substr(0, caret);
    }
    out[part] += e;
    pos = star + 1;
  }
  return out;
}

// Members carry each prime symbol of the target with its full exponent or not at
// all, and every symbol of the target appears in some member.
inline bool exponent_cover(const std::map<std::string, int>& target, const std::vector<std::map<std::string, int>>& fam) {
  for (const auto& m : fam) {
    for (const auto& [p, e] : m) {
      const auto it = target.find(p);
      if (it == target.end() || it->second != e) return false;
    }
  }
  for (const auto& [p, e] : target) {
    if (std::none_of(fam.begin(), fam.end(), [&](const auto& m) {
          const auto it = m.find(p);
          return it != m.end() && it->second >= e;
        })) {
      return false;
    }
  }
  return true;
}

// Dedekind-Kummer on the minimal polynomial of the ring generator:
// x^2 - x + (1 - d)/4 when d = 1 mod 4, otherwise x^2 - d.
inline Splitting splitting_oracle(std::int64_t d, std::uint64_t p) {
  auto mod = [&](std::int64_t v) { return static_cast<std::uint64_t>(((v % std::int64_t(p)) + std::int64_t(p)) % std::int64_t(p)); };
  const bool one_mod_four = ((d % 4) + 4) % 4 == 1;
  const std::int64_t b = one_mod_four ? -1 : 0, c0 = one_mod_four ? (1 - d) / 4 : -d;
  std::vector<std::uint64_t> roots;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::int64_t v = std::int64_t(x) * std::int64_t(x) + b * std::int64_t(x) + c0;
    if (mod(v) == 0) roots.push_back(x);
  }
  if (roots.empty()) return Splitting::inert;
  if (roots.size() == 1) return Splitting::ramified;  // double root
  return Splitting::split;
}

// ---- integer linear algebra -------------------------------------------------

inline mpz_class bareiss_det(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline mpz_class gcd_of_entries(const IntMatrix& m) {
  mpz_class g = 0;
  for (const auto& row : m) {
    for (const auto& x : row) g = gcd(g, x);
  }
  return g;
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, std::vector<mpz_class>(cols));
  for (auto& row : m) {
    for (auto& x : row) x = rng.range(lo, hi);
  }
  return m;
}

// ---- brute-force enumeration ------------------------------------------------

// Every normal-form span a -> b with at most max_apex pieces, by scanning
// subsets of (index, polytope) pairs and every hmor table entry.
inline std::vector<ScMorphism> brute_force_hom(const PolytopeComplex& c, const TwObject& a, const TwObject& b,
                                               std::size_t max_apex) {
  std::vector<std::pair<std::size_t, ObjectId>> slots;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::uint32_t y = 0; y < c.size(); ++y) {
      if (ObjectId{y} != c.bottom && c.leq(ObjectId{y}, a[j])) slots.push_back({j, ObjectId{y}});
    }
  }
  std::vector<ScMorphism> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::pair<std::size_t, ObjectId>> pieces;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (mask >> s & 1) pieces.push_back(slots[s]);
    }
    if (pieces.size() > max_apex) continue;
    bool ok = true;
    for (std::size_t i = 0; i < pieces.size() && ok; ++i) {
      for (std::size_t k = i + 1; k < pieces.size() && ok; ++k) {
        ok = pieces[i].first != pieces[k].first || c.meet(pieces[i].second, pieces[k].second) == c.bottom;
      }
    }
    if (!ok) continue;
    std::vector<std::vector<std::pair<std::size_t, HMorId>>> choices(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      for (std::size_t k = 0; k < b.size(); ++k) {
        for (std::uint32_t h = 0; h < c.hmors.size(); ++h) {
          if (c.hmors[h].src == pieces[i].second && c.hmors[h].dst == b[k]) choices[i].push_back({k, HMorId{h}});
        }
      }
    }
    std::vector<std::size_t> pick(pieces.size(), 0);
    if (std::any_of(choices.begin(), choices.end(), [](const auto& v) { return v.empty(); })) continue;
    while (true) {
      SubMap p{{}, a, {}};
      Shuffle sigma{{}, b, {}, {}};
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        p.src.components.push_back(pieces[i].second);
        p.set_map.push_back(pieces[i].first);
        sigma.set_map.push_back(choices[i][pick[i]].first);
        sigma.comps.push_back(choices[i][pick[i]].second);
      }
      sigma.src = p.src;
      out.push_back(make_sc_morphism(c, p, sigma));
      std::size_t t = pieces.size();
      while (t > 0 && ++pick[t - 1] == choices[t - 1].size()) pick[--t] = 0;
      if (t == 0) break;
    }
  }
  return out;
}

// All TwObjects with exactly n components.
inline std::vector<TwObject> objects_of_size(const PolytopeComplex& c, std::size_t n) {
  std::vector<TwObject> out{TwObject{}};
  const auto ps = c.polytopes();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<TwObject> next;
    for (const auto& a : out) {
      for (ObjectId x : ps) {
        TwObject b = a;
        b.components.push_back(x);
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

// All sub-maps from any family into a, with at most max_pieces pieces.
inline std::vector<SubMap> sub_maps_into(const PolytopeComplex& c, const TwObject& a, std::size_t max_pieces) {
  std::vector<SubMap> out;
  for (std::size_t n = 0; n <= max_pieces; ++n) {
    for (const TwObject& x : objects_of_size(c, n)) {
      std::vector<std::size_t> map(n, 0);
      if (n > 0 && a.size() == 0) continue;
      while (true) {
        SubMap p{x, a, map};
        if (is_sub_map(c, p)) out.push_back(p);
        std::size_t t = n;
        while (t > 0 && ++map[t - 1] == a.size()) map[--t] = 0;
        if (t == 0) break;
      }
    }
  }
  return out;
}

// All shuffles a -> b.
inline std::vector<Shuffle> shuffles(const PolytopeComplex& c, const TwObject& a, const TwObject& b) {
  std::vector<std::vector<std::pair<std::size_t, HMorId>>> choices(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::uint32_t h = 0; h < c.hmors.size(); ++h) {
        if (c.hmors[h].src == a[i] && c.hmors[h].dst == b[k]) choices[i].push_back({k, HMorId{h}});
      }
    }
    if (choices[i].empty()) return {};
  }
  std::vector<Shuffle> out;
  std::vector<std::size_t> pick(a.size(), 0);
  while (true) {
    Shuffle s{a, b, {}, {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
      s.set_map.push_back(choices[i][pick[i]].first);
      s.comps.push_back(choices[i][pick[i]].second);
    }
    out.push_back(std::move(s));
    std::size_t t = a.size();
    while (t > 0 && ++pick[t - 1] == choices[t - 1].size()) pick[--t] = 0;
    if (t == 0) break;
  }
  return out;
}

}  // namespace support
