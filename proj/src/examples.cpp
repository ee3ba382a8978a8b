#include "scissors/examples.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>

#include "scissors/error.hpp"

namespace scissors {

PolytopeFunctor identity_functor(std::shared_ptr<const PolytopeComplex> c) {
  PolytopeFunctor f;
  for (std::uint32_t i = 0; i < c->size(); ++i) f.objects.push_back(ObjectId{i});
  for (std::uint32_t h = 0; h < c->hmors.size(); ++h) f.hmors.push_back(HMorId{h});
  f.source = c;
  f.target = std::move(c);
  return f;
}

// ---------------------------------------------------------------------------
// Groups

GroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw PreconditionError("cyclic_group: order must be positive");
  GroupTable g;
  for (std::size_t a = 0; a < n; ++a) g.names.push_back(a == 0 ? "e" : "g" + (a == 1 ? "" : "^" + std::to_string(a)));
  g.mul.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
    g.inverse.push_back((n - a) % n);
  }
  return g;
}

GroupTable symmetric_group_3() {
  // permutations of {0,1,2} in one-line notation
  const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  GroupTable g;
  g.names = {"e", "(01)", "(12)", "(02)", "(012)", "(021)"};
  const std::size_t n = perms.size();
  auto index_of = [&](const std::array<int, 3>& p) {
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), p) - perms.begin());
  };
  g.mul.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::array<int, 3> ab{};
      for (int k = 0; k < 3; ++k) ab[k] = perms[a][perms[b][k]];
      g.mul[a][b] = index_of(ab);
    }
    std::array<int, 3> inv{};
    for (int k = 0; k < 3; ++k) inv[perms[a][k]] = k;
    g.inverse.push_back(index_of(inv));
  }
  return g;
}

void check_group(const GroupTable& g) {
  const std::size_t n = g.order();
  if (n == 0 || g.mul.size() != n || g.inverse.size() != n || g.identity >= n) {
    throw PreconditionError("group table has inconsistent sizes");
  }
  for (const auto& row : g.mul) {
    if (row.size() != n || std::any_of(row.begin(), row.end(), [&](std::size_t x) { return x >= n; })) {
      throw PreconditionError("group table has a malformed row");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (g.mul[g.identity][a] != a || g.mul[a][g.identity] != a) {
      throw PreconditionError("identity law fails at " + g.names[a]);
    }
    if (g.mul[a][g.inverse[a]] != g.identity || g.mul[g.inverse[a]][a] != g.identity) {
      throw PreconditionError("inverse law fails at " + g.names[a]);
    }
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]) {
          throw PreconditionError("associativity fails at (" + g.names[a] + ", " + g.names[b] + ", " + g.names[c] + ")");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Sphere and S_G

PolytopeComplex sphere() { return s_g(cyclic_group(1)); }

PolytopeComplex s_g(const GroupTable& g) {
  check_group(g);
  ComplexBuilder b;
  const ObjectId empty = b.add_object("empty");
  const ObjectId star = b.add_object("*");
  b.set_bottom(empty);
  b.add_leq(empty, star);
  std::vector<HMorId> elem(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) {
    elem[a] = b.add_hmor(a == g.identity ? identity_name("*") : "g:" + g.names[a], star, star);
  }
  for (std::size_t a = 0; a < g.order(); ++a) {
    b.set_inverse(elem[a], elem[g.inverse[a]]);
    for (std::size_t c = 0; c < g.order(); ++c) b.set_compose(elem[a], elem[c], elem[g.mul[a][c]]);
  }
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Interval grid

namespace {

std::string grid_point(std::size_t k, std::size_t q) {
  const std::size_t g = std::gcd(k, q);
  const std::size_t num = k / g, den = q / g;
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::string shift_name(long k, std::size_t q) {
  return (k < 0 ? "-" : "+") + grid_point(static_cast<std::size_t>(std::labs(k)), q);
}

// Set partitions of the bits of `mask`, each as a list of block masks.
void for_each_partition(std::uint32_t mask, const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  std::vector<int> cells;
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) cells.push_back(std::countr_zero(rest));
  std::vector<std::uint32_t> blocks;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == cells.size()) {
      visit(blocks);
      return;
    }
    const std::uint32_t bit = std::uint32_t{1} << cells[i];
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k] |= bit;
      go(i + 1);
      blocks[k] &= ~bit;
    }
    blocks.push_back(bit);
    go(i + 1);
    blocks.pop_back();
  };
  go(0);
}

}  // namespace

std::string interval_name(std::uint32_t cells, std::size_t q) {
  if (cells == 0) return "empty";
  std::string out;
  std::size_t k = 0;
  const std::size_t width = 32 - std::countl_zero(cells);
  while (k < width) {
    if (!((cells >> k) & 1U)) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < width && ((cells >> end) & 1U)) ++end;
    if (!out.empty()) out += "u";
    out += "[" + grid_point(k, q) + "," + grid_point(end, q) + "]";
    k = end;
  }
  return out;
}

PolytopeComplex interval_line(std::size_t q, std::size_t M) {
  if (q == 0 || M == 0) throw PreconditionError("interval_line: q and M must be positive");
  const std::size_t cells = q * M;
  if (cells > kMaxIntervalCells) {
    throw PreconditionError("interval_line: q*M = " + std::to_string(cells) + " exceeds " +
                            std::to_string(kMaxIntervalCells) + " grid cells");
  }
  const std::uint32_t full = (std::uint32_t{1} << cells) - 1;
  ComplexBuilder b;
  std::vector<ObjectId> obj(full + 1);
  for (std::uint32_t m = 0; m <= full; ++m) obj[m] = b.add_object(interval_name(m, q));
  b.set_bottom(obj[0]);
  for (std::uint32_t m = 1; m <= full; ++m) {
    b.add_leq(obj[0], obj[m]);
    for (std::uint32_t rest = m; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      if (m != bit) b.add_leq(obj[m & ~bit], obj[m]);
    }
  }

  auto shifted = [&](std::uint32_t m, long k) -> std::optional<std::uint32_t> {
    const int lo = std::countr_zero(m);
    const int hi = 31 - std::countl_zero(m);
    if (lo + k < 0 || hi + k >= static_cast<long>(cells)) return std::nullopt;
    return k >= 0 ? m << k : m >> -k;
  };
  // trans[(m, k)] = translation of m by k cells
  std::map<std::pair<std::uint32_t, long>, HMorId> trans;
  for (std::uint32_t m = 1; m <= full; ++m) {
    for (long k = -static_cast<long>(cells) + 1; k < static_cast<long>(cells); ++k) {
      if (k == 0) continue;
      if (const auto t = shifted(m, k)) {
        trans[{m, k}] = b.add_hmor(shift_name(k, q) + ":" + interval_name(m, q), obj[m], obj[*t]);
      }
    }
  }
  for (const auto& [key, h] : trans) {
    const auto [m, k] = key;
    const std::uint32_t t = *shifted(m, k);
    for (std::uint32_t sub = t; sub != 0; sub = (sub - 1) & t) {
      if (sub == t) continue;
      b.set_restrict(h, obj[sub], trans.at({*shifted(sub, -k), k}));
    }
  }
  for (std::uint32_t m = 1; m <= full; ++m) {
    for_each_partition(m, [&](const std::vector<std::uint32_t>& blocks) {
      std::vector<ObjectId> family;
      for (std::uint32_t blk : blocks) family.push_back(obj[blk]);
      b.add_cover(obj[m], std::move(family));
    });
  }
  b.set_cap(cap_from_env(kDefaultCap));
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Divisor lattices: rationals and quadratic fields

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = static_cast<std::uint64_t>((static_cast<unsigned __int128>(result) * base) % mod);
    base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % mod);
    exp >>= 1U;
  }
  return result;
}

struct PrimeSymbol {
  std::uint64_t p;
  std::string name;
  std::uint64_t norm;
  std::size_t conj;  // index of the conjugate symbol
};

using Exponents = std::vector<int>;

struct DivisorLattice {
  std::vector<PrimeSymbol> symbols;
  std::vector<Exponents> ideals;  // sorted by (norm, name); index = object id
  std::vector<std::uint64_t> norms;
  std::vector<std::string> names;
};

std::string power_name(const std::string& symbol, int e) {
  return e == 1 ? symbol : symbol + "^" + std::to_string(e);
}

std::string product_name(const std::vector<PrimeSymbol>& symbols, const Exponents& ex) {
  std::string out;
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    if (ex[s] == 0) continue;
    if (!out.empty()) out += "*";
    out += power_name(symbols[s].name, ex[s]);
  }
  return out.empty() ? "(1)" : out;
}

DivisorLattice enumerate_ideals(std::vector<PrimeSymbol> symbols, std::uint64_t N,
                                const std::function<std::string(const Exponents&, std::uint64_t)>& namer) {
  DivisorLattice lat;
  lat.symbols = std::move(symbols);
  const std::size_t k = lat.symbols.size();
  std::vector<std::pair<std::uint64_t, Exponents>> found;
  Exponents ex(k, 0);
  std::function<void(std::size_t, std::uint64_t)> go = [&](std::size_t s, std::uint64_t norm) {
    if (s == k) {
      found.emplace_back(norm, ex);
      return;
    }
    go(s + 1, norm);
    std::uint64_t n = norm;
    while (n <= N / lat.symbols[s].norm) {
      n *= lat.symbols[s].norm;
      ++ex[s];
      go(s + 1, n);
    }
    ex[s] = 0;
  };
  go(0, 1);
  std::vector<std::tuple<std::uint64_t, std::string, Exponents>> rows;
  for (auto& [norm, e] : found) rows.emplace_back(norm, namer(e, norm), e);
  std::sort(rows.begin(), rows.end());
  for (auto& [norm, name, e] : rows) {
    lat.norms.push_back(norm);
    lat.names.push_back(name);
    lat.ideals.push_back(e);
  }
  return lat;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s] > b[s]) return false;
  }
  return true;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s] != 0 && b[s] != 0) return false;
  }
  return true;
}

// Objects, divisibility order and the coprime-family cover basis.
ComplexBuilder divisor_builder(const DivisorLattice& lat) {
  ComplexBuilder b;
  const std::size_t n = lat.ideals.size();
  for (const auto& name : lat.names) b.add_object(name);
  b.set_bottom(ObjectId{0});
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i != j && divides(lat.ideals[i], lat.ideals[j])) b.add_leq(ObjectId{i}, ObjectId{j});
    }
  }
  for (std::uint32_t t = 1; t < n; ++t) {
    std::vector<std::uint32_t> divisors;
    for (std::uint32_t i = 1; i < n; ++i) {
      if (divides(lat.ideals[i], lat.ideals[t])) divisors.push_back(i);
    }
    if (divisors.size() >= 31) throw CapExceeded("too many divisors of " + lat.names[t]);
    const std::uint32_t subsets = std::uint32_t{1} << divisors.size();
    for (std::uint32_t m = 1; m < subsets; ++m) {
      bool ok = true;
      Exponents product(lat.symbols.size(), 0);
      std::vector<ObjectId> family;
      for (std::uint32_t rest = m; rest != 0 && ok; rest &= rest - 1) {
        const std::uint32_t i = divisors[std::countr_zero(rest)];
        for (ObjectId other : family) ok = ok && coprime(lat.ideals[i], lat.ideals[other.v]);
        for (std::size_t s = 0; s < product.size(); ++s) product[s] += lat.ideals[i][s];
        family.push_back(ObjectId{i});
      }
      if (ok && divides(lat.ideals[t], product)) b.add_cover(ObjectId{t}, std::move(family));
    }
  }
  return b;
}

}  // namespace

PolytopeComplex rationals(std::uint64_t N) {
  if (N < 2) throw PreconditionError("rationals: bound must be at least 2");
  std::vector<PrimeSymbol> symbols;
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (is_prime(p)) symbols.push_back({p, "(" + std::to_string(p) + ")", p, symbols.size()});
  }
  const auto lat = enumerate_ideals(symbols, N, [](const Exponents&, std::uint64_t norm) {
    return "(" + std::to_string(norm) + ")";
  });
  ComplexBuilder b = divisor_builder(lat);
  b.set_cap(cap_from_env(kDefaultCap));
  return std::move(b).build();
}

const char* splitting_name(Splitting s) {
  switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
  }
  return "?";
}

bool is_squarefree(std::int64_t d) {
  if (d == 0) return false;
  const std::uint64_t a = static_cast<std::uint64_t>(d < 0 ? -d : d);
  for (std::uint64_t p = 2; p * p <= a; ++p) {
    if (a % (p * p) == 0) return false;
  }
  return true;
}

Splitting splitting_type(std::int64_t d, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError("splitting_type: " + std::to_string(p) + " is not prime");
  if (p == 2) {
    const std::int64_t r8 = ((d % 8) + 8) % 8;
    if (r8 == 1) return Splitting::split;
    if (r8 == 5) return Splitting::inert;
    return Splitting::ramified;
  }
  const std::int64_t pi = static_cast<std::int64_t>(p);
  const std::uint64_t r = static_cast<std::uint64_t>(((d % pi) + pi) % pi);
  if (r == 0) return Splitting::ramified;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? Splitting::split : Splitting::inert;
}

namespace {

std::vector<PrimeSymbol> quadratic_symbols(const std::function<Splitting(std::uint64_t)>& type, std::uint64_t N) {
  std::vector<PrimeSymbol> symbols;
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (!is_prime(p)) continue;
    const std::string ps = std::to_string(p);
    switch (type(p)) {
      case Splitting::ramified:
        symbols.push_back({p, "p" + ps, p, symbols.size()});
        break;
      case Splitting::inert:
        if (p <= N / p) symbols.push_back({p, "(" + ps + ")", p * p, symbols.size()});
        break;
      case Splitting::split: {
        const std::size_t i = symbols.size();
        symbols.push_back({p, "p" + ps, p, i + 1});
        symbols.push_back({p, "p" + ps + "'", p, i});
        break;
      }
    }
  }
  return symbols;
}

Exponents conjugate(const std::vector<PrimeSymbol>& symbols, const Exponents& ex) {
  Exponents out(ex.size(), 0);
  for (std::size_t s = 0; s < ex.size(); ++s) out[symbols[s].conj] = ex[s];
  return out;
}

PolytopeComplex quadratic_with(const std::function<Splitting(std::uint64_t)>& type, std::uint64_t N) {
  if (N < 2) throw PreconditionError("quadratic: norm bound must be at least 2");
  auto symbols = quadratic_symbols(type, N);
  const auto lat = enumerate_ideals(symbols, N, [&](const Exponents& e, std::uint64_t) {
    return product_name(symbols, e);
  });
  ComplexBuilder b = divisor_builder(lat);
  const std::size_t n = lat.ideals.size();
  std::vector<std::uint32_t> bar(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto c = conjugate(lat.symbols, lat.ideals[i]);
    bar[i] = static_cast<std::uint32_t>(std::find(lat.ideals.begin(), lat.ideals.end(), c) - lat.ideals.begin());
  }
  std::vector<HMorId> conj(n), ident(n);
  for (std::uint32_t i = 1; i < n; ++i) ident[i] = b.add_hmor(identity_name(lat.names[i]), ObjectId{i}, ObjectId{i});
  for (std::uint32_t i = 1; i < n; ++i) conj[i] = b.add_hmor("conj:" + lat.names[i], ObjectId{i}, ObjectId{bar[i]});
  for (std::uint32_t i = 1; i < n; ++i) {
    b.set_compose(conj[bar[i]], conj[i], ident[i]);
    b.set_inverse(conj[i], conj[bar[i]]);
    for (std::uint32_t sub = 1; sub < n; ++sub) {
      if (sub != bar[i] && divides(lat.ideals[sub], lat.ideals[bar[i]])) b.set_restrict(conj[i], ObjectId{sub}, conj[bar[sub]]);
    }
  }
  b.set_cap(cap_from_env(kDefaultCap));
  return std::move(b).build();
}

std::vector<PrimeSymbol> symbols_for(std::int64_t d, std::uint64_t N) {
  return quadratic_symbols([d](std::uint64_t p) { return splitting_type(d, p); }, N);
}

void check_d(std::int64_t d) {
  if (d == 1 || !is_squarefree(d)) throw PreconditionError("quadratic: d = " + std::to_string(d) + " must be squarefree and not 1");
}

Exponents extended_exponents(const std::vector<PrimeSymbol>& symbols, std::uint64_t n) {
  Exponents ex(symbols.size(), 0);
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    const std::uint64_t p = symbols[s].p;
    int k = 0;
    for (std::uint64_t m = n; m % p == 0; m /= p) ++k;
    // p^k extends to 𝔭^(2k) if ramified, (p)^k if inert, 𝔭^k 𝔭'^k if split
    ex[s] = symbols[s].norm == p && symbols[s].conj == s ? 2 * k : k;
  }
  return ex;
}

}  // namespace

PolytopeComplex quadratic_from_splitting(const std::map<std::uint64_t, Splitting>& table, std::uint64_t N) {
  return quadratic_with(
      [&](std::uint64_t p) {
        const auto it = table.find(p);
        if (it == table.end()) throw PreconditionError("splitting table has no entry for " + std::to_string(p));
        return it->second;
      },
      N);
}

PolytopeComplex quadratic(std::int64_t d, std::uint64_t N) {
  check_d(d);
  return quadratic_with([d](std::uint64_t p) { return splitting_type(d, p); }, N);
}

std::string extended_ideal_name(std::int64_t d, std::uint64_t n) {
  check_d(d);
  if (n == 0) throw PreconditionError("extended_ideal_name: n must be positive");
  const auto symbols = symbols_for(d, n * n);
  return product_name(symbols, extended_exponents(symbols, n));
}

PolytopeFunctor inclusion_functor(std::int64_t d, std::uint64_t N) {
  check_d(d);
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N)));
  std::uint64_t M = root + 1;
  while (M * M > N) --M;
  if (M < 2) throw PreconditionError("inclusion_functor: norm bound must be at least 4");
  PolytopeFunctor f;
  f.source = std::make_shared<const PolytopeComplex>(rationals(M));
  f.target = std::make_shared<const PolytopeComplex>(quadratic(d, N));
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  const auto symbols = symbols_for(d, N);
  for (std::uint32_t i = 0; i < src.size(); ++i) {
    const std::string& name = src.name(ObjectId{i});
    const std::uint64_t n = std::stoull(name.substr(1, name.size() - 2));
    f.objects.push_back(tgt.at(product_name(symbols, extended_exponents(symbols, n))));
  }
  for (const HMor& h : src.hmors) {
    if (h.src != h.dst) throw Error("inclusion_functor: unexpected horizontal morphism " + h.name);
    f.hmors.push_back(tgt.identity[f.objects[h.src.v].v]);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Wedge

std::string wedge_name(std::size_t summand, std::string_view name) {
  return std::to_string(summand) + ":" + std::string(name);
}

PolytopeComplex wedge(std::span<const PolytopeComplex> cs) {
  if (cs.empty()) throw PreconditionError("wedge: need at least one complex");
  const bool prefix = cs.size() > 1;
  ComplexBuilder b;
  const ObjectId bottom = b.add_object(cs.front().name(cs.front().bottom));
  b.set_bottom(bottom);
  std::size_t cap = 0;
  std::vector<std::vector<ObjectId>> obj(cs.size());
  std::vector<std::vector<HMorId>> mor(cs.size());
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const PolytopeComplex& c = cs[k];
    cap = std::max(cap, c.cap);
    auto rename = [&](const std::string& n) { return prefix ? wedge_name(k, n) : n; };
    obj[k].assign(c.size(), bottom);
    for (ObjectId a : c.polytopes()) obj[k][a.v] = b.add_object(rename(c.name(a)));
    for (ObjectId a : c.polytopes()) {
      b.add_leq(bottom, obj[k][a.v]);
      for (ObjectId sup : c.up[a.v]) {
        if (sup != a) b.add_leq(obj[k][a.v], obj[k][sup.v]);
      }
    }
    mor[k].assign(c.hmors.size(), HMorId{});
    for (std::uint32_t h = 0; h < c.hmors.size(); ++h) {
      const HMor& m = c.hmors[h];
      if (m.src == c.bottom || m.dst == c.bottom) continue;
      const std::string name = c.is_identity(HMorId{h}) ? identity_name(rename(c.name(m.src))) : rename(m.name);
      mor[k][h] = b.add_hmor(name, obj[k][m.src.v], obj[k][m.dst.v]);
    }
  }
  // Identities on the shared bottom come from the builder; everything else is copied.
  std::vector<HMorId> bottom_id(cs.size());
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const PolytopeComplex& c = cs[k];
    auto live = [&](HMorId h) { return c.hmor(h).src != c.bottom && c.hmor(h).dst != c.bottom; };
    for (const auto& [key, gh] : c.compose_table) {
      const HMorId g{static_cast<std::uint32_t>(key >> 32)}, h{static_cast<std::uint32_t>(key & 0xffffffffU)};
      if (live(g) && live(h) && live(gh)) b.set_compose(mor[k][g.v], mor[k][h.v], mor[k][gh.v]);
    }
    for (std::uint32_t h = 0; h < c.hmors.size(); ++h) {
      const auto inv = c.inverse_table[h];
      if (inv && live(HMorId{h}) && live(*inv)) b.set_inverse(mor[k][h], mor[k][inv->v]);
    }
    for (const auto& [key, lift] : c.restrict_table) {
      const HMorId h{static_cast<std::uint32_t>(key >> 32)};
      const ObjectId sub{static_cast<std::uint32_t>(key & 0xffffffffU)};
      if (live(h) && sub != c.bottom && live(lift)) b.set_restrict(mor[k][h.v], obj[k][sub.v], mor[k][lift.v]);
    }
    for (const auto& [target, family] : c.covers.basis) {
      std::vector<ObjectId> mapped;
      for (ObjectId y : family) mapped.push_back(obj[k][y.v]);
      b.add_cover(obj[k][target.v], std::move(mapped));
    }
  }
  b.set_cap(cap);
  PolytopeComplex w = std::move(b).build(false);
  // Down-sets never cross summands and ids keep their relative order, so the
  // saturated systems carry over mask for mask.
  w.covers.closed.assign(w.size(), TargetCovers{});
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const PolytopeComplex& c = cs[k];
    for (ObjectId a : c.polytopes()) {
      const ObjectId x = obj[k][a.v];
      std::vector<ObjectId> members;
      for (ObjectId y : w.down[x.v]) {
        if (y != w.bottom) members.push_back(y);
      }
      TargetCovers tc(std::move(members));
      for (std::uint32_t mask : c.covers.closed[a.v].list()) tc.insert(mask);
      w.covers.closed[x.v] = std::move(tc);
    }
  }
  return w;
}

}  // namespace scissors
