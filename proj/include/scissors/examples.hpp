#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scissors/complex.hpp"
#include "scissors/functor.hpp"

namespace scissors {

struct GroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> mul;  // mul[a][b] = a·b
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;

  std::size_t order() const { return names.size(); }
};

GroupTable cyclic_group(std::size_t n);
GroupTable symmetric_group_3();
// Throws PreconditionError if the table is not a group.
void check_group(const GroupTable& g);

PolytopeComplex sphere();
PolytopeComplex s_g(const GroupTable& g);

// Unions of the cells [k/q, (k+1)/q] inside [0, M], moved by translations.
PolytopeComplex interval_line(std::size_t q, std::size_t M);
inline constexpr std::size_t kMaxIntervalCells = 8;
std::string interval_name(std::uint32_t cells, std::size_t q);

// Ideals (n), 1 <= n <= N, ordered by divisibility.
PolytopeComplex rationals(std::uint64_t N);

enum class Splitting { split, inert, ramified };
const char* splitting_name(Splitting s);

bool is_squarefree(std::int64_t d);
// How the rational prime p decomposes in Q(sqrt d).
Splitting splitting_type(std::int64_t d, std::uint64_t p);

// Ideals of norm <= N in a quadratic field whose primes decompose as listed.
// Throws PreconditionError when a prime up to N has no entry.
PolytopeComplex quadratic_from_splitting(const std::map<std::uint64_t, Splitting>& table, std::uint64_t N);
PolytopeComplex quadratic(std::int64_t d, std::uint64_t N);
// Extension of ideals from rationals(floor(sqrt N)) into quadratic(d, N).
PolytopeFunctor inclusion_functor(std::int64_t d, std::uint64_t N);

// Name of the ideal (n) in quadratic(d, N) as a product of prime symbols.
std::string extended_ideal_name(std::int64_t d, std::uint64_t n);

// Disjoint union of the polytopes over one shared bottom. Object and morphism
// names get a "k:" prefix when more than one complex is given.
PolytopeComplex wedge(std::span<const PolytopeComplex> cs);
std::string wedge_name(std::size_t summand, std::string_view name);

}  // namespace scissors
