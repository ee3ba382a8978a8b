#include "scissors/k0.hpp"

#include <algorithm>
#include <set>

#include "scissors/error.hpp"

namespace scissors {

K0Presentation build_presentation(const PolytopeComplex& c) {
  K0Presentation out;
  out.generators = c.polytopes();
  std::vector<std::optional<std::size_t>> col(c.size());
  for (std::size_t g = 0; g < out.generators.size(); ++g) col[out.generators[g].v] = g;
  const std::size_t n = out.generators.size();

  std::set<std::vector<long>> seen;
  auto emit = [&](std::vector<long> row) {
    if (std::all_of(row.begin(), row.end(), [](long v) { return v == 0; })) return;
    if (!seen.insert(row).second) return;
    std::vector<mpz_class> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = row[j];
    out.relations.push_back(std::move(r));
  };

  for (ObjectId a : out.generators) {
    const TargetCovers& tc = c.covers.closed[a.v];
    for (std::uint32_t mask : tc.list()) {
      const Family fam = tc.family_of(mask);
      bool disjoint = true;
      for (std::size_t i = 0; i < fam.size() && disjoint; ++i) {
        for (std::size_t k = i + 1; k < fam.size() && disjoint; ++k) disjoint = c.disjoint(fam[i], fam[k]);
      }
      if (!disjoint) continue;
      std::vector<long> row(n, 0);
      row[*col[a.v]] += 1;
      for (ObjectId y : fam) {
        if (y != c.bottom) row[*col[y.v]] -= 1;
      }
      emit(std::move(row));
    }
  }
  for (const HMor& h : c.hmors) {
    if (h.src == h.dst || h.src == c.bottom) continue;
    std::vector<long> row(n, 0);
    row[*col[h.src.v]] += 1;
    row[*col[h.dst.v]] -= 1;
    emit(std::move(row));
  }
  return out;
}

namespace {

// Row Hermite normal form of the free coordinates. Row operations on the
// coordinate block are automorphisms of the free part; the lifts move by the
// inverse transpose.
void normalize_free_part(AbelianGroup& g) {
  const std::size_t r = g.rank, n = g.projection.size();
  IntMatrix t = zero_matrix(r, n);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = g.projection[j][i];
  }
  std::vector<std::vector<mpz_class>> lift(g.lift.begin(), g.lift.begin() + r);
  // Row op on t: row_a -= q row_b.  Lift op: lift_b += q lift_a.
  auto sub = [&](std::size_t a, std::size_t b, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < n; ++j) t[a][j] -= q * t[b][j];
    for (std::size_t j = 0; j < n; ++j) lift[b][j] += q * lift[a][j];
  };
  auto swap = [&](std::size_t a, std::size_t b) {
    std::swap(t[a], t[b]);
    std::swap(lift[a], lift[b]);
  };
  auto negate = [&](std::size_t a) {
    for (auto& x : t[a]) x = -x;
    for (auto& x : lift[a]) x = -x;
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < r; ++col) {
    while (true) {
      std::size_t best = r;
      for (std::size_t i = row; i < r; ++i) {
        if (t[i][col] != 0 && (best == r || abs(t[i][col]) < abs(t[best][col]))) best = i;
      }
      if (best == r) break;
      if (best != row) swap(row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (t[i][col] == 0) continue;
        sub(i, row, t[i][col] / t[row][col]);
        if (t[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (t[row][col] == 0) continue;
    if (t[row][col] < 0) negate(row);
    for (std::size_t i = 0; i < row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), t[i][col].get_mpz_t(), t[row][col].get_mpz_t());
      sub(i, row, q);
    }
    ++row;
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) g.projection[j][i] = t[i][j];
    g.lift[i] = lift[i];
  }
}

}  // namespace

AbelianGroup k0_group(const K0Presentation& pres) {
  const std::size_t n = pres.generators.size(), m = pres.relations.size();
  const SmithForm s = smith_normal_form(pres.relations, m, n, false);
  std::vector<std::size_t> free_idx, torsion_idx;
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class d = i < s.diagonal.size() ? s.diagonal[i] : mpz_class(0);
    if (d == 0) {
      free_idx.push_back(i);
    } else if (d > 1) {
      torsion_idx.push_back(i);
    }
  }
  AbelianGroup g;
  g.rank = free_idx.size();
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), torsion_idx.begin(), torsion_idx.end());
  for (std::size_t i : torsion_idx) g.invariant_factors.push_back(s.diagonal[i]);
  g.projection = zero_matrix(n, order.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < order.size(); ++k) g.projection[r][k] = s.V[r][order[k]];
  }
  for (std::size_t i : order) g.lift.push_back(s.Vinv[i]);
  normalize_free_part(g);
  return g;
}

K0Class reduce(const AbelianGroup& g, std::vector<mpz_class> coords) {
  for (std::size_t t = 0; t < g.invariant_factors.size(); ++t) {
    mpz_class& x = coords[g.rank + t];
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), g.invariant_factors[t].get_mpz_t());
  }
  return K0Class{std::move(coords)};
}

K0Class project(const AbelianGroup& g, const std::vector<mpz_class>& x) {
  std::vector<mpz_class> y(g.coordinates(), 0);
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r] == 0) continue;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += x[r] * g.projection[r][k];
  }
  return reduce(g, std::move(y));
}

K0Class add(const AbelianGroup& g, const K0Class& a, const K0Class& b) {
  std::vector<mpz_class> y(g.coordinates());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = a.coords[k] + b.coords[k];
  return reduce(g, std::move(y));
}

K0Class scale(const AbelianGroup& g, const K0Class& a, const mpz_class& k) {
  std::vector<mpz_class> y(g.coordinates());
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = a.coords[t] * k;
  return reduce(g, std::move(y));
}

K0Class zero_class(const AbelianGroup& g) { return K0Class{std::vector<mpz_class>(g.coordinates(), 0)}; }

K0Class K0::generator_class(ObjectId a) const {
  if (a.v >= generator_of.size()) throw PreconditionError("object id out of range");
  if (!generator_of[a.v]) throw PreconditionError("the bottom object is not a generator");
  std::vector<mpz_class> y(group.coordinates());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = group.projection[*generator_of[a.v]][k];
  return reduce(group, std::move(y));
}

K0 compute_k0(const PolytopeComplex& c) {
  K0 k;
  k.presentation = build_presentation(c);
  k.group = k0_group(k.presentation);
  k.generator_of.assign(c.size(), std::nullopt);
  for (std::size_t g = 0; g < k.presentation.generators.size(); ++g) k.generator_of[k.presentation.generators[g].v] = g;
  return k;
}

K0Class class_of(const K0& k, const TwObject& a) {
  K0Class out = zero_class(k.group);
  for (ObjectId x : a.components) out = add(k.group, out, k.generator_class(x));
  return out;
}

bool equal_in_k0(const K0& k, const TwObject& a, const TwObject& b) { return class_of(k, a) == class_of(k, b); }

namespace {

K0Class image_class(const PolytopeFunctor& f, const K0& target, const std::vector<mpz_class>& source_vector,
                    const K0& source) {
  K0Class out = zero_class(target.group);
  for (std::size_t g = 0; g < source_vector.size(); ++g) {
    if (source_vector[g] == 0) continue;
    const ObjectId y = f(source.presentation.generators[g]);
    if (y == f.target->bottom) continue;
    out = add(target.group, out, scale(target.group, target.generator_class(y), source_vector[g]));
  }
  return out;
}

IntMatrix columns_to_matrix(const std::vector<K0Class>& cols, std::size_t rows) {
  IntMatrix m = zero_matrix(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j].coords[i];
  }
  return m;
}

}  // namespace

IntMatrix induced_k0_map(const PolytopeFunctor& f, const K0& source, const K0& target) {
  std::vector<K0Class> cols;
  const std::size_t n = source.presentation.generators.size();
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<mpz_class> e(n, 0);
    e[g] = 1;
    cols.push_back(image_class(f, target, e, source));
  }
  return columns_to_matrix(cols, target.group.coordinates());
}

IntMatrix induced_k0_map_canonical(const PolytopeFunctor& f, const K0& source, const K0& target) {
  std::vector<K0Class> cols;
  for (const auto& lift : source.group.lift) cols.push_back(image_class(f, target, lift, source));
  return columns_to_matrix(cols, target.group.coordinates());
}

std::string to_string(const K0Class& k) {
  std::string out = "(";
  for (std::size_t i = 0; i < k.coords.size(); ++i) out += (i ? ", " : "") + k.coords[i].get_str();
  return out + ")";
}

std::string group_string(const AbelianGroup& g) {
  std::vector<std::string> parts;
  if (g.rank == 1) parts.push_back("Z");
  if (g.rank > 1) parts.push_back("Z^" + std::to_string(g.rank));
  for (const auto& d : g.invariant_factors) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

}  // namespace scissors
