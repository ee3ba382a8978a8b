#include "scissors/complex.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>

#include "scissors/error.hpp"

namespace scissors {

Family make_family(std::vector<ObjectId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

std::string identity_name(std::string_view object) { return "id:" + std::string(object); }

std::size_t cap_from_env(std::size_t fallback) {
  const char* raw = std::getenv("SCISSORS_CLOSURE_CAP");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value <= 0) {
    throw Error("SCISSORS_CLOSURE_CAP must be a positive integer, got '" + std::string(raw) + "'");
  }
  return static_cast<std::size_t>(value);
}

// ---------------------------------------------------------------------------
// TargetCovers

TargetCovers::TargetCovers(std::vector<ObjectId> members) : members_(std::move(members)) {
  const std::size_t slots = std::size_t{1} << members_.size();
  bits_.assign((slots + 63) / 64, 0);
}

bool TargetCovers::contains(std::uint32_t mask) const {
  return (bits_[mask >> 6] >> (mask & 63)) & 1U;
}

bool TargetCovers::insert(std::uint32_t mask) {
  auto& word = bits_[mask >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (mask & 63);
  if (word & bit) return false;
  word |= bit;
  list_.push_back(mask);
  return true;
}

bool TargetCovers::erase(std::uint32_t mask) {
  auto& word = bits_[mask >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (mask & 63);
  if (!(word & bit)) return false;
  word &= ~bit;
  list_.erase(std::find(list_.begin(), list_.end(), mask));
  return true;
}

std::optional<int> TargetCovers::local(ObjectId y) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), y);
  if (it == members_.end() || *it != y) return std::nullopt;
  return static_cast<int>(it - members_.begin());
}

std::optional<std::uint32_t> TargetCovers::mask_of(std::span<const ObjectId> family) const {
  std::uint32_t mask = 0;
  for (ObjectId y : family) {
    const auto pos = local(y);
    if (!pos) return std::nullopt;
    mask |= std::uint32_t{1} << *pos;
  }
  return mask;
}

Family TargetCovers::family_of(std::uint32_t mask) const {
  Family out;
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    out.push_back(members_[std::countr_zero(rest)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PolytopeComplex queries

ObjectId PolytopeComplex::meet(ObjectId a, ObjectId b) const {
  const std::int32_t m = meet_table[a.v * size() + b.v];
  if (m < 0) throw Error("no meet of " + name(a) + " and " + name(b));
  return ObjectId{static_cast<std::uint32_t>(m)};
}

std::optional<ObjectId> PolytopeComplex::find(std::string_view n) const {
  const auto it = object_index.find(std::string(n));
  if (it == object_index.end()) return std::nullopt;
  return ObjectId{it->second};
}

ObjectId PolytopeComplex::at(std::string_view n) const {
  if (auto a = find(n)) return *a;
  throw Error("unknown object '" + std::string(n) + "'");
}

std::optional<HMorId> PolytopeComplex::find_hmor(std::string_view n) const {
  const auto it = hmor_index.find(std::string(n));
  if (it == hmor_index.end()) return std::nullopt;
  return HMorId{it->second};
}

HMorId PolytopeComplex::hmor_at(std::string_view n) const {
  if (auto h = find_hmor(n)) return *h;
  throw Error("unknown horizontal morphism '" + std::string(n) + "'");
}

std::optional<HMorId> PolytopeComplex::compose(HMorId g, HMorId h) const {
  const auto it = compose_table.find(pair_key(g.v, h.v));
  if (it == compose_table.end()) return std::nullopt;
  return it->second;
}

std::optional<HMorId> PolytopeComplex::inverse(HMorId h) const { return inverse_table.at(h.v); }

std::optional<HMorId> PolytopeComplex::restriction(HMorId h, ObjectId sub) const {
  const auto it = restrict_table.find(pair_key(h.v, sub.v));
  if (it == restrict_table.end()) return std::nullopt;
  return it->second;
}

std::vector<HMorId> PolytopeComplex::homs(ObjectId a, ObjectId b) const {
  std::vector<HMorId> result;
  for (HMorId h : out[a.v]) {
    if (hmor(h).dst == b) result.push_back(h);
  }
  return result;
}

std::vector<ObjectId> PolytopeComplex::polytopes() const {
  std::vector<ObjectId> result;
  for (std::uint32_t i = 0; i < size(); ++i) {
    if (ObjectId{i} != bottom) result.push_back(ObjectId{i});
  }
  return result;
}

Lift restrict_h(const PolytopeComplex& c, HMorId h, ObjectId sub) {
  const HMor& m = c.hmor(h);
  if (!c.leq(sub, m.dst)) {
    throw PreconditionError("restrict_h: " + c.name(sub) + " is not below " + c.name(m.dst));
  }
  const auto lift = c.restriction(h, sub);
  if (!lift) {
    throw PreconditionError("restrict_h: no restriction of " + m.name + " at " + c.name(sub));
  }
  return Lift{c.hmor(*lift).src, *lift};
}

bool is_cover(const PolytopeComplex& c, ObjectId target, std::span<const ObjectId> family) {
  for (ObjectId y : family) {
    if (!c.leq(y, target)) {
      throw PreconditionError("is_cover: " + c.name(y) + " is not below " + c.name(target));
    }
  }
  if (target == c.bottom) return true;
  Family stripped;
  for (ObjectId y : family) {
    if (y != c.bottom) stripped.push_back(y);
  }
  stripped = make_family(std::move(stripped));
  const TargetCovers& covers = c.covers.closed.at(target.v);
  const auto mask = covers.mask_of(stripped);
  return mask && covers.contains(*mask);
}

// ---------------------------------------------------------------------------
// ComplexBuilder

ObjectId ComplexBuilder::add_object(std::string name) {
  if (by_name_.contains(name)) throw ParseError("duplicate object '" + name + "'");
  const ObjectId id{static_cast<std::uint32_t>(names_.size())};
  by_name_.emplace(name, id);
  names_.push_back(std::move(name));
  return id;
}

void ComplexBuilder::add_leq(ObjectId sub, ObjectId super) { leq_.emplace_back(sub, super); }

HMorId ComplexBuilder::add_hmor(std::string name, ObjectId src, ObjectId dst) {
  if (hmor_by_name_.contains(name)) throw ParseError("duplicate horizontal morphism '" + name + "'");
  const HMorId id{static_cast<std::uint32_t>(hmors_.size())};
  hmor_by_name_.emplace(name, id);
  hmors_.push_back(HMor{std::move(name), src, dst});
  return id;
}

void ComplexBuilder::set_compose(HMorId g, HMorId h, HMorId gh) { compose_.emplace_back(g, h, gh); }
void ComplexBuilder::set_inverse(HMorId h, HMorId inv) { inverse_.emplace_back(h, inv); }
void ComplexBuilder::set_restrict(HMorId h, ObjectId sub, HMorId lift) { restrict_.emplace_back(h, sub, lift); }

void ComplexBuilder::add_cover(ObjectId target, std::vector<ObjectId> family) {
  covers_.emplace_back(target, make_family(std::move(family)));
}

std::optional<ObjectId> ComplexBuilder::find(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<HMorId> ComplexBuilder::find_hmor(std::string_view name) const {
  const auto it = hmor_by_name_.find(std::string(name));
  if (it == hmor_by_name_.end()) return std::nullopt;
  return it->second;
}

namespace {

void index_vertical(PolytopeComplex& c, const std::vector<std::pair<ObjectId, ObjectId>>& pairs) {
  const std::size_t n = c.size();
  const std::size_t words = (n + 63) / 64;
  // rows[i] = set of objects above i
  std::vector<std::uint64_t> rows(n * words, 0);
  auto set = [&](std::size_t i, std::size_t j) { rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64); };
  auto get = [&](std::size_t i, std::size_t j) { return (rows[i * words + j / 64] >> (j % 64)) & 1U; };
  for (std::size_t i = 0; i < n; ++i) set(i, i);
  for (auto [a, b] : pairs) set(a.v, b.v);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || !get(i, k)) continue;
      for (std::size_t w = 0; w < words; ++w) rows[i * words + w] |= rows[k * words + w];
    }
  }
  c.leq_matrix.assign(n * n, 0);
  c.down.assign(n, {});
  c.up.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (get(i, j)) {
        c.leq_matrix[i * n + j] = 1;
        c.up[i].push_back(ObjectId{static_cast<std::uint32_t>(j)});
        c.down[j].push_back(ObjectId{static_cast<std::uint32_t>(i)});
      }
    }
  }

  c.meet_table.assign(n * n, -1);
  std::vector<ObjectId> lower;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      lower.clear();
      std::set_intersection(c.down[a].begin(), c.down[a].end(), c.down[b].begin(), c.down[b].end(),
                            std::back_inserter(lower));
      std::int32_t glb = -1;
      int found = 0;
      for (ObjectId l : lower) {
        const bool greatest = std::all_of(lower.begin(), lower.end(),
                                          [&](ObjectId o) { return c.leq_matrix[o.v * n + l.v] != 0; });
        if (greatest) {
          glb = static_cast<std::int32_t>(l.v);
          ++found;
        }
      }
      if (found != 1) glb = -1;
      c.meet_table[a * n + b] = glb;
      c.meet_table[b * n + a] = glb;
    }
  }
}

}  // namespace

PolytopeComplex ComplexBuilder::build(bool saturate) && {
  if (names_.empty() || !bottom_) throw ParseError("no bottom object");
  PolytopeComplex c;
  c.names = names_;
  c.bottom = *bottom_;
  c.cap = cap_;
  for (std::uint32_t i = 0; i < c.names.size(); ++i) c.object_index.emplace(c.names[i], i);
  const std::size_t n = c.size();

  index_vertical(c, leq_);

  // Horizontal groupoid: identities first.
  c.hmors = hmors_;
  c.identity.assign(n, HMorId{});
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::string id_name = identity_name(c.names[i]);
    const auto existing = hmor_by_name_.find(id_name);
    if (existing != hmor_by_name_.end()) {
      const HMor& m = c.hmors[existing->second.v];
      if (m.src != ObjectId{i} || m.dst != ObjectId{i}) {
        throw ParseError("'" + id_name + "' must be an endomorphism of " + c.names[i]);
      }
      c.identity[i] = existing->second;
    } else {
      c.identity[i] = HMorId{static_cast<std::uint32_t>(c.hmors.size())};
      c.hmors.push_back(HMor{id_name, ObjectId{i}, ObjectId{i}});
    }
  }
  for (std::uint32_t h = 0; h < c.hmors.size(); ++h) c.hmor_index.emplace(c.hmors[h].name, h);
  c.out.assign(n, {});
  for (std::uint32_t h = 0; h < c.hmors.size(); ++h) c.out[c.hmors[h].src.v].push_back(HMorId{h});

  for (auto [g, h, gh] : compose_) c.compose_table[pair_key(g.v, h.v)] = gh;
  for (std::uint32_t hv = 0; hv < c.hmors.size(); ++hv) {
    const HMorId h{hv};
    const HMor& hm = c.hmors[hv];
    for (HMorId g : c.out[hm.dst.v]) {
      const auto key = pair_key(g.v, h.v);
      if (c.compose_table.contains(key)) continue;
      if (c.is_identity(h)) {
        c.compose_table[key] = g;
      } else if (c.is_identity(g)) {
        c.compose_table[key] = h;
      } else {
        const auto candidates = c.homs(hm.src, c.hmors[g.v].dst);
        if (candidates.size() == 1) c.compose_table[key] = candidates.front();
      }
    }
  }

  c.inverse_table.assign(c.hmors.size(), std::nullopt);
  for (auto [h, inv] : inverse_) c.inverse_table[h.v] = inv;
  for (std::uint32_t hv = 0; hv < c.hmors.size(); ++hv) {
    const HMorId h{hv};
    if (c.inverse_table[hv]) continue;
    const HMor& hm = c.hmors[hv];
    if (c.is_identity(h)) {
      c.inverse_table[hv] = h;
      continue;
    }
    for (HMorId k : c.homs(hm.dst, hm.src)) {
      if (c.compose(k, h) == c.identity[hm.src.v] && c.compose(h, k) == c.identity[hm.dst.v]) {
        c.inverse_table[hv] = k;
        break;
      }
    }
  }

  for (auto [h, sub, lift] : restrict_) c.restrict_table[pair_key(h.v, sub.v)] = lift;
  for (std::uint32_t hv = 0; hv < c.hmors.size(); ++hv) {
    const HMor& hm = c.hmors[hv];
    c.restrict_table.try_emplace(pair_key(hv, hm.dst.v), HMorId{hv});
    c.restrict_table.try_emplace(pair_key(hv, c.bottom.v), c.identity[c.bottom.v]);
    if (c.is_identity(HMorId{hv})) {
      for (ObjectId sub : c.down[hm.dst.v]) c.restrict_table.try_emplace(pair_key(hv, sub.v), c.identity[sub.v]);
    }
  }

  for (auto& [target, family] : covers_) {
    for (ObjectId y : family) {
      if (!c.leq(y, target)) {
        throw ParseError("cover of " + c.names[target.v] + ": member " + c.names[y.v] + " is not below the target");
      }
    }
    Family stripped;
    for (ObjectId y : family) {
      if (y != c.bottom) stripped.push_back(y);
    }
    if (target != c.bottom) c.covers.basis.emplace_back(target, std::move(stripped));
  }

  if (saturate) {
    c.covers = saturate_covers(c);
  } else {
    c.covers.closed.assign(n, TargetCovers{});
  }
  return c;
}

}  // namespace scissors
