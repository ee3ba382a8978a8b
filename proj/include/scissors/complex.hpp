#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace scissors {

struct ObjectId {
  std::uint32_t v = 0;
  friend constexpr auto operator<=>(ObjectId, ObjectId) = default;
};

struct HMorId {
  std::uint32_t v = 0;
  friend constexpr auto operator<=>(HMorId, HMorId) = default;
};

// A set of objects, kept sorted and duplicate-free.
using Family = std::vector<ObjectId>;

Family make_family(std::vector<ObjectId> members);

struct HMor {
  std::string name;
  ObjectId src;
  ObjectId dst;
};

// Result of restricting a horizontal morphism h to a sub-object b' of dst(h):
// the unique lift src -> b' with src below src(h).
struct Lift {
  ObjectId src;
  HMorId hmor;
};

inline constexpr std::size_t kDefaultCap = 16;
// Families are bitmasks over a down-set, so the cap bounds 2^(cap-1) bits per target.
inline constexpr std::size_t kMaxCap = 21;

// Covering families of one target, stored as bitmasks over the target's
// non-bottom down-set `members` (sorted by id, includes the target itself).
class TargetCovers {
 public:
  TargetCovers() = default;
  explicit TargetCovers(std::vector<ObjectId> members);

  const std::vector<ObjectId>& members() const { return members_; }
  std::size_t width() const { return members_.size(); }

  bool contains(std::uint32_t mask) const;
  bool insert(std::uint32_t mask);
  bool erase(std::uint32_t mask);
  std::size_t count() const { return list_.size(); }
  // Insertion order; stable while iterating by index even if entries are appended.
  const std::vector<std::uint32_t>& list() const { return list_; }

  std::optional<int> local(ObjectId y) const;
  std::optional<std::uint32_t> mask_of(std::span<const ObjectId> family) const;
  Family family_of(std::uint32_t mask) const;

 private:
  std::vector<ObjectId> members_;
  std::vector<std::uint64_t> bits_ = std::vector<std::uint64_t>(1, 0);
  std::vector<std::uint32_t> list_;
};

struct CoverSystem {
  std::vector<std::pair<ObjectId, Family>> basis;
  // Indexed by object id; the bottom entry is unused.
  std::vector<TargetCovers> closed;
};

// A finite polytope complex. The tables are plain data so that tests can build
// deliberately broken variants; use ComplexBuilder or load_complex to make one.
struct PolytopeComplex {
  std::vector<std::string> names;
  ObjectId bottom;
  std::size_t cap = kDefaultCap;

  std::vector<std::uint8_t> leq_matrix;      // n*n, row = sub, column = super
  std::vector<std::vector<ObjectId>> down;   // inclusive, sorted
  std::vector<std::vector<ObjectId>> up;     // inclusive, sorted
  std::vector<std::int32_t> meet_table;      // n*n, -1 where no greatest lower bound

  std::vector<HMor> hmors;
  std::vector<HMorId> identity;                            // per object
  std::vector<std::vector<HMorId>> out;                    // hmors by source
  std::unordered_map<std::uint64_t, HMorId> compose_table; // (g, h) -> g∘h
  std::vector<std::optional<HMorId>> inverse_table;
  std::unordered_map<std::uint64_t, HMorId> restrict_table;  // (h, b') -> lift

  CoverSystem covers;

  std::unordered_map<std::string, std::uint32_t> object_index;
  std::unordered_map<std::string, std::uint32_t> hmor_index;

  std::size_t size() const { return names.size(); }
  const std::string& name(ObjectId a) const { return names.at(a.v); }
  const HMor& hmor(HMorId h) const { return hmors.at(h.v); }

  bool leq(ObjectId a, ObjectId b) const { return leq_matrix[a.v * size() + b.v] != 0; }
  // Greatest lower bound; throws Error("no meet ...") if the order lacks one.
  ObjectId meet(ObjectId a, ObjectId b) const;
  bool disjoint(ObjectId a, ObjectId b) const { return meet(a, b) == bottom; }

  std::optional<ObjectId> find(std::string_view name) const;
  ObjectId at(std::string_view name) const;  // throws Error
  std::optional<HMorId> find_hmor(std::string_view name) const;
  HMorId hmor_at(std::string_view name) const;

  std::optional<HMorId> compose(HMorId g, HMorId h) const;
  std::optional<HMorId> inverse(HMorId h) const;
  std::optional<HMorId> restriction(HMorId h, ObjectId sub) const;
  std::vector<HMorId> homs(ObjectId a, ObjectId b) const;
  bool is_identity(HMorId h) const { return identity[hmor(h).src.v] == h; }
  // Non-bottom objects in id order.
  std::vector<ObjectId> polytopes() const;
};

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// The unique lift of h at sub ⊑ dst(h). Throws PreconditionError when sub is not
// below dst(h) or when the complex has no restriction entry for (h, sub).
Lift restrict_h(const PolytopeComplex& c, HMorId h, ObjectId sub);

// Bottom members are ignored: a family covers iff it covers with bottom removed.
bool is_cover(const PolytopeComplex& c, ObjectId target, std::span<const ObjectId> family);

// Least family system containing the basis and closed under identity,
// pullback stability, transitivity, horizontal stability and axiom (B).
CoverSystem saturate_covers(const PolytopeComplex& c);

// Assembles a complex by name. Identities, inverses, composites with an identity
// and restrictions at dst(h), at bottom and along identities are synthesized.
class ComplexBuilder {
 public:
  ObjectId add_object(std::string name);
  void set_bottom(ObjectId b) { bottom_ = b; }
  void add_leq(ObjectId sub, ObjectId super);
  HMorId add_hmor(std::string name, ObjectId src, ObjectId dst);
  void set_compose(HMorId g, HMorId h, HMorId g_after_h);
  void set_inverse(HMorId h, HMorId inv);
  void set_restrict(HMorId h, ObjectId sub, HMorId lift);
  void add_cover(ObjectId target, std::vector<ObjectId> family);
  void set_cap(std::size_t cap) { cap_ = cap; }

  std::size_t object_count() const { return names_.size(); }
  const std::string& object_name(ObjectId a) const { return names_.at(a.v); }
  std::optional<ObjectId> find(std::string_view name) const;
  std::optional<HMorId> find_hmor(std::string_view name) const;

  // Indexes the tables; saturates the cover system unless `saturate` is false.
  PolytopeComplex build(bool saturate = true) &&;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ObjectId> by_name_;
  std::optional<ObjectId> bottom_;
  std::vector<std::pair<ObjectId, ObjectId>> leq_;
  std::vector<HMor> hmors_;
  std::unordered_map<std::string, HMorId> hmor_by_name_;
  std::vector<std::tuple<HMorId, HMorId, HMorId>> compose_;
  std::vector<std::pair<HMorId, HMorId>> inverse_;
  std::vector<std::tuple<HMorId, ObjectId, HMorId>> restrict_;
  std::vector<std::pair<ObjectId, Family>> covers_;
  std::size_t cap_ = kDefaultCap;
};

// Name of the synthesized identity on an object.
std::string identity_name(std::string_view object);

// Closure cap from SCISSORS_CLOSURE_CAP, or `fallback` when unset.
std::size_t cap_from_env(std::size_t fallback = kDefaultCap);

}  // namespace scissors

template <>
struct std::hash<scissors::ObjectId> {
  std::size_t operator()(scissors::ObjectId a) const noexcept { return std::hash<std::uint32_t>{}(a.v); }
};
