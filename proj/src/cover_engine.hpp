#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "scissors/complex.hpp"

namespace scissors::detail {

// Bitmask arithmetic on families over the non-bottom down-sets of a complex.
class CoverEngine {
 public:
  // Throws CapExceeded when a down-set (bottom included) is larger than the cap.
  explicit CoverEngine(const PolytopeComplex& c);

  const PolytopeComplex& complex() const { return c_; }
  const std::vector<ObjectId>& members(ObjectId x) const { return members_[x.v]; }
  std::vector<TargetCovers> empty_closed() const;

  int local(ObjectId target, ObjectId y) const { return local_[target.v * n_ + y.v]; }
  std::uint32_t bit(ObjectId target, ObjectId y) const { return std::uint32_t{1} << local(target, y); }
  // Members of x's down-set below members(x)[pos], as a mask over x.
  std::uint32_t down_mask(ObjectId x, int pos) const { return down_masks_[x.v][pos]; }
  const std::vector<HMorId>& into(ObjectId x) const { return into_[x.v]; }

  // {s ∧ y : s ∈ S} without bottom, as a mask over y ⊑ x.
  std::uint32_t pullback(ObjectId x, std::uint32_t S, ObjectId y) const;
  // T over s ⊑ x re-expressed over x.
  std::uint32_t embed(ObjectId x, ObjectId s, std::uint32_t T) const;
  // Restriction image of S (over dst h) as a family over src h; empty when a lift is missing.
  std::optional<std::uint32_t> transport(HMorId h, std::uint32_t S) const;

 private:
  const PolytopeComplex& c_;
  std::size_t n_;
  std::vector<std::int16_t> local_;
  std::vector<std::vector<ObjectId>> members_;
  std::vector<std::vector<std::uint32_t>> down_masks_;
  std::vector<std::vector<HMorId>> into_;
};

// Decides whether the refinement axiom forces a family S onto x: is there a
// choice of covers T_s ∈ C(s), one per member, whose union already covers x?
class RefinementSearch {
 public:
  RefinementSearch(const CoverEngine& engine, const std::vector<TargetCovers>& closed, ObjectId x);

  // The union of a successful choice, if one exists.
  std::optional<std::uint32_t> find(std::uint32_t S);

 private:
  bool dfs(std::size_t i, std::uint32_t partial);

  const TargetCovers& target_;
  std::vector<std::vector<std::uint32_t>> options_;  // per local position, embedded and widest first
  std::vector<std::uint32_t> down_;
  std::vector<std::uint8_t> up_;  // families containing some cover of x

  std::vector<int> order_;
  std::vector<std::uint32_t> suffix_;
  std::unordered_set<std::uint64_t> failed_;
  std::uint32_t witness_ = 0;
};

}  // namespace scissors::detail
