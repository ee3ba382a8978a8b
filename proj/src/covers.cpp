#include <algorithm>
#include <bit>
#include <string>

#include "cover_engine.hpp"
#include "scissors/error.hpp"

namespace scissors {
namespace detail {

CoverEngine::CoverEngine(const PolytopeComplex& c) : c_(c), n_(c.size()) {
  const std::size_t limit = std::min(c.cap, kMaxCap);
  local_.assign(n_ * n_, -1);
  members_.assign(n_, {});
  down_masks_.assign(n_, {});
  into_.assign(n_, {});
  for (ObjectId x : c.polytopes()) {
    if (c.down[x.v].size() > limit) {
      throw CapExceeded("down-set of " + c.name(x) + " has " + std::to_string(c.down[x.v].size()) +
                        " objects, more than the closure cap " + std::to_string(limit));
    }
    auto& m = members_[x.v];
    for (ObjectId y : c.down[x.v]) {
      if (y != c.bottom) m.push_back(y);
    }
    for (std::size_t i = 0; i < m.size(); ++i) local_[x.v * n_ + m[i].v] = static_cast<std::int16_t>(i);
  }
  for (ObjectId x : c.polytopes()) {
    const auto& m = members_[x.v];
    for (ObjectId y : m) {
      std::uint32_t mask = 0;
      for (ObjectId z : members_[y.v]) mask |= bit(x, z);
      down_masks_[x.v].push_back(mask);
    }
  }
  for (std::uint32_t h = 0; h < c.hmors.size(); ++h) into_[c.hmors[h].dst.v].push_back(HMorId{h});
}

std::vector<TargetCovers> CoverEngine::empty_closed() const {
  std::vector<TargetCovers> closed(n_);
  for (ObjectId x : c_.polytopes()) closed[x.v] = TargetCovers(members_[x.v]);
  return closed;
}

std::uint32_t CoverEngine::pullback(ObjectId x, std::uint32_t S, ObjectId y) const {
  const auto& m = members_[x.v];
  std::uint32_t out = 0;
  for (std::uint32_t rest = S; rest != 0; rest &= rest - 1) {
    const ObjectId s = m[std::countr_zero(rest)];
    const std::int32_t meet = c_.meet_table[s.v * n_ + y.v];
    if (meet < 0 || static_cast<std::uint32_t>(meet) == c_.bottom.v) continue;
    out |= bit(y, ObjectId{static_cast<std::uint32_t>(meet)});
  }
  return out;
}

std::uint32_t CoverEngine::embed(ObjectId x, ObjectId s, std::uint32_t T) const {
  const auto& m = members_[s.v];
  std::uint32_t out = 0;
  for (std::uint32_t rest = T; rest != 0; rest &= rest - 1) out |= bit(x, m[std::countr_zero(rest)]);
  return out;
}

std::optional<std::uint32_t> CoverEngine::transport(HMorId h, std::uint32_t S) const {
  const HMor& hm = c_.hmor(h);
  const auto& m = members_[hm.dst.v];
  std::uint32_t out = 0;
  for (std::uint32_t rest = S; rest != 0; rest &= rest - 1) {
    const auto lift = c_.restriction(h, m[std::countr_zero(rest)]);
    if (!lift) return std::nullopt;
    const ObjectId a = c_.hmor(*lift).src;
    if (a == c_.bottom) continue;
    if (!c_.leq(a, hm.src)) return std::nullopt;
    out |= bit(hm.src, a);
  }
  return out;
}

RefinementSearch::RefinementSearch(const CoverEngine& engine, const std::vector<TargetCovers>& closed, ObjectId x)
    : target_(closed[x.v]) {
  const auto& m = engine.members(x);
  const std::size_t width = m.size();
  options_.resize(width);
  for (std::size_t i = 0; i < width; ++i) {
    const ObjectId s = m[i];
    auto& opts = options_[i];
    for (std::uint32_t T : closed[s.v].list()) opts.push_back(s == x ? T : engine.embed(x, s, T));
    std::sort(opts.begin(), opts.end(), [](std::uint32_t a, std::uint32_t b) {
      const int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa > pb : a < b;
    });
    down_.push_back(engine.down_mask(x, static_cast<int>(i)));
  }
  up_.assign(std::size_t{1} << width, 0);
  for (std::uint32_t T : target_.list()) up_[T] = 1;
  for (std::size_t b = 0; b < width; ++b) {
    const std::uint32_t bitb = std::uint32_t{1} << b;
    for (std::uint32_t mask = 0; mask < up_.size(); ++mask) {
      if ((mask & bitb) && up_[mask ^ bitb]) up_[mask] = 1;
    }
  }
}

std::optional<std::uint32_t> RefinementSearch::find(std::uint32_t S) {
  order_.clear();
  for (std::uint32_t rest = S; rest != 0; rest &= rest - 1) order_.push_back(std::countr_zero(rest));
  std::sort(order_.begin(), order_.end(), [&](int a, int b) {
    return options_[a].size() != options_[b].size() ? options_[a].size() < options_[b].size() : a < b;
  });
  suffix_.assign(order_.size() + 1, 0);
  for (std::size_t i = order_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] | down_[order_[i]];
  failed_.clear();
  if (!up_[suffix_[0]]) return std::nullopt;
  if (dfs(0, 0)) return witness_;
  return std::nullopt;
}

bool RefinementSearch::dfs(std::size_t i, std::uint32_t partial) {
  if (i == order_.size()) {
    if (!target_.contains(partial)) return false;
    witness_ = partial;
    return true;
  }
  if (!up_[partial | suffix_[i]]) return false;
  const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | partial;
  if (failed_.contains(key)) return false;
  for (std::uint32_t T : options_[order_[i]]) {
    if (dfs(i + 1, partial | T)) return true;
  }
  failed_.insert(key);
  return false;
}

}  // namespace detail

CoverSystem saturate_covers(const PolytopeComplex& c) {
  const detail::CoverEngine eng(c);
  CoverSystem out;
  out.basis = c.covers.basis;
  out.closed = eng.empty_closed();
  auto& closed = out.closed;

  std::vector<std::pair<ObjectId, std::uint32_t>> pending;
  auto add = [&](ObjectId x, std::uint32_t mask) {
    if (closed[x.v].insert(mask)) pending.emplace_back(x, mask);
  };
  // singles[x]: positions q with {x, q} covering x
  std::vector<std::vector<int>> singles(c.size());

  for (ObjectId x : c.polytopes()) add(x, eng.bit(x, x));
  for (const auto& [target, family] : out.basis) {
    const auto mask = closed[target.v].mask_of(family);
    if (!mask) throw Error("cover of " + c.name(target) + " has a member outside its down-set");
    add(target, *mask);
  }

  auto process = [&](ObjectId x, std::uint32_t S) {
    const auto& mx = eng.members(x);
    const std::uint32_t xb = eng.bit(x, x);

    for (ObjectId y : mx) {
      if (y != x) add(y, eng.pullback(x, S, y));
    }
    for (HMorId h : eng.into(x)) {
      if (c.is_identity(h)) continue;
      if (const auto img = eng.transport(h, S)) add(c.hmor(h).src, *img);
    }

    // Refine a member s ≠ x by its covers.
    for (std::uint32_t rest = S & ~xb; rest != 0; rest &= rest - 1) {
      const int pos = std::countr_zero(rest);
      const ObjectId s = mx[pos];
      const std::uint32_t base = S & ~(std::uint32_t{1} << pos);
      for (std::size_t k = 0; k < closed[s.v].list().size(); ++k) {
        add(x, base | eng.embed(x, s, closed[s.v].list()[k]));
      }
    }

    // Refining x inside {x} ∪ R gives R ∪ T. Refinement closure makes every r ∈ R a
    // single ({x, r} covers x), so it suffices to close under adding singles.
    for (std::size_t k = 0; k < singles[x.v].size(); ++k) add(x, S | (std::uint32_t{1} << singles[x.v][k]));
    if ((S & xb) && std::popcount(S) == 2) {
      const int q = std::countr_zero(S & ~xb);
      auto& sx = singles[x.v];
      if (std::find(sx.begin(), sx.end(), q) == sx.end()) {
        sx.push_back(q);
        for (std::size_t k = 0; k < closed[x.v].list().size(); ++k) {
          add(x, closed[x.v].list()[k] | (std::uint32_t{1} << q));
        }
      }
    }

    // S as a refinement of x inside families of objects above x.
    for (ObjectId z : c.up[x.v]) {
      if (z == x) continue;
      const std::uint32_t zb = eng.bit(z, x);
      const std::uint32_t embedded = eng.embed(z, x, S);
      for (std::size_t k = 0; k < closed[z.v].list().size(); ++k) {
        const std::uint32_t outer = closed[z.v].list()[k];
        if (outer & zb) add(z, (outer & ~zb) | embedded);
      }
    }
  };

  while (true) {
    while (!pending.empty()) {
      auto batch = std::move(pending);
      pending.clear();
      for (auto [x, S] : batch) process(x, S);
    }
    for (ObjectId x : c.polytopes()) {
      detail::RefinementSearch search(eng, closed, x);
      const std::uint32_t slots = std::uint32_t{1} << eng.members(x).size();
      for (std::uint32_t S = 0; S < slots; ++S) {
        if (!closed[x.v].contains(S) && search.find(S)) add(x, S);
      }
    }
    if (pending.empty()) break;
  }
  return out;
}

}  // namespace scissors
