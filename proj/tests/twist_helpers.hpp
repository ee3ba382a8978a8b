#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "scissors/twist.hpp"
#include "support.hpp"

namespace helpers {

using namespace scissors;

inline SubMap sub(const PolytopeComplex& c, std::initializer_list<const char*> src, std::initializer_list<const char*> dst,
                  std::vector<std::size_t> set_map) {
  SubMap p{support::tw(c, src), support::tw(c, dst), std::move(set_map)};
  check_sub_map(c, p);
  return p;
}

inline Shuffle shuf(const PolytopeComplex& c, std::initializer_list<const char*> src,
                    std::initializer_list<const char*> dst, std::vector<std::size_t> set_map,
                    std::initializer_list<const char*> comps) {
  Shuffle s{support::tw(c, src), support::tw(c, dst), std::move(set_map), {}};
  for (const char* h : comps) s.comps.push_back(c.hmor_at(h));
  check_shuffle(c, s);
  return s;
}

// Equal as sub-maps after reindexing the source.
inline bool same_up_to_reindex(const SubMap& a, const SubMap& b) {
  if (a.dst != b.dst || a.src.size() != b.src.size()) return false;
  auto pieces = [](const SubMap& p) {
    std::vector<std::pair<std::size_t, ObjectId>> v;
    for (std::size_t i = 0; i < p.src.size(); ++i) v.emplace_back(p.set_map[i], p.src[i]);
    std::sort(v.begin(), v.end());
    return v;
  };
  return pieces(a) == pieces(b);
}

// The square (top, bottom, left, right) is a pullback: left and top agree with
// pullback_along_shuffle(bottom, right) after reindexing.
inline bool is_pullback_square(const PolytopeComplex& c, const Shuffle& top, const Shuffle& bottom, const SubMap& left,
                               const SubMap& right) {
  const auto pb = pullback_along_shuffle(c, bottom, right);
  const auto k = factor_through(c, left, pb.q_star);
  if (!k || k->src.size() != pb.b_star.size() || !is_bijective(k->set_map, pb.b_star.size())) return false;
  for (std::size_t i = 0; i < k->src.size(); ++i) {
    if (k->src[i] != pb.b_star[k->set_map[i]]) return false;
    if (top.set_map[i] != pb.sigma_tilde.set_map[k->set_map[i]] || top.comps[i] != pb.sigma_tilde.comps[k->set_map[i]]) {
      return false;
    }
  }
  return true;
}

}  // namespace helpers
