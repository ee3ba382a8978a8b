#include "scissors/validate.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <sstream>

#include "cover_engine.hpp"
#include "scissors/error.hpp"

namespace scissors {

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& ValidationReport::at(std::string_view axiom) const {
  for (const auto& c : checks) {
    if (c.axiom == axiom) return c;
  }
  throw Error("report has no entry for axiom " + std::string(axiom));
}

std::vector<std::string> ValidationReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.axiom);
  }
  return out;
}

std::string format_report(const ValidationReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << "(" << c.axiom << ") " << (!c.passed ? "FAIL" : c.skipped ? "skipped" : "pass");
    if (!c.passed || c.skipped) os << ": " << c.witness;
    os << "\n";
  }
  return os.str();
}

namespace {

// Records the first failure of one axiom.
class Check {
 public:
  explicit Check(std::string axiom) { result_.axiom = std::move(axiom); }
  bool failed() const { return !result_.passed; }
  bool skipped() const { return result_.skipped; }
  bool fail(std::string witness) {
    if (result_.passed) {
      result_.passed = false;
      result_.witness = std::move(witness);
    }
    return false;
  }
  void skip(std::string reason) {
    result_.skipped = true;
    result_.witness = std::move(reason);
  }
  AxiomCheck take() { return std::move(result_); }

 private:
  AxiomCheck result_;
};

std::string family_text(const PolytopeComplex& c, const Family& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? ", " : "") + c.name(f[i]);
  return out + "}";
}

std::string mask_text(const PolytopeComplex& c, const TargetCovers& tc, std::uint32_t mask) {
  return family_text(c, tc.family_of(mask));
}

const std::string& hname(const PolytopeComplex& c, HMorId h) { return c.hmor(h).name; }

std::optional<ObjectId> meet_of(const PolytopeComplex& c, ObjectId a, ObjectId b) {
  const std::int32_t m = c.meet_table[a.v * c.size() + b.v];
  if (m < 0 || static_cast<std::size_t>(m) >= c.size()) return std::nullopt;
  return ObjectId{static_cast<std::uint32_t>(m)};
}

void check_order(const PolytopeComplex& c, Check& v) {
  const std::size_t n = c.size();
  for (std::uint32_t a = 0; a < n && !v.failed(); ++a) {
    const ObjectId A{a};
    if (!c.leq(A, A)) v.fail("order is not reflexive at " + c.name(A));
    if (!c.leq(c.bottom, A)) v.fail("bottom " + c.name(c.bottom) + " is not below " + c.name(A));
    for (std::uint32_t b = 0; b < n && !v.failed(); ++b) {
      const ObjectId B{b};
      if (a != b && c.leq(A, B) && c.leq(B, A)) {
        v.fail(c.name(A) + " and " + c.name(B) + " are below each other");
      }
      if (!c.leq(A, B)) continue;
      for (std::uint32_t d = 0; d < n; ++d) {
        if (c.leq(B, ObjectId{d}) && !c.leq(A, ObjectId{d})) {
          v.fail("order is not transitive: " + c.name(A) + " <= " + c.name(B) + " <= " + c.name(ObjectId{d}));
          break;
        }
      }
    }
  }
  for (std::uint32_t a = 0; a < n && !v.failed(); ++a) {
    for (std::uint32_t b = 0; b < n && !v.failed(); ++b) {
      const ObjectId A{a}, B{b};
      const auto m = meet_of(c, A, B);
      if (!m) {
        v.fail("no meet of " + c.name(A) + " and " + c.name(B));
        break;
      }
      if (!c.leq(*m, A) || !c.leq(*m, B)) {
        v.fail("meet(" + c.name(A) + ", " + c.name(B) + ") = " + c.name(*m) + " is not a lower bound");
        break;
      }
      for (std::uint32_t l = 0; l < n; ++l) {
        const ObjectId L{l};
        if (c.leq(L, A) && c.leq(L, B) && !c.leq(L, *m)) {
          v.fail("meet(" + c.name(A) + ", " + c.name(B) + ") = " + c.name(*m) + " but " + c.name(L) +
                 " is a lower bound not below it");
          break;
        }
      }
    }
  }
}

void check_topology(const PolytopeComplex& c, const detail::CoverEngine& eng, Check& v) {
  const auto& closed = c.covers.closed;
  for (ObjectId x : c.polytopes()) {
    if (closed.size() != c.size() || closed[x.v].members() != eng.members(x)) {
      v.fail("cover table of " + c.name(x) + " is not indexed by its down-set");
      return;
    }
  }
  for (ObjectId x : c.polytopes()) {
    const TargetCovers& cx = closed[x.v];
    const auto& mx = eng.members(x);
    const std::uint32_t xb = eng.bit(x, x);
    if (!cx.contains(xb)) {
      v.fail("identity family {" + c.name(x) + "} does not cover " + c.name(x));
      return;
    }
    std::vector<int> singles;
    for (std::uint32_t q = 0; q < mx.size(); ++q) {
      if (mx[q] != x && cx.contains(xb | (std::uint32_t{1} << q))) singles.push_back(static_cast<int>(q));
    }
    for (std::uint32_t S : cx.list()) {
      for (ObjectId y : mx) {
        if (y == x) continue;
        const std::uint32_t P = eng.pullback(x, S, y);
        if (!closed[y.v].contains(P)) {
          v.fail("pullback of " + mask_text(c, cx, S) + " covering " + c.name(x) + " to " + c.name(y) + " gives " +
                 mask_text(c, closed[y.v], P) + ", which is not a cover");
          return;
        }
      }
      for (std::uint32_t rest = S & ~xb; rest != 0; rest &= rest - 1) {
        const int pos = std::countr_zero(rest);
        const ObjectId s = mx[pos];
        for (std::uint32_t T : closed[s.v].list()) {
          const std::uint32_t R = (S & ~(std::uint32_t{1} << pos)) | eng.embed(x, s, T);
          if (!cx.contains(R)) {
            v.fail("refining " + c.name(s) + " in " + mask_text(c, cx, S) + " by " + mask_text(c, closed[s.v], T) +
                   " gives " + mask_text(c, cx, R) + ", which does not cover " + c.name(x));
            return;
          }
        }
      }
      for (int q : singles) {
        const std::uint32_t R = S | (std::uint32_t{1} << q);
        if (!cx.contains(R)) {
          v.fail("refining " + c.name(x) + " in {" + c.name(x) + ", " + c.name(mx[q]) + "} by " +
                 mask_text(c, cx, S) + " gives " + mask_text(c, cx, R) + ", which does not cover " + c.name(x));
          return;
        }
      }
    }
  }
}

void check_groupoid(const PolytopeComplex& c, Check& h) {
  const std::size_t n = c.size();
  const std::size_t m = c.hmors.size();
  for (std::uint32_t i = 0; i < m; ++i) {
    const HMor& hm = c.hmors[i];
    if (hm.src.v >= n || hm.dst.v >= n) return void(h.fail(hm.name + " has an endpoint outside the object table"));
  }
  if (c.identity.size() != n || c.out.size() != n || c.inverse_table.size() != m) {
    return void(h.fail("horizontal tables have inconsistent sizes"));
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    const HMorId id = c.identity[a];
    if (id.v >= m || c.hmor(id).src != ObjectId{a} || c.hmor(id).dst != ObjectId{a}) {
      return void(h.fail("identity of " + c.name(ObjectId{a}) + " is not an endomorphism of it"));
    }
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    const HMorId x{i};
    const HMor& hm = c.hmor(x);
    if ((hm.src == c.bottom || hm.dst == c.bottom) && x != c.identity[c.bottom.v]) {
      return void(h.fail(hm.name + " touches the bottom object but is not its identity"));
    }
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    const HMorId x{i};
    const HMor& hx = c.hmor(x);
    const auto l = c.compose(c.identity[hx.dst.v], x);
    const auto r = c.compose(x, c.identity[hx.src.v]);
    if (l != x || r != x) return void(h.fail("identity law fails for " + hx.name));
    for (HMorId g : c.out[hx.dst.v]) {
      const auto gx = c.compose(g, x);
      if (!gx) return void(h.fail("composite " + hname(c, g) + " o " + hx.name + " is undefined"));
      if (gx->v >= m || c.hmor(*gx).src != hx.src || c.hmor(*gx).dst != c.hmor(g).dst) {
        return void(h.fail("composite " + hname(c, g) + " o " + hx.name + " has the wrong endpoints"));
      }
    }
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    const HMorId x{i};
    for (HMorId g : c.out[c.hmor(x).dst.v]) {
      const HMorId gx = *c.compose(g, x);
      for (HMorId f : c.out[c.hmor(g).dst.v]) {
        const auto left = c.compose(f, gx);
        const auto right = c.compose(*c.compose(f, g), x);
        if (left != right) {
          return void(h.fail("associativity fails for (" + hname(c, f) + ", " + hname(c, g) + ", " + hname(c, x) + ")"));
        }
      }
    }
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    const HMorId x{i};
    const HMor& hx = c.hmor(x);
    const auto inv = c.inverse(x);
    if (!inv || inv->v >= m) return void(h.fail(hx.name + " has no inverse"));
    const HMor& hi = c.hmor(*inv);
    if (hi.src != hx.dst || hi.dst != hx.src || c.compose(*inv, x) != c.identity[hx.src.v] ||
        c.compose(x, *inv) != c.identity[hx.dst.v]) {
      return void(h.fail("inverse of " + hx.name + " is given as " + hi.name + ", which is not two-sided"));
    }
  }
}

void check_restriction(const PolytopeComplex& c, Check& p) {
  const std::size_t m = c.hmors.size();
  for (std::uint32_t i = 0; i < m; ++i) {
    const HMorId x{i};
    const HMor& hx = c.hmor(x);
    std::vector<ObjectId> image;
    for (ObjectId sub : c.down[hx.dst.v]) {
      const auto lift = c.restriction(x, sub);
      if (!lift || lift->v >= m) return void(p.fail("no restriction of " + hx.name + " at " + c.name(sub)));
      const HMor& hl = c.hmor(*lift);
      if (hl.dst != sub || !c.leq(hl.src, hx.src)) {
        return void(p.fail("restriction of " + hx.name + " at " + c.name(sub) + " is " + hl.name +
                           ", which does not land on " + c.name(sub) + " from below " + c.name(hx.src)));
      }
      image.push_back(hl.src);
    }
    if (c.restriction(x, hx.dst) != x) return void(p.fail("restriction of " + hx.name + " at its target is not itself"));
    if (c.restriction(x, c.bottom) != c.identity[c.bottom.v]) {
      return void(p.fail("restriction of " + hx.name + " at the bottom is not the bottom identity"));
    }
    const auto& dom = c.down[hx.dst.v];
    auto sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != c.down[hx.src.v]) {
      return void(p.fail("restriction along " + hx.name + " is not a bijection of down-sets"));
    }
    for (std::size_t a = 0; a < dom.size(); ++a) {
      for (std::size_t b = 0; b < dom.size(); ++b) {
        if (c.leq(dom[a], dom[b]) != c.leq(image[a], image[b])) {
          return void(p.fail("restriction along " + hx.name + " does not preserve the order between " +
                             c.name(dom[a]) + " and " + c.name(dom[b])));
        }
      }
    }
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    const HMorId x{i};
    for (HMorId g : c.out[c.hmor(x).dst.v]) {
      const auto gx = c.compose(g, x);
      if (!gx) continue;
      for (ObjectId sub : c.down[c.hmor(g).dst.v]) {
        const HMorId lg = *c.restriction(g, sub);
        const HMorId lx = *c.restriction(x, c.hmor(lg).src);
        const auto composite = c.compose(lg, lx);
        if (composite && composite != c.restriction(*gx, sub)) {
          return void(p.fail("restricting " + hname(c, *gx) + " at " + c.name(sub) +
                             " disagrees with restricting its factors " + hname(c, g) + ", " + hname(c, x)));
        }
      }
    }
  }
}

void check_horizontal_stability(const PolytopeComplex& c, const detail::CoverEngine& eng, Check& ck) {
  for (std::uint32_t i = 0; i < c.hmors.size(); ++i) {
    const HMorId x{i};
    const HMor& hx = c.hmor(x);
    if (hx.dst == c.bottom || c.is_identity(x)) continue;
    const TargetCovers& cd = c.covers.closed[hx.dst.v];
    const TargetCovers& cs = c.covers.closed[hx.src.v];
    for (std::uint32_t S : cd.list()) {
      const auto img = eng.transport(x, S);
      if (img && !cs.contains(*img)) {
        return void(ck.fail("restricting the cover " + mask_text(c, cd, S) + " of " + c.name(hx.dst) + " along " +
                            hx.name + " gives " + mask_text(c, cs, *img) + ", which does not cover " +
                            c.name(hx.src)));
      }
    }
  }
}

void check_refinement(const PolytopeComplex& c, const detail::CoverEngine& eng, Check& b) {
  for (ObjectId x : c.polytopes()) {
    const TargetCovers& cx = c.covers.closed[x.v];
    detail::RefinementSearch search(eng, c.covers.closed, x);
    const std::uint32_t slots = std::uint32_t{1} << eng.members(x).size();
    for (std::uint32_t S = 0; S < slots; ++S) {
      if (cx.contains(S)) continue;
      if (const auto w = search.find(S)) {
        return void(b.fail(mask_text(c, cx, S) + " is not a cover of " + c.name(x) +
                           ", but refining its members gives the cover " + mask_text(c, cx, *w)));
      }
    }
  }
}

}  // namespace

ValidationReport validate(const PolytopeComplex& c) {
  Check v("V"), h("H"), p("P"), ck("C"), b("B");
  std::optional<detail::CoverEngine> eng;
  if (c.size() == 0 || c.bottom.v >= c.size() || c.leq_matrix.size() != c.size() * c.size() ||
      c.meet_table.size() != c.size() * c.size()) {
    v.fail("vertical tables are missing or have the wrong size");
  } else {
    check_order(c, v);
  }
  if (!v.failed()) {
    try {
      eng.emplace(c);
      check_topology(c, *eng, v);
    } catch (const CapExceeded& e) {
      v.fail(e.what());
    }
  }

  if (v.failed()) {
    for (Check* x : {&h, &p, &ck, &b}) x->skip("needs (V)");
  } else {
    check_groupoid(c, h);
    if (h.failed()) {
      p.skip("needs (H)");
    } else {
      check_restriction(c, p);
    }
    if (p.failed() || p.skipped()) {
      ck.skip("needs (P)");
    } else {
      check_horizontal_stability(c, *eng, ck);
    }
    check_refinement(c, *eng, b);
  }
  ValidationReport r;
  for (Check* x : {&v, &h, &p, &ck, &b}) r.checks.push_back(x->take());
  return r;
}

ValidationReport validate_functor(const PolytopeFunctor& f) {
  Check fc("FC"), fp("FP");
  if (!f.source || !f.target) {
    fc.fail("functor is missing its source or target");
    ValidationReport r;
    r.checks = {fc.take(), fp.take()};
    return r;
  }
  const PolytopeComplex& s = *f.source;
  const PolytopeComplex& t = *f.target;
  const bool sized = f.objects.size() == s.size() && f.hmors.size() == s.hmors.size() &&
                     std::all_of(f.objects.begin(), f.objects.end(), [&](ObjectId a) { return a.v < t.size(); }) &&
                     std::all_of(f.hmors.begin(), f.hmors.end(), [&](HMorId h) { return h.v < t.hmors.size(); });
  if (!sized) {
    fc.fail("object or morphism map is not total on the source");
    fp.fail("object or morphism map is not total on the source");
  } else {
    if (f(s.bottom) != t.bottom) fc.fail("bottom maps to " + t.name(f(s.bottom)));
    for (std::uint32_t a = 0; a < s.size() && !fc.failed(); ++a) {
      for (std::uint32_t b = 0; b < s.size() && !fc.failed(); ++b) {
        const ObjectId A{a}, B{b};
        if (s.leq(A, B) && !t.leq(f(A), f(B))) {
          fc.fail(s.name(A) + " <= " + s.name(B) + " but " + t.name(f(A)) + " is not below " + t.name(f(B)));
        } else if (f(s.meet(A, B)) != t.meet(f(A), f(B))) {
          fc.fail("meet of " + s.name(A) + " and " + s.name(B) + " is not preserved");
        }
      }
    }
    for (ObjectId x : s.polytopes()) {
      if (fc.failed()) break;
      const TargetCovers& cx = s.covers.closed[x.v];
      for (std::uint32_t S : cx.list()) {
        Family image;
        for (ObjectId y : cx.family_of(S)) image.push_back(f(y));
        image = make_family(std::move(image));
        if (!is_cover(t, f(x), image)) {
          fc.fail("the cover " + mask_text(s, cx, S) + " of " + s.name(x) + " maps to " + family_text(t, image) +
                  ", which does not cover " + t.name(f(x)));
          break;
        }
      }
    }

    for (std::uint32_t i = 0; i < s.hmors.size() && !fp.failed(); ++i) {
      const HMorId h{i};
      const HMor& hs = s.hmor(h);
      const HMor& ht = t.hmor(f(h));
      if (ht.src != f(hs.src) || ht.dst != f(hs.dst)) {
        fp.fail(hs.name + " maps to " + ht.name + " with the wrong endpoints");
      } else if (s.is_identity(h) && !t.is_identity(f(h))) {
        fp.fail("identity " + hs.name + " maps to " + ht.name);
      } else if (const auto inv = s.inverse(h); inv && t.inverse(f(h)) != f(*inv)) {
        fp.fail("inverse of " + hs.name + " is not preserved");
      }
      for (HMorId g : s.out[hs.dst.v]) {
        if (fp.failed()) break;
        const auto gh = s.compose(g, h);
        if (gh && t.compose(f(g), f(h)) != f(*gh)) {
          fp.fail("composite " + s.hmor(g).name + " o " + hs.name + " is not preserved");
        }
      }
      for (ObjectId sub : s.down[hs.dst.v]) {
        if (fp.failed()) break;
        const auto lift = s.restriction(h, sub);
        if (lift && t.restriction(f(h), f(sub)) != f(*lift)) {
          fp.fail("restriction of " + hs.name + " at " + s.name(sub) + " maps to " + t.hmor(f(*lift)).name +
                  ", not to the restriction of " + ht.name + " at " + t.name(f(sub)));
        }
      }
    }
  }
  ValidationReport r;
  r.checks = {fc.take(), fp.take()};
  return r;
}

}  // namespace scissors
