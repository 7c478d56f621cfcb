#ifndef SKEWSTONE_LAMBDA_HPP
#define SKEWSTONE_LAMBDA_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "skewstone/algebra.hpp"
#include "skewstone/hom.hpp"
#include "skewstone/stone.hpp"
#include "skewstone/util.hpp"

namespace skewstone {

struct FlagNotDescending : std::runtime_error {
  explicit FlagNotDescending(const std::string& what) : std::runtime_error(what) {}
};

// lambda_n(X): all maps X -> {0,...,n+1} with pointwise primitive-algebra
// operations. Elements are encoded mixed radix (first point most
// significant), so codes sort lexicographically by value tuple and 0 is zero.
// Kept lazy: the table form is materialized on request only.
//
// The compactness side condition on the level sets is vacuous for finite
// discrete X; levels_compact records it as the always-true predicate.
struct LambdaAlgebra {
  FiniteBooleanSpace space;
  int n = 0;

  std::int64_t size() const { return ipow(n + 2, space.size()); }
  int radix() const { return n + 2; }

  std::vector<int> decode(std::int64_t e) const {
    std::vector<int> v(static_cast<size_t>(space.size()));
    for (int i = space.size() - 1; i >= 0; --i) {
      v[static_cast<size_t>(i)] = static_cast<int>(e % radix());
      e /= radix();
    }
    return v;
  }

  std::int64_t encode(const std::vector<int>& v) const {
    std::int64_t e = 0;
    for (int d : v) e = e * radix() + d;
    return e;
  }

  int value(std::int64_t e, int point) const {
    for (int i = space.size() - 1; i > point; --i) e /= radix();
    return static_cast<int>(e % radix());
  }

  bool levels_compact(std::int64_t) const { return true; }

  std::int64_t meet(std::int64_t a, std::int64_t b) const {
    auto va = decode(a), vb = decode(b);
    for (size_t i = 0; i < va.size(); ++i)
      va[i] = (va[i] != 0 && vb[i] != 0) ? va[i] : 0;
    return encode(va);
  }

  std::int64_t join(std::int64_t a, std::int64_t b) const {
    auto va = decode(a), vb = decode(b);
    for (size_t i = 0; i < va.size(); ++i)
      if (vb[i] != 0) va[i] = vb[i];
    return encode(va);
  }

  // closed form (f\g)(x) = f(x) when g(x) = 0, else 0
  std::int64_t relative_complement(std::int64_t a, std::int64_t b) const {
    auto va = decode(a), vb = decode(b);
    for (size_t i = 0; i < va.size(); ++i)
      if (vb[i] != 0) va[i] = 0;
    return encode(va);
  }

  // intersections always exist: keep points where the values agree
  std::int64_t glb(std::int64_t a, std::int64_t b) const {
    auto va = decode(a), vb = decode(b);
    for (size_t i = 0; i < va.size(); ++i)
      if (va[i] != vb[i]) va[i] = 0;
    return encode(va);
  }

  bool leq(std::int64_t a, std::int64_t b) const {
    auto va = decode(a), vb = decode(b);
    for (size_t i = 0; i < va.size(); ++i)
      if (va[i] != 0 && va[i] != vb[i]) return false;
    return true;
  }

  unsigned support_mask(std::int64_t e) const {
    auto v = decode(e);
    unsigned m = 0;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) m |= 1u << i;
    return m;
  }

  std::string element_name(std::int64_t e) const {
    auto v = decode(e);
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
      s += (i ? "," : "") + std::to_string(v[i]);
    return s.empty() ? "0" : s;
  }

  FiniteLeftSkewBA table(std::int64_t cap = 2048) const {
    const std::int64_t m = size();
    if (m > cap)
      throw SizeGuardError("lambda algebra too large to materialize: " +
                           std::to_string(m));
    FiniteLeftSkewBA s;
    s.size = static_cast<int>(m);
    s.meet.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
    s.join.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = 0; b < m; ++b) {
        s.meet[static_cast<size_t>(a * m + b)] = static_cast<int>(meet(a, b));
        s.join[static_cast<size_t>(a * m + b)] = static_cast<int>(join(a, b));
      }
    for (std::int64_t a = 0; a < m; ++a) s.names.push_back(element_name(a));
    return s;
  }
};

inline LambdaAlgebra build_lambda(FiniteBooleanSpace x, int n) {
  if (n < 0) throw MalformedTable("lambda level must be >= 0");
  return LambdaAlgebra{std::move(x), n};
}

// Tuple encoding: the pairwise disjoint level sets (f^{-1}(1), ...,
// f^{-1}(n+1)), each sorted.
using LevelTuple = std::vector<std::vector<int>>;

inline LevelTuple tuple_of(const LambdaAlgebra& l, std::int64_t e) {
  auto v = l.decode(e);
  LevelTuple t(static_cast<size_t>(l.n + 1));
  for (size_t x = 0; x < v.size(); ++x)
    if (v[x] != 0) t[static_cast<size_t>(v[x] - 1)].push_back(static_cast<int>(x));
  return t;
}

inline std::int64_t element_of_tuple(const LambdaAlgebra& l, const LevelTuple& t) {
  if (t.size() != static_cast<size_t>(l.n + 1))
    throw MalformedTable("tuple must have n+1 level sets");
  std::vector<int> v(static_cast<size_t>(l.space.size()), 0);
  for (size_t i = 0; i < t.size(); ++i)
    for (int x : t[i]) {
      if (v[static_cast<size_t>(x)] != 0)
        throw MalformedTable("tuple level sets must be pairwise disjoint");
      v[static_cast<size_t>(x)] = static_cast<int>(i) + 1;
    }
  return l.encode(v);
}

// Flags A_{n+1} >= ... >= A_1 of point subsets, stored highest level first;
// slot j holds the level-(n+1-j) set f^{-1}({1,...,n+1-j}) sorted.
using Flag = std::vector<std::vector<int>>;

inline Flag flag_of(const LambdaAlgebra& l, std::int64_t e) {
  auto v = l.decode(e);
  Flag f(static_cast<size_t>(l.n + 1));
  for (size_t j = 0; j < f.size(); ++j) {
    int level = l.n + 1 - static_cast<int>(j);
    for (size_t x = 0; x < v.size(); ++x)
      if (v[x] >= 1 && v[x] <= level) f[j].push_back(static_cast<int>(x));
  }
  return f;
}

inline void check_flag(const LambdaAlgebra& l, const Flag& f) {
  if (f.size() != static_cast<size_t>(l.n + 1))
    throw FlagNotDescending("flag must have n+1 levels");
  for (size_t j = 0; j + 1 < f.size(); ++j)
    if (!std::includes(f[j].begin(), f[j].end(), f[j + 1].begin(), f[j + 1].end()))
      throw FlagNotDescending("flag levels must descend");
}

inline std::int64_t element_of_flag(const LambdaAlgebra& l, const Flag& f) {
  check_flag(l, f);
  std::vector<int> v(static_cast<size_t>(l.space.size()), 0);
  for (size_t j = 0; j < f.size(); ++j) {
    int level = l.n + 1 - static_cast<int>(j);
    for (int x : f[j]) v[static_cast<size_t>(x)] = level;
  }
  // the smallest level containing x wins, which the loop above arranges by
  // overwriting with descending levels
  return l.encode(v);
}

namespace detail {
inline std::vector<int> set_union(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline std::vector<int> set_inter(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}
inline std::vector<int> set_diff(const std::vector<int>& a,
                                 const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}
}  // namespace detail

// C_i = (A_i \ B_{n+1}) u B_i
inline Flag flag_join(const LambdaAlgebra& l, const Flag& a, const Flag& b) {
  check_flag(l, a);
  check_flag(l, b);
  Flag c(a.size());
  for (size_t j = 0; j < a.size(); ++j)
    c[j] = detail::set_union(detail::set_diff(a[j], b[0]), b[j]);
  return c;
}

// D_i = A_i n B_{n+1}
inline Flag flag_meet(const LambdaAlgebra& l, const Flag& a, const Flag& b) {
  check_flag(l, a);
  check_flag(l, b);
  Flag c(a.size());
  for (size_t j = 0; j < a.size(); ++j) c[j] = detail::set_inter(a[j], b[0]);
  return c;
}

// lambda_n on a space map g: X1 -> X2 precomposes, giving a proper
// homomorphism lambda_n(X2) -> lambda_n(X1).
inline std::int64_t lambda_on_map_elem(const SpaceMap& g, const LambdaAlgebra& l2,
                                       const LambdaAlgebra& l1, std::int64_t f) {
  auto v2 = l2.decode(f);
  std::vector<int> v1(static_cast<size_t>(l1.space.size()));
  for (size_t x = 0; x < v1.size(); ++x) v1[x] = v2[static_cast<size_t>(g[x])];
  return l1.encode(v1);
}

inline HomMap lambda_on_map(const SpaceMap& g, const LambdaAlgebra& l2,
                            const LambdaAlgebra& l1, std::int64_t cap = 2048) {
  if (l2.size() > cap) throw SizeGuardError("lambda_on_map domain too large");
  HomMap h;
  for (std::int64_t f = 0; f < l2.size(); ++f)
    h.push_back(static_cast<int>(lambda_on_map_elem(g, l2, l1, f)));
  return h;
}

// Ultrafilter families of lambda_n(X): N_x on the quotient and N_{x,i} on the
// algebra, listed per point in declared order.
struct UltrafilterFamilies {
  // per point x: element codes with f(x) != 0 grouped into quotient classes
  std::vector<std::vector<int>> n_x;        // class ids (of the table quotient)
  std::vector<std::vector<std::vector<std::int64_t>>> n_x_i;  // [x][i-1] -> codes
};

inline UltrafilterFamilies ultrafilter_families(const LambdaAlgebra& l,
                                                const BooleanQuotient& q) {
  UltrafilterFamilies u;
  const std::int64_t m = l.size();
  u.n_x.resize(static_cast<size_t>(l.space.size()));
  u.n_x_i.resize(static_cast<size_t>(l.space.size()));
  for (int x = 0; x < l.space.size(); ++x) {
    u.n_x_i[static_cast<size_t>(x)].resize(static_cast<size_t>(l.n + 1));
    std::vector<bool> seen(q.d.classes.size(), false);
    for (std::int64_t e = 0; e < m; ++e) {
      int v = l.value(e, x);
      if (v == 0) continue;
      u.n_x_i[static_cast<size_t>(x)][static_cast<size_t>(v - 1)].push_back(e);
      int cls = q.d.cls_of[static_cast<size_t>(e)];
      if (!seen[static_cast<size_t>(cls)]) {
        seen[static_cast<size_t>(cls)] = true;
        u.n_x[static_cast<size_t>(x)].push_back(cls);
      }
    }
    std::sort(u.n_x[static_cast<size_t>(x)].begin(),
              u.n_x[static_cast<size_t>(x)].end());
  }
  return u;
}

struct LemmaReport {
  bool all_pass = true;
  std::vector<std::string> failures;
  void fail(const std::string& what) {
    all_pass = false;
    failures.push_back(what);
  }
};

// Exhaustive check of the structure lemmas of lambda_n(X) against the
// table-derived notions: D-classes are support fibers, the order is levelwise
// preimage containment, intersections exist and are computed levelwise, flag
// formulas agree with the pointwise operations, and the quotient is the dual
// algebra of X.
inline LemmaReport d_and_order_lemmas(const FiniteBooleanSpace& x, int n) {
  LemmaReport rep;
  LambdaAlgebra l = build_lambda(x, n);
  FiniteLeftSkewBA t = l.table();
  BooleanQuotient q = max_boolean_image(t);
  const int m = t.size;

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      bool same_class = q.d.cls_of[static_cast<size_t>(a)] ==
                        q.d.cls_of[static_cast<size_t>(b)];
      if (same_class != (l.support_mask(a) == l.support_mask(b)))
        rep.fail("D-class lemma at (" + std::to_string(a) + "," +
                 std::to_string(b) + ")");

      bool containment = true;  // a^{-1}(i) inside b^{-1}(i) for all i >= 1
      auto va = l.decode(a), vb = l.decode(b);
      for (size_t p = 0; p < va.size(); ++p)
        if (va[p] != 0 && vb[p] != va[p]) containment = false;
      if (containment != natural_leq(t, a, b))
        rep.fail("order lemma at (" + std::to_string(a) + "," +
                 std::to_string(b) + ")");

      auto g = intersection(t, a, b);
      if (!g || *g != static_cast<int>(l.glb(a, b)))
        rep.fail("intersection lemma at (" + std::to_string(a) + "," +
                 std::to_string(b) + ")");

      std::int64_t fj = element_of_flag(l, flag_join(l, flag_of(l, a), flag_of(l, b)));
      std::int64_t fm = element_of_flag(l, flag_meet(l, flag_of(l, a), flag_of(l, b)));
      if (fj != t.j(a, b) || fm != t.m(a, b))
        rep.fail("flag formula at (" + std::to_string(a) + "," +
                 std::to_string(b) + ")");
    }

  // quotient vs dual algebra of X, via class -> support
  FiniteBooleanAlgebra a0 = dual_algebra_A(x);
  std::vector<int> cls_mask(q.d.classes.size(), -1);
  for (int e = 0; e < m; ++e) {
    int c = q.d.cls_of[static_cast<size_t>(e)];
    int mask = static_cast<int>(l.support_mask(e));
    if (cls_mask[static_cast<size_t>(c)] == -1)
      cls_mask[static_cast<size_t>(c)] = mask;
    else if (cls_mask[static_cast<size_t>(c)] != mask)
      rep.fail("class support not constant in class " + std::to_string(c));
  }
  if (!is_bijection(cls_mask, a0.alg.size) ||
      !is_homomorphism(cls_mask, q.q.alg, a0.alg).is_morphism())
    rep.fail("quotient is not the dual algebra of the base");
  return rep;
}

}  // namespace skewstone

#endif  // SKEWSTONE_LAMBDA_HPP
