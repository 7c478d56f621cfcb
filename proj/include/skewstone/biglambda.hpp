#ifndef SKEWSTONE_BIGLAMBDA_HPP
#define SKEWSTONE_BIGLAMBDA_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewstone/algebra.hpp"
#include "skewstone/hom.hpp"
#include "skewstone/lambda.hpp"
#include "skewstone/stone.hpp"
#include "skewstone/util.hpp"

namespace skewstone {

// The space Lambda_n(S) of all proper homomorphisms S -> n+2, together with
// the (F, f) encoding of each point: F is the atom whose ultrafilter the
// point inverts to 1, f maps the stalk over F into {1,...,n+1}.
struct BigLambdaSpace {
  FiniteLeftSkewBA s;
  int n = 0;
  AtomStalks st;
  std::vector<HomMap> points;
  std::vector<int> point_atom;
  std::vector<std::vector<int>> point_f;  // stalk position -> value in 1..n+1

  int size() const { return static_cast<int>(points.size()); }

  FiniteBooleanSpace as_space() const {
    FiniteBooleanSpace x;
    for (int i = 0; i < size(); ++i)
      x.points.push_back("phi" + std::to_string(i));
    return x;
  }

  int index_of_map(const HomMap& h) const {
    for (int i = 0; i < size(); ++i)
      if (points[static_cast<size_t>(i)] == h) return i;
    throw MalformedTable("map is not a point of the space");
  }

  // subbase set L(s, i) as a sorted list of point indices
  std::vector<int> subbase(int elem, int i) const {
    std::vector<int> out;
    for (int p = 0; p < size(); ++p)
      if (points[static_cast<size_t>(p)][static_cast<size_t>(elem)] == i)
        out.push_back(p);
    return out;
  }
};

struct PointEncoding {
  int atom = 0;
  std::vector<int> f;
};

inline PointEncoding encode_point(const FiniteLeftSkewBA& s, const AtomStalks& st,
                                  const HomMap& phi) {
  PointEncoding e;
  int found = -1;
  for (int ai = 0; ai < st.atom_count(); ++ai) {
    int rep = st.stalk[static_cast<size_t>(ai)][0];
    if (phi[static_cast<size_t>(rep)] != 0) {
      if (found >= 0) throw NotProper("kernel ultrafilter not prime");
      found = ai;
    }
  }
  if (found < 0) throw NotProper("morphism kills every atom");
  e.atom = found;
  for (int x : st.stalk[static_cast<size_t>(found)])
    e.f.push_back(phi[static_cast<size_t>(x)]);
  (void)s;
  return e;
}

inline HomMap decode_point(const FiniteLeftSkewBA& s, const AtomStalks& st, int n,
                           const PointEncoding& e) {
  FiniteLeftSkewBA prim = primitive_algebra(n);
  AtomStalks ts = atom_stalks(prim);
  std::vector<int> comp;
  for (int v : e.f) comp.push_back(v - 1);  // value -> stalk position in n+2
  return hom_from_stalk_data(s, prim, st, ts, {e.atom}, {comp});
}

inline BigLambdaSpace build_biglambda(const FiniteLeftSkewBA& s, int n) {
  BigLambdaSpace b;
  b.s = s;
  b.n = n;
  b.st = atom_stalks(s);
  b.points = enumerate_homs(s, primitive_algebra(n));
  for (const auto& p : b.points) {
    auto e = encode_point(s, b.st, p);
    b.point_atom.push_back(e.atom);
    b.point_f.push_back(std::move(e.f));
  }
  return b;
}

// Lambda_n on a morphism h: S1 -> S2 precomposes, mapping Lambda_n(S2) to
// Lambda_n(S1); returned as point indices.
inline std::vector<int> biglambda_on_hom(const HomMap& h, const BigLambdaSpace& b2,
                                         const BigLambdaSpace& b1) {
  if (!is_proper_morphism(h, b1.s, b2.s))
    throw NotProper("biglambda_on_hom requires a proper homomorphism");
  std::vector<int> out;
  for (const auto& phi : b2.points) {
    HomMap comp(static_cast<size_t>(b1.s.size));
    for (int a = 0; a < b1.s.size; ++a)
      comp[static_cast<size_t>(a)] = phi[static_cast<size_t>(h[static_cast<size_t>(a)])];
    out.push_back(b1.index_of_map(comp));
  }
  return out;
}

// Subbase structure report: the zero-level identity
// L(s,0) = union over {t : alpha(t) & alpha(s) = 0} of the L(t,i), i >= 1,
// plus point separation and one finite-intersection certificate per point.
struct SubbaseReport {
  LemmaReport lemmas;
  // per point: the subbase sets (elem, value) whose intersection is that point
  std::vector<std::vector<std::pair<int, int>>> singleton_certificates;
};

inline SubbaseReport subbase_identity_check(const FiniteLeftSkewBA& s, int n) {
  SubbaseReport rep;
  BigLambdaSpace b = build_biglambda(s, n);
  const auto& alpha = b.st.q.d.cls_of;
  const auto& q = b.st.q.q.alg;

  for (int e = 0; e < s.size; ++e) {
    std::vector<int> lhs;
    for (int p = 0; p < b.size(); ++p)
      if (b.points[static_cast<size_t>(p)][static_cast<size_t>(e)] == 0)
        lhs.push_back(p);
    std::vector<bool> in_union(static_cast<size_t>(b.size()), false);
    for (int t = 0; t < s.size; ++t) {
      if (q.m(alpha[static_cast<size_t>(t)], alpha[static_cast<size_t>(e)]) != 0)
        continue;
      for (int p = 0; p < b.size(); ++p)
        if (b.points[static_cast<size_t>(p)][static_cast<size_t>(t)] != 0)
          in_union[static_cast<size_t>(p)] = true;
    }
    std::vector<int> rhs;
    for (int p = 0; p < b.size(); ++p)
      if (in_union[static_cast<size_t>(p)]) rhs.push_back(p);
    if (lhs != rhs)
      rep.lemmas.fail("zero-level subbase identity fails at element " +
                      std::to_string(e));
  }

  for (int p = 0; p < b.size(); ++p)
    for (int r = p + 1; r < b.size(); ++r) {
      bool separated = false;
      for (int e = 0; e < s.size && !separated; ++e) {
        int vp = b.points[static_cast<size_t>(p)][static_cast<size_t>(e)];
        int vr = b.points[static_cast<size_t>(r)][static_cast<size_t>(e)];
        if (vp != vr && (vp != 0 || vr != 0)) separated = true;
      }
      if (!separated)
        rep.lemmas.fail("points " + std::to_string(p) + " and " +
                        std::to_string(r) + " are not separated");
    }

  // every singleton is a finite intersection of subbase sets: intersect the
  // L(x, phi(x)) over the atom class of phi
  for (int p = 0; p < b.size(); ++p) {
    const auto& phi = b.points[static_cast<size_t>(p)];
    std::vector<std::pair<int, int>> cert;
    std::vector<bool> inside(static_cast<size_t>(b.size()), true);
    for (int x : b.st.stalk[static_cast<size_t>(b.point_atom[static_cast<size_t>(p)])]) {
      cert.emplace_back(x, phi[static_cast<size_t>(x)]);
      for (int r = 0; r < b.size(); ++r)
        if (b.points[static_cast<size_t>(r)][static_cast<size_t>(x)] !=
            phi[static_cast<size_t>(x)])
          inside[static_cast<size_t>(r)] = false;
    }
    int count = 0;
    for (int r = 0; r < b.size(); ++r)
      if (inside[static_cast<size_t>(r)]) ++count;
    if (count != 1 || !inside[static_cast<size_t>(p)])
      rep.lemmas.fail("singleton certificate fails at point " + std::to_string(p));
    rep.singleton_certificates.push_back(std::move(cert));
  }
  return rep;
}

// Points of Lambda_n(lambda_n(Y)) in closed form: a base point y of Y plus a
// transformation g of {1,...,n+1}; the morphism sends f to g(f(y)).
struct EvalPoint {
  int y = 0;
  std::vector<int> g;  // g[i-1] in 1..n+1
};

inline int eval_point(const EvalPoint& p, const LambdaAlgebra& l, std::int64_t f) {
  int v = l.value(f, p.y);
  return v == 0 ? 0 : p.g[static_cast<size_t>(v - 1)];
}

inline std::vector<EvalPoint> biglambda_over_lambda(const LambdaAlgebra& l) {
  std::vector<EvalPoint> out;
  const int k = l.n + 1;
  for (int y = 0; y < l.space.size(); ++y) {
    std::vector<int> digits(static_cast<size_t>(k), 0);
    do {
      EvalPoint p;
      p.y = y;
      for (int d : digits) p.g.push_back(d + 1);
      out.push_back(std::move(p));
    } while (next_tuple(digits, k));
  }
  return out;
}

inline int eval_point_index(const EvalPoint& p, int n) {
  int idx = 0;
  for (int d : p.g) idx = idx * (n + 1) + (d - 1);
  return p.y * static_cast<int>(ipow(n + 1, n + 1)) + idx;
}

// Triple encoding of a point of Lambda_n applied to lambda_n(Lambda_n(S)):
// the generating point of the kernel ultrafilter plus the stalk action g.
struct DoublePointEncoding {
  int base_point = 0;  // index into the Lambda_n(S) points
  int atom = 0;        // F of the generating point
  std::vector<int> f;
  std::vector<int> g;
};

// psi is a morphism out of the lambda algebra over the points of b, given as
// its value vector over that algebra's elements.
inline DoublePointEncoding encode_double_point(const BigLambdaSpace& b,
                                               const LambdaAlgebra& t,
                                               const std::vector<int>& psi) {
  DoublePointEncoding e;
  const int k = t.n + 1;
  int found = -1;
  for (int y = 0; y < t.space.size(); ++y) {
    // indicator with value 1 at point y
    std::vector<int> v(static_cast<size_t>(t.space.size()), 0);
    v[static_cast<size_t>(y)] = 1;
    if (psi[static_cast<size_t>(t.encode(v))] != 0) {
      if (found >= 0) throw NotProper("kernel ultrafilter not prime");
      found = y;
    }
  }
  if (found < 0) throw NotProper("morphism kills every atom");
  e.base_point = found;
  e.atom = b.point_atom[static_cast<size_t>(found)];
  e.f = b.point_f[static_cast<size_t>(found)];
  for (int i = 1; i <= k; ++i) {
    std::vector<int> v(static_cast<size_t>(t.space.size()), 0);
    v[static_cast<size_t>(found)] = i;
    e.g.push_back(psi[static_cast<size_t>(t.encode(v))]);
  }
  return e;
}

}  // namespace skewstone

#endif  // SKEWSTONE_BIGLAMBDA_HPP
