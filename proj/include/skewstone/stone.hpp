#ifndef SKEWSTONE_STONE_HPP
#define SKEWSTONE_STONE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "skewstone/algebra.hpp"
#include "skewstone/hom.hpp"
#include "skewstone/util.hpp"

namespace skewstone {

// A finite Boolean space is a finite discrete point set; every subset is
// compact-open, continuity and properness of maps are vacuous.
struct FiniteBooleanSpace {
  std::vector<std::string> points;
  int size() const { return static_cast<int>(points.size()); }

  int index_of(const std::string& label) const {
    for (size_t i = 0; i < points.size(); ++i)
      if (points[i] == label) return static_cast<int>(i);
    throw MalformedTable("unknown point label: " + label);
  }
};

inline FiniteBooleanSpace make_space(std::vector<std::string> labels) {
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw MalformedTable("duplicate point label: " + labels[i]);
  return FiniteBooleanSpace{std::move(labels)};
}

// A map of finite spaces is the image point index per source point.
using SpaceMap = std::vector<int>;

inline std::string subset_name(const FiniteBooleanSpace& x, unsigned mask) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < x.size(); ++i)
    if (mask & (1u << i)) {
      if (!first) s += ",";
      s += x.points[static_cast<size_t>(i)];
      first = false;
    }
  return s + "}";
}

// Dual algebra of a space: all maps X -> {0,1}, i.e. the powerset algebra.
// Element e is the bitmask of the points mapped to 1; bit i = point i.
inline FiniteBooleanAlgebra dual_algebra_A(const FiniteBooleanSpace& x) {
  if (x.size() > 10) throw SizeGuardError("space too large to dualize");
  const int n = 1 << x.size();
  FiniteLeftSkewBA s;
  s.size = n;
  s.meet.resize(static_cast<size_t>(n) * n);
  s.join.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      s.meet[static_cast<size_t>(a) * n + b] = a & b;
      s.join[static_cast<size_t>(a) * n + b] = a | b;
    }
  for (int a = 0; a < n; ++a)
    s.names.push_back(subset_name(x, static_cast<unsigned>(a)));
  return as_boolean(std::move(s));
}

// Dual space of a Boolean algebra: one point per ultrafilter, i.e. one per
// atom; point i is the up-set of atom i (in ascending element order).
inline FiniteBooleanSpace dual_space_S(const FiniteBooleanAlgebra& b) {
  FiniteBooleanSpace x;
  for (size_t i = 0; i < b.atoms.size(); ++i)
    x.points.push_back("u" + std::to_string(i));
  return x;
}

// Action of A on a space map f: X -> Y is taking preimages, a proper
// homomorphism A(Y) -> A(X).
inline HomMap A_on_map(const SpaceMap& f, const FiniteBooleanSpace& x,
                       const FiniteBooleanSpace& y) {
  const int nx = x.size();
  const int ny = 1 << y.size();
  HomMap h(static_cast<size_t>(ny));
  for (int bmask = 0; bmask < ny; ++bmask) {
    int pre = 0;
    for (int i = 0; i < nx; ++i)
      if (bmask & (1 << f[static_cast<size_t>(i)])) pre |= 1 << i;
    h[static_cast<size_t>(bmask)] = pre;
  }
  return h;
}

// Action of S on a proper homomorphism phi: B1 -> B2 sends the ultrafilter of
// atom q to the unique ultrafilter of B1 it pulls back to.
inline SpaceMap S_on_map(const HomMap& phi, const FiniteBooleanAlgebra& b1,
                         const FiniteBooleanAlgebra& b2) {
  SpaceMap g(b2.atoms.size());
  for (size_t qi = 0; qi < b2.atoms.size(); ++qi) {
    int q = b2.atoms[qi];
    int found = -1;
    for (size_t pi = 0; pi < b1.atoms.size(); ++pi) {
      int img = phi[static_cast<size_t>(b1.atoms[pi])];
      if (b2.alg.leq(q, img)) {
        if (found >= 0) throw NotProper("ultrafilter preimage not prime");
        found = static_cast<int>(pi);
      }
    }
    if (found < 0) throw NotProper("ultrafilter preimage empty");
    g[qi] = found;
  }
  return g;
}

// Canonical homeomorphism X -> S(A(X)): a point goes to the atom holding its
// singleton. Returns the point permutation.
inline SpaceMap unit_space_iso(const FiniteBooleanSpace& x) {
  auto a = dual_algebra_A(x);
  SpaceMap u(static_cast<size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) {
    int mask = 1 << i;
    int found = -1;
    for (size_t ai = 0; ai < a.atoms.size(); ++ai)
      if (a.atoms[ai] == mask) found = static_cast<int>(ai);
    if (found < 0) throw NotBoolean("singleton is not an atom");
    u[static_cast<size_t>(i)] = found;
  }
  return u;
}

// Canonical isomorphism B -> A(S(B)): an element goes to the mask of atoms
// below it.
inline HomMap unit_algebra_iso(const FiniteBooleanAlgebra& b) {
  if (b.atoms.size() > 16) throw SizeGuardError("algebra too large to dualize");
  HomMap h(static_cast<size_t>(b.alg.size));
  for (int e = 0; e < b.alg.size; ++e) {
    int mask = 0;
    for (size_t ai = 0; ai < b.atoms.size(); ++ai)
      if (b.alg.leq(b.atoms[ai], e)) mask |= 1 << ai;
    h[static_cast<size_t>(e)] = mask;
  }
  return h;
}

inline bool is_bijection(const std::vector<int>& v, int codomain) {
  if (v.size() != static_cast<size_t>(codomain)) return false;
  std::vector<bool> seen(static_cast<size_t>(codomain), false);
  for (int x : v) {
    if (x < 0 || x >= codomain || seen[static_cast<size_t>(x)]) return false;
    seen[static_cast<size_t>(x)] = true;
  }
  return true;
}

}  // namespace skewstone

#endif  // SKEWSTONE_STONE_HPP
