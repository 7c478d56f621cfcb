#ifndef SKEWSTONE_HOM_HPP
#define SKEWSTONE_HOM_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "skewstone/algebra.hpp"
#include "skewstone/util.hpp"

namespace skewstone {

// A homomorphism is just the image vector; source/target travel separately.
using HomMap = std::vector<int>;

struct HomReport {
  bool preserves_ops = false;
  bool proper = false;
  std::optional<bool> preserves_intersections;
  bool is_morphism() const { return preserves_ops && proper; }
};

// Operation preservation and properness only; the full three-flag report
// including intersection preservation is is_homomorphism below.
inline bool is_proper_morphism(const HomMap& h, const FiniteLeftSkewBA& s,
                               const FiniteLeftSkewBA& t) {
  if (h.size() != static_cast<size_t>(s.size) || h[0] != 0) return false;
  for (int v : h)
    if (v < 0 || v >= t.size) return false;
  for (int a = 0; a < s.size; ++a)
    for (int b = 0; b < s.size; ++b)
      if (h[s.m(a, b)] != t.m(h[a], h[b]) || h[s.j(a, b)] != t.j(h[a], h[b]))
        return false;
  auto qs = max_boolean_image(s), qt = max_boolean_image(t);
  int top_rep = qs.d.classes[static_cast<size_t>(qs.top_class)][0];
  return qt.d.cls_of[static_cast<size_t>(h[static_cast<size_t>(top_rep)])] ==
         qt.top_class;
}

inline HomReport is_homomorphism(const HomMap& h, const FiniteLeftSkewBA& s,
                                 const FiniteLeftSkewBA& t) {
  HomReport r;
  if (h.size() != static_cast<size_t>(s.size)) return r;
  for (int v : h)
    if (v < 0 || v >= t.size) return r;

  r.preserves_ops = h[0] == 0;
  for (int a = 0; a < s.size && r.preserves_ops; ++a)
    for (int b = 0; b < s.size; ++b)
      if (h[s.m(a, b)] != t.m(h[a], h[b]) || h[s.j(a, b)] != t.j(h[a], h[b])) {
        r.preserves_ops = false;
        break;
      }
  if (!r.preserves_ops) return r;

  // proper = the top D-class lands in the top D-class; for finite Boolean
  // images this is the cofinality condition on the induced map
  auto qs = max_boolean_image(s), qt = max_boolean_image(t);
  int top_rep = qs.d.classes[static_cast<size_t>(qs.top_class)][0];
  r.proper = qt.d.cls_of[h[static_cast<size_t>(top_rep)]] == qt.top_class;

  bool pi = true;
  for (int a = 0; a < s.size && pi; ++a)
    for (int b = 0; b < s.size; ++b) {
      auto g = intersection(s, a, b);
      if (!g) continue;
      auto gt = intersection(t, h[a], h[b]);
      if (!gt || *gt != h[static_cast<size_t>(*g)]) {
        pi = false;
        break;
      }
    }
  r.preserves_intersections = pi;
  return r;
}

// Atom-level view of an algebra: the stalk over an atom D-class is the list
// of its elements (each one the minimal representative of an ultrafilter).
struct AtomStalks {
  BooleanQuotient q;
  std::vector<int> atom_class;             // class id per atom, ascending
  std::vector<std::vector<int>> stalk;     // elements of each atom class
  std::vector<int> germ_class, germ_pos;   // global germ id -> (atom idx, pos)
  std::vector<std::pair<int, int>> germs;  // global id -> (atom idx, element)

  int atom_count() const { return static_cast<int>(atom_class.size()); }
  int germ_count() const { return static_cast<int>(germs.size()); }
};

inline AtomStalks atom_stalks(const FiniteLeftSkewBA& s) {
  AtomStalks a;
  a.q = max_boolean_image(s);
  for (int atom : a.q.q.atoms) a.atom_class.push_back(atom);
  std::sort(a.atom_class.begin(), a.atom_class.end());
  for (size_t i = 0; i < a.atom_class.size(); ++i) {
    auto cls = a.q.d.classes[static_cast<size_t>(a.atom_class[i])];
    std::sort(cls.begin(), cls.end());
    for (size_t p = 0; p < cls.size(); ++p) {
      a.germ_class.push_back(static_cast<int>(i));
      a.germ_pos.push_back(static_cast<int>(p));
      a.germs.emplace_back(static_cast<int>(i), cls[p]);
    }
    a.stalk.push_back(std::move(cls));
  }
  return a;
}

// Position of the germ of a over the given atom (the restriction of a to the
// atom class) within that stalk.
inline int germ_position(const FiniteLeftSkewBA& s, const AtomStalks& st,
                         int a, int atom_idx) {
  const auto& stalk = st.stalk[static_cast<size_t>(atom_idx)];
  for (size_t p = 0; p < stalk.size(); ++p)
    if (s.leq(stalk[p], a)) return static_cast<int>(p);
  throw NotBelow("element has no germ over the atom");
}

inline bool class_above_atom(const AtomStalks& st, int cls, int atom_idx) {
  int atom_cls = st.atom_class[static_cast<size_t>(atom_idx)];
  return st.q.q.alg.leq(atom_cls, cls);
}

// Rebuild the homomorphism determined by a base map on atoms plus one stalk
// function per target atom: h(a) is the join of the chosen germ
// representatives over the atoms below [a].
inline HomMap hom_from_stalk_data(const FiniteLeftSkewBA& s,
                                  const FiniteLeftSkewBA& t,
                                  const AtomStalks& ss, const AtomStalks& ts,
                                  const std::vector<int>& base,
                                  const std::vector<std::vector<int>>& comp) {
  HomMap h(static_cast<size_t>(s.size), 0);
  for (int a = 0; a < s.size; ++a) {
    int acc = 0;
    int cls = ss.q.d.cls_of[static_cast<size_t>(a)];
    for (int qi = 0; qi < ts.atom_count(); ++qi) {
      int p = base[static_cast<size_t>(qi)];
      if (!class_above_atom(ss, cls, p)) continue;
      int pos = germ_position(s, ss, a, p);
      int img = ts.stalk[static_cast<size_t>(qi)]
                        [static_cast<size_t>(comp[static_cast<size_t>(qi)]
                                                 [static_cast<size_t>(pos)])];
      acc = t.j(acc, img);
    }
    h[static_cast<size_t>(a)] = acc;
  }
  return h;
}

// All proper homomorphisms s -> t via the stalk characterization, in
// lexicographic order of (base map tuple, stalk function tuples).
inline std::vector<HomMap> enumerate_homs(const FiniteLeftSkewBA& s,
                                          const FiniteLeftSkewBA& t) {
  AtomStalks ss = atom_stalks(s), ts = atom_stalks(t);
  std::vector<HomMap> out;
  const int na = ts.atom_count();
  if (ss.atom_count() == 0 && na > 0) return out;  // nothing to map onto

  std::vector<int> base(static_cast<size_t>(na), 0);
  do {
    std::vector<std::vector<int>> comp;  // one stalk function per target atom
    std::vector<int> comp_radix;
    for (int qi = 0; qi < na; ++qi) {
      int p = base[static_cast<size_t>(qi)];
      comp.emplace_back(ss.stalk[static_cast<size_t>(p)].size(), 0);
      comp_radix.push_back(
          static_cast<int>(ts.stalk[static_cast<size_t>(qi)].size()));
    }
    bool more = true;
    while (more) {
      out.push_back(hom_from_stalk_data(s, t, ss, ts, base, comp));
      // advance the flattened odometer over all stalk functions
      more = false;
      for (int qi = na - 1; qi >= 0 && !more; --qi) {
        auto& f = comp[static_cast<size_t>(qi)];
        for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
          if (++f[static_cast<size_t>(i)] < comp_radix[static_cast<size_t>(qi)]) {
            more = true;
            break;
          }
          f[static_cast<size_t>(i)] = 0;
        }
      }
    }
  } while (na > 0 && next_tuple(base, ss.atom_count()));
  return out;
}

// Independent oracle: filter every carrier map. Only usable when
// |t|^|s| stays small; callers guard with max_candidates.
inline std::vector<HomMap> enumerate_homs_brute_force(
    const FiniteLeftSkewBA& s, const FiniteLeftSkewBA& t,
    std::int64_t max_candidates = 6561) {
  if (ipow(t.size, s.size) > max_candidates)
    throw SizeGuardError("brute-force hom enumeration too large");
  std::vector<HomMap> out;
  HomMap h(static_cast<size_t>(s.size), 0);
  do {
    auto r = is_homomorphism(h, s, t);
    if (r.is_morphism()) out.push_back(h);
  } while (next_tuple(h, t.size));
  return out;
}

// Backtracking-free isomorphism search: an isomorphism is a bijection of
// atoms with equal stalk sizes together with per-stalk germ bijections.
inline std::optional<HomMap> is_isomorphic(const FiniteLeftSkewBA& s,
                                           const FiniteLeftSkewBA& t) {
  if (s.size != t.size) return std::nullopt;
  AtomStalks ss = atom_stalks(s), ts = atom_stalks(t);
  if (ss.atom_count() != ts.atom_count()) return std::nullopt;
  {
    std::vector<size_t> ps, pt;
    for (const auto& k : ss.stalk) ps.push_back(k.size());
    for (const auto& k : ts.stalk) pt.push_back(k.size());
    std::sort(ps.begin(), ps.end());
    std::sort(pt.begin(), pt.end());
    if (ps != pt) return std::nullopt;
  }
  const int na = ss.atom_count();
  std::vector<int> perm(static_cast<size_t>(na));
  for (int i = 0; i < na; ++i) perm[static_cast<size_t>(i)] = i;
  // search over atom bijections seeded by stalk-size fingerprints
  std::sort(perm.begin(), perm.end());
  do {
    bool sizes_ok = true;
    for (int qi = 0; qi < na && sizes_ok; ++qi)
      sizes_ok = ts.stalk[static_cast<size_t>(qi)].size() ==
                 ss.stalk[static_cast<size_t>(perm[static_cast<size_t>(qi)])].size();
    if (!sizes_ok) continue;
    // base map for hom_from_stalk_data: target atom -> source atom
    std::vector<std::vector<int>> comp;
    for (int qi = 0; qi < na; ++qi) {
      std::vector<int> id(ts.stalk[static_cast<size_t>(qi)].size());
      for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
      comp.push_back(std::move(id));
    }
    // iterate germ bijections per atom
    bool more = true;
    while (more) {
      HomMap h = hom_from_stalk_data(s, t, ss, ts, perm, comp);
      std::vector<bool> seen(static_cast<size_t>(t.size), false);
      bool bij = true;
      for (int v : h) {
        if (seen[static_cast<size_t>(v)]) {
          bij = false;
          break;
        }
        seen[static_cast<size_t>(v)] = true;
      }
      if (bij && is_homomorphism(h, s, t).is_morphism()) return h;
      // next permutation tuple across per-atom germ bijections
      more = false;
      for (int qi = na - 1; qi >= 0; --qi) {
        if (std::next_permutation(comp[static_cast<size_t>(qi)].begin(),
                                  comp[static_cast<size_t>(qi)].end())) {
          more = true;
          break;
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace skewstone

#endif  // SKEWSTONE_HOM_HPP
