#ifndef SKEWSTONE_ETALE_HPP
#define SKEWSTONE_ETALE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "skewstone/algebra.hpp"
#include "skewstone/hom.hpp"
#include "skewstone/stone.hpp"
#include "skewstone/util.hpp"

namespace skewstone {

// A finite etale space: a germ set with a surjective projection onto a finite
// base. Stalks are the fibers; a section picks at most one germ per point.
struct EtaleSpace {
  FiniteBooleanSpace base;
  std::vector<std::string> germs;
  std::vector<int> projection;  // germ -> base point

  int germ_count() const { return static_cast<int>(germs.size()); }

  std::vector<std::vector<int>> stalks() const {
    std::vector<std::vector<int>> st(static_cast<size_t>(base.size()));
    for (size_t g = 0; g < projection.size(); ++g)
      st[static_cast<size_t>(projection[g])].push_back(static_cast<int>(g));
    return st;
  }
};

inline EtaleSpace make_etale(FiniteBooleanSpace base,
                             const std::vector<int>& stalk_sizes) {
  if (stalk_sizes.size() != static_cast<size_t>(base.size()))
    throw MalformedTable("one stalk size per base point required");
  EtaleSpace e;
  for (size_t x = 0; x < stalk_sizes.size(); ++x) {
    if (stalk_sizes[x] <= 0)
      throw MalformedTable("stalks must be nonempty (projection surjective)");
    for (int i = 1; i <= stalk_sizes[x]; ++i) {
      e.germs.push_back(base.points[x] + "." + std::to_string(i));
      e.projection.push_back(static_cast<int>(x));
    }
  }
  e.base = std::move(base);
  return e;
}

// The algebra of all sections of an etale space. Element encoding is mixed
// radix over base points in declared order (first point most significant):
// digit 0 means the point is outside the domain, digit i picks stalk germ i-1.
struct SectionsAlgebra {
  EtaleSpace space;
  std::vector<std::vector<int>> stalk;  // cached stalks
  FiniteLeftSkewBA alg;

  std::vector<int> digits(int e) const {
    std::vector<int> v(stalk.size());
    for (int i = static_cast<int>(stalk.size()) - 1; i >= 0; --i) {
      int radix = static_cast<int>(stalk[static_cast<size_t>(i)].size()) + 1;
      v[static_cast<size_t>(i)] = e % radix;
      e /= radix;
    }
    return v;
  }

  int encode(const std::vector<int>& v) const {
    int e = 0;
    for (size_t i = 0; i < stalk.size(); ++i)
      e = e * (static_cast<int>(stalk[i].size()) + 1) + v[i];
    return e;
  }

  // sorted germ ids of the section an element denotes
  std::vector<int> germ_set(int e) const {
    std::vector<int> out;
    auto v = digits(e);
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] > 0) out.push_back(stalk[i][static_cast<size_t>(v[i] - 1)]);
    std::sort(out.begin(), out.end());
    return out;
  }

  int element_of(const std::vector<int>& germ_ids) const {
    std::vector<int> v(stalk.size(), 0);
    for (int g : germ_ids) {
      int x = space.projection[static_cast<size_t>(g)];
      const auto& st = stalk[static_cast<size_t>(x)];
      for (size_t p = 0; p < st.size(); ++p)
        if (st[p] == g) {
          if (v[static_cast<size_t>(x)] != 0)
            throw MalformedTable("germ set is not a section");
          v[static_cast<size_t>(x)] = static_cast<int>(p) + 1;
        }
    }
    return encode(v);
  }
};

inline SectionsAlgebra sections_algebra(const EtaleSpace& e) {
  SectionsAlgebra sa;
  sa.space = e;
  sa.stalk = e.stalks();
  std::int64_t total = 1;
  for (const auto& st : sa.stalk) {
    if (st.empty()) throw MalformedTable("projection must be surjective");
    total *= static_cast<std::int64_t>(st.size()) + 1;
    if (total > 4096) throw SizeGuardError("too many sections");
  }
  const int n = static_cast<int>(total);
  FiniteLeftSkewBA s;
  s.size = n;
  s.meet.resize(static_cast<size_t>(n) * n);
  s.join.resize(static_cast<size_t>(n) * n);
  const int pts = static_cast<int>(sa.stalk.size());
  for (int a = 0; a < n; ++a) {
    auto va = sa.digits(a);
    for (int b = 0; b < n; ++b) {
      auto vb = sa.digits(b);
      std::vector<int> vm(static_cast<size_t>(pts)), vj(static_cast<size_t>(pts));
      for (int i = 0; i < pts; ++i) {
        // override-join and restrict-meet on domains
        vj[static_cast<size_t>(i)] =
            vb[static_cast<size_t>(i)] != 0 ? vb[static_cast<size_t>(i)]
                                            : va[static_cast<size_t>(i)];
        vm[static_cast<size_t>(i)] =
            (va[static_cast<size_t>(i)] != 0 && vb[static_cast<size_t>(i)] != 0)
                ? va[static_cast<size_t>(i)]
                : 0;
      }
      s.meet[static_cast<size_t>(a) * n + b] = sa.encode(vm);
      s.join[static_cast<size_t>(a) * n + b] = sa.encode(vj);
    }
  }
  for (int a = 0; a < n; ++a) {
    auto v = sa.digits(a);
    std::string nm;
    for (int i = 0; i < pts; ++i)
      nm += (i ? "," : "") + std::to_string(v[static_cast<size_t>(i)]);
    s.names.push_back(nm.empty() ? "0" : nm);
  }
  sa.alg = std::move(s);
  return sa;
}

// The spectrum of an algebra: one base point per atom of S/D, one germ per
// ultrafilter. An ultrafilter is the up-set of an element of an atom class;
// we store that minimal representative.
struct Spectrum {
  EtaleSpace space;
  AtomStalks st;
  std::vector<int> germ_rep;                // global germ id -> element
  std::vector<std::vector<int>> upsets;     // sorted elements of each germ

  // M(a): the germs whose ultrafilter contains a
  std::vector<int> section_of(const FiniteLeftSkewBA& s, int a) const {
    std::vector<int> out;
    for (size_t g = 0; g < germ_rep.size(); ++g)
      if (s.leq(germ_rep[g], a)) out.push_back(static_cast<int>(g));
    return out;
  }
};

inline Spectrum spectrum_etale(const FiniteLeftSkewBA& s) {
  Spectrum sp;
  sp.st = atom_stalks(s);
  FiniteBooleanSpace base;
  std::vector<int> stalk_sizes;
  for (int i = 0; i < sp.st.atom_count(); ++i) {
    base.points.push_back("u" + std::to_string(i));
    stalk_sizes.push_back(
        static_cast<int>(sp.st.stalk[static_cast<size_t>(i)].size()));
  }
  sp.space = make_etale(std::move(base), stalk_sizes);
  for (const auto& [atom, rep] : sp.st.germs) {
    (void)atom;
    sp.germ_rep.push_back(rep);
    std::vector<int> up;
    for (int b = 0; b < s.size; ++b)
      if (s.leq(rep, b)) up.push_back(b);
    sp.upsets.push_back(std::move(up));
  }
  return sp;
}

// A cohomomorphism transports sections of a "from" space to sections of a
// "to" space: a base map from the to-base into the from-base plus, over every
// to-point x, a map of stalks from_{base_map(x)} -> to_x. Components are
// stored by stalk position on the from side and hold global to-germ ids; the
// two spaces travel separately.
struct Cohomomorphism {
  std::vector<int> base_map;
  std::vector<std::vector<int>> comp;
};

inline HomMap dualize_cohom(const Cohomomorphism& k, const SectionsAlgebra& sa_from,
                            const SectionsAlgebra& sa_to) {
  HomMap h(static_cast<size_t>(sa_from.alg.size));
  const int pts_to = static_cast<int>(sa_to.stalk.size());
  for (int e = 0; e < sa_from.alg.size; ++e) {
    auto v = sa_from.digits(e);
    std::vector<int> img(static_cast<size_t>(pts_to), 0);
    for (int x = 0; x < pts_to; ++x) {
      int y = k.base_map[static_cast<size_t>(x)];
      int digit = v[static_cast<size_t>(y)];
      if (digit == 0) continue;
      int to_germ = k.comp[static_cast<size_t>(x)][static_cast<size_t>(digit - 1)];
      const auto& st = sa_to.stalk[static_cast<size_t>(x)];
      for (size_t p = 0; p < st.size(); ++p)
        if (st[p] == to_germ) img[static_cast<size_t>(x)] = static_cast<int>(p) + 1;
    }
    h[static_cast<size_t>(e)] = sa_to.encode(img);
  }
  return h;
}

// Dualize a proper homomorphism k: S -> T into a cohomomorphism between the
// spectra. The base map pulls each target atom back to the unique source atom
// below its image; the component over it sends an ultrafilter up-set of x to
// the up-set of the germ of k(x). The input must preserve the operations;
// improper maps are rejected through the atom-preimage computation.
inline Cohomomorphism dualize_hom(const HomMap& k, const FiniteLeftSkewBA& s,
                                  const FiniteLeftSkewBA& t, const Spectrum& sp_s,
                                  const Spectrum& sp_t) {
  Cohomomorphism co;
  (void)s;
  auto stalks_t = sp_t.space.stalks();
  for (int qi = 0; qi < sp_t.st.atom_count(); ++qi) {
    int q_cls = sp_t.st.atom_class[static_cast<size_t>(qi)];
    int found = -1;
    for (int pi = 0; pi < sp_s.st.atom_count(); ++pi) {
      int rep = sp_s.st.stalk[static_cast<size_t>(pi)][0];
      int img_cls = sp_t.st.q.d.cls_of[static_cast<size_t>(k[static_cast<size_t>(rep)])];
      if (sp_t.st.q.q.alg.leq(q_cls, img_cls)) {
        if (found >= 0) throw NotProper("atom preimage not unique");
        found = pi;
      }
    }
    if (found < 0) throw NotProper("atom preimage empty");
    co.base_map.push_back(found);
    std::vector<int> cmp;
    const auto& stalk_s = sp_s.st.stalk[static_cast<size_t>(found)];
    for (int x : stalk_s) {
      int pos = germ_position(t, sp_t.st, k[static_cast<size_t>(x)], qi);
      cmp.push_back(stalks_t[static_cast<size_t>(qi)][static_cast<size_t>(pos)]);
    }
    co.comp.push_back(std::move(cmp));
  }
  return co;
}

// All cohomomorphisms between two etale spaces, lexicographic in the base map
// and then in the component tuples.
inline std::vector<Cohomomorphism> enumerate_cohoms(const EtaleSpace& from,
                                                    const EtaleSpace& to) {
  std::vector<Cohomomorphism> out;
  auto st_from = from.stalks(), st_to = to.stalks();
  const int nb = to.base.size();
  if (from.base.size() == 0 && nb > 0) return out;
  std::vector<int> base(static_cast<size_t>(nb), 0);
  do {
    std::vector<std::vector<int>> comp;
    std::vector<int> radix;
    for (int x = 0; x < nb; ++x) {
      comp.emplace_back(
          st_from[static_cast<size_t>(base[static_cast<size_t>(x)])].size(), 0);
      radix.push_back(static_cast<int>(st_to[static_cast<size_t>(x)].size()));
    }
    bool more = true;
    while (more) {
      Cohomomorphism co;
      co.base_map = base;
      co.comp.resize(static_cast<size_t>(nb));
      for (int x = 0; x < nb; ++x) {
        for (int pos : comp[static_cast<size_t>(x)])
          co.comp[static_cast<size_t>(x)].push_back(
              st_to[static_cast<size_t>(x)][static_cast<size_t>(pos)]);
      }
      out.push_back(std::move(co));
      more = false;
      for (int x = nb - 1; x >= 0 && !more; --x) {
        auto& f = comp[static_cast<size_t>(x)];
        for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
          if (++f[static_cast<size_t>(i)] < radix[static_cast<size_t>(x)]) {
            more = true;
            break;
          }
          f[static_cast<size_t>(i)] = 0;
        }
      }
    }
  } while (nb > 0 && next_tuple(base, from.base.size()));
  return out;
}

// Composite of cohomomorphisms: k1 from A to B, k2 from B to C give a
// cohomomorphism from A to C over the composite of the base maps. B is the
// middle space, and the final base size comes from k2 itself.
inline Cohomomorphism compose_cohoms(const Cohomomorphism& k1,
                                     const Cohomomorphism& k2,
                                     const EtaleSpace& mid) {
  Cohomomorphism out;
  auto st_mid = mid.stalks();
  for (int x = 0; x < static_cast<int>(k2.base_map.size()); ++x) {
    int y = k2.base_map[static_cast<size_t>(x)];
    out.base_map.push_back(k1.base_map[static_cast<size_t>(y)]);
    std::vector<int> cmp;
    const size_t from_stalk =
        k1.comp[static_cast<size_t>(y)].size();
    for (size_t pos = 0; pos < from_stalk; ++pos) {
      int mid_germ = k1.comp[static_cast<size_t>(y)][pos];
      // position of the intermediate germ within its stalk
      const auto& ms = st_mid[static_cast<size_t>(y)];
      int mid_pos = -1;
      for (size_t p = 0; p < ms.size(); ++p)
        if (ms[p] == mid_germ) mid_pos = static_cast<int>(p);
      cmp.push_back(
          k2.comp[static_cast<size_t>(x)][static_cast<size_t>(mid_pos)]);
    }
    out.comp.push_back(std::move(cmp));
  }
  return out;
}

inline bool same_cohom(const Cohomomorphism& a, const Cohomomorphism& b) {
  return a.base_map == b.base_map && a.comp == b.comp;
}

// beta: S -> (S*)*, a |-> M(a). An isomorphism by the duality theorem.
struct BetaIso {
  Spectrum sp;
  SectionsAlgebra sections;
  HomMap map;
  bool bijective = false;
  bool homomorphism = false;
};

inline BetaIso beta_iso(const FiniteLeftSkewBA& s) {
  BetaIso b;
  b.sp = spectrum_etale(s);
  b.sections = sections_algebra(b.sp.space);
  for (int a = 0; a < s.size; ++a)
    b.map.push_back(b.sections.element_of(b.sp.section_of(s, a)));
  b.bijective = is_bijection(b.map, b.sections.alg.size);
  b.homomorphism = is_homomorphism(b.map, s, b.sections.alg).is_morphism();
  return b;
}

// gamma: E -> (E*)*, a germ goes to the ultrafilter of sections containing it.
struct GammaIso {
  std::vector<int> germ_map;  // germ of E -> germ of (E*)*
  std::vector<int> base_map;  // base point of E -> base point of (E*)*
  bool ok = false;
};

inline GammaIso gamma_iso(const EtaleSpace& e) {
  GammaIso g;
  SectionsAlgebra sa = sections_algebra(e);
  Spectrum sp = spectrum_etale(sa.alg);
  g.germ_map.assign(static_cast<size_t>(e.germ_count()), -1);
  g.base_map.assign(static_cast<size_t>(e.base.size()), -1);
  bool ok = true;
  for (int germ = 0; germ < e.germ_count(); ++germ) {
    int elem = sa.element_of({germ});
    int found = -1;
    for (size_t gg = 0; gg < sp.germ_rep.size(); ++gg)
      if (sp.germ_rep[gg] == elem) found = static_cast<int>(gg);
    if (found < 0) {
      ok = false;
      break;
    }
    g.germ_map[static_cast<size_t>(germ)] = found;
    int x = e.projection[static_cast<size_t>(germ)];
    int fx = sp.space.projection[static_cast<size_t>(found)];
    if (g.base_map[static_cast<size_t>(x)] == -1)
      g.base_map[static_cast<size_t>(x)] = fx;
    else if (g.base_map[static_cast<size_t>(x)] != fx)
      ok = false;
  }
  if (ok)
    ok = is_bijection(g.germ_map, sp.space.germ_count()) &&
         is_bijection(g.base_map, sp.space.base.size());
  g.ok = ok;
  return g;
}

// gamma as a morphism of etale spaces E -> (E*)*: a cohomomorphism whose base
// map inverts the base identification and whose components realize the germ
// bijection.
inline Cohomomorphism gamma_as_cohom(const EtaleSpace& e, const GammaIso& g,
                                     const EtaleSpace& target) {
  Cohomomorphism co;
  std::vector<int> base_inv(static_cast<size_t>(target.base.size()), -1);
  for (size_t x = 0; x < g.base_map.size(); ++x)
    base_inv[static_cast<size_t>(g.base_map[x])] = static_cast<int>(x);
  auto st_from = e.stalks();
  for (int x = 0; x < target.base.size(); ++x) {
    int y = base_inv[static_cast<size_t>(x)];
    co.base_map.push_back(y);
    std::vector<int> cmp;
    for (int germ : st_from[static_cast<size_t>(y)])
      cmp.push_back(g.germ_map[static_cast<size_t>(germ)]);
    co.comp.push_back(std::move(cmp));
  }
  return co;
}

// The canonical spectrum-point morphisms S -> n+2: one germ of the stalk is
// sent to 1 and the rest of the stalk to 2, so the preimage of 1 is a single
// ultrafilter (nonempty and minimal). Stalks with two or more germs need
// n >= 1; for n = 0 such stalks contribute nothing.
inline std::vector<HomMap> spectral_morphisms(const FiniteLeftSkewBA& s, int n) {
  FiniteLeftSkewBA prim = primitive_algebra(n);
  AtomStalks ss = atom_stalks(s), ts = atom_stalks(prim);
  std::vector<HomMap> out;
  for (int ai = 0; ai < ss.atom_count(); ++ai) {
    const auto& stalk = ss.stalk[static_cast<size_t>(ai)];
    if (stalk.size() > 1 && n < 1) continue;
    for (size_t pos = 0; pos < stalk.size(); ++pos) {
      std::vector<int> f(stalk.size(), 1);  // stalk positions in n+2: germ "2"
      f[pos] = 0;                           // designated germ "1"
      out.push_back(hom_from_stalk_data(s, prim, ss, ts, {ai}, {f}));
    }
  }
  return out;
}

}  // namespace skewstone

#endif  // SKEWSTONE_ETALE_HPP
