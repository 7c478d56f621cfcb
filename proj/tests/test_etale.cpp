#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "skewstone/etale.hpp"

using namespace skewstone;

namespace {

std::vector<std::vector<int>> small_profiles() {
  return {{}, {1}, {2}, {3}, {1, 1}, {2, 1}, {2, 2}, {1, 1, 1}, {3, 2}};
}

EtaleSpace space_from_profile(const std::vector<int>& profile) {
  std::vector<std::string> labels;
  for (size_t i = 0; i < profile.size(); ++i)
    labels.push_back("x" + std::to_string(i));
  return make_etale(make_space(labels), profile);
}

}  // namespace

TEST_CASE("sections algebra over one point with a two-germ stalk is 3") {
  auto e = space_from_profile({2});
  auto sa = sections_algebra(e);
  CHECK(sa.alg.size == 3);
  // element 1 = germ x0.1, element 2 = germ x0.2
  CHECK(sa.alg.j(1, 2) == 2);
  CHECK(sa.alg.m(1, 2) == 1);
  auto iso = is_isomorphic(sa.alg, primitive_algebra(1));
  CHECK(iso.has_value());
}

TEST_CASE("sections algebra matches algebra_from_stalks") {
  for (const auto& p : small_profiles()) {
    auto sa = sections_algebra(space_from_profile(p));
    auto direct = algebra_from_stalks(p);
    CHECK(sa.alg.size == direct.size);
    CHECK(sa.alg.meet == direct.meet);
    CHECK(sa.alg.join == direct.join);
    CHECK(check_axioms(sa.alg).empty());
  }
}

TEST_CASE("singleton stalks give a Boolean algebra") {
  auto sa = sections_algebra(space_from_profile({1, 1}));
  CHECK(sa.alg.size == 4);
  CHECK_NOTHROW(as_boolean(sa.alg));
}

TEST_CASE("D-classes of a sections algebra are domain fibers") {
  for (const auto& p : small_profiles()) {
    auto sa = sections_algebra(space_from_profile(p));
    auto d = d_classes(sa.alg);
    for (int a = 0; a < sa.alg.size; ++a)
      for (int b = 0; b < sa.alg.size; ++b) {
        std::set<int> da, db;
        for (int g : sa.germ_set(a)) da.insert(sa.space.projection[g]);
        for (int g : sa.germ_set(b)) db.insert(sa.space.projection[g]);
        CHECK((d.cls_of[a] == d.cls_of[b]) == (da == db));
      }
  }
}

TEST_CASE("spectrum of the primitives and the square") {
  auto sp3 = spectrum_etale(primitive_algebra(1));
  CHECK(sp3.space.base.size() == 1);
  CHECK(sp3.space.germ_count() == 2);

  auto sp2 = spectrum_etale(primitive_algebra(0));
  CHECK(sp2.space.base.size() == 1);
  CHECK(sp2.space.germ_count() == 1);

  auto spq = spectrum_etale(algebra_from_stalks({1, 1}));
  CHECK(spq.space.base.size() == 2);
  CHECK(spq.space.stalks()[0].size() == 1);
  CHECK(spq.space.stalks()[1].size() == 1);
}

TEST_CASE("ultrafilters are up-sets of atom-class elements") {
  auto s = algebra_from_stalks({2, 1});
  auto sp = spectrum_etale(s);
  REQUIRE(sp.germ_rep.size() == 3);
  for (size_t g = 0; g < sp.germ_rep.size(); ++g) {
    for (int b : sp.upsets[g]) CHECK(s.leq(sp.germ_rep[g], b));
    // minimal representative is in an atom class
    int cls = d_classes(s).cls_of[sp.germ_rep[g]];
    auto q = max_boolean_image(s);
    bool is_atom = false;
    for (int a : q.q.atoms) is_atom |= (a == cls);
    CHECK(is_atom);
  }
}

TEST_CASE("beta is an isomorphism onto the sections of the spectrum") {
  for (const auto& p : small_profiles()) {
    auto s = algebra_from_stalks(p);
    auto b = beta_iso(s);
    CHECK(b.bijective);
    CHECK(b.homomorphism);
  }
  // beta(0) is the empty section, beta on 3 hits the singletons
  auto b3 = beta_iso(primitive_algebra(1));
  CHECK(b3.map[0] == 0);
  CHECK(b3.sections.germ_set(b3.map[1]) == std::vector<int>{0});
  CHECK(b3.sections.germ_set(b3.map[2]) == std::vector<int>{1});
}

TEST_CASE("gamma is an isomorphism of etale spaces") {
  for (const auto& p : small_profiles()) {
    if (p.empty()) continue;
    auto g = gamma_iso(space_from_profile(p));
    CHECK(g.ok);
  }
}

TEST_CASE("dualize_hom of the paper's phi1 and round-trip naturality") {
  auto four = primitive_algebra(2);
  auto three = primitive_algebra(1);
  HomMap phi1 = {0, 1, 2, 2};
  auto sp4 = spectrum_etale(four), sp3 = spectrum_etale(three);
  auto co = dualize_hom(phi1, four, three, sp4, sp3);
  REQUIRE(co.base_map == std::vector<int>{0});
  // germs of 4*: up-sets of 1,2,3 (positions 0,1,2); 3*: up-sets of 1,2
  REQUIRE(co.comp.size() == 1);
  CHECK(co.comp[0] == std::vector<int>{0, 1, 1});

  // identity dualizes to identity components
  HomMap id3 = {0, 1, 2};
  auto coi = dualize_hom(id3, three, three, sp3, sp3);
  CHECK(coi.comp[0] == std::vector<int>{0, 1});

  // the unique hom 3 -> 2 folds both germs onto the single one
  HomMap h32 = {0, 1, 1};
  auto co32 = dualize_hom(h32, three, primitive_algebra(0), sp3,
                          spectrum_etale(primitive_algebra(0)));
  CHECK(co32.comp[0] == std::vector<int>{0, 0});

  CHECK_THROWS_AS(dualize_hom(HomMap{0, 0, 0, 0}, four, three, sp4, sp3),
                  NotProper);
}

TEST_CASE("theorem-1 naturality squares on all small hom-sets") {
  auto profiles = std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {2, 1}};
  std::vector<FiniteLeftSkewBA> algebras;
  for (const auto& p : profiles) algebras.push_back(algebra_from_stalks(p));
  for (const auto& s : algebras)
    for (const auto& t : algebras) {
      auto sps = spectrum_etale(s), spt = spectrum_etale(t);
      auto bs = beta_iso(s), bt = beta_iso(t);
      for (const auto& k : enumerate_homs(s, t)) {
        auto co = dualize_hom(k, s, t, sps, spt);
        auto kk = dualize_cohom(co, bs.sections, bt.sections);
        // beta_T . k = k** . beta_S
        for (int a = 0; a < s.size; ++a)
          CHECK(bt.map[static_cast<size_t>(k[static_cast<size_t>(a)])] ==
                kk[static_cast<size_t>(bs.map[static_cast<size_t>(a)])]);
      }
    }
}

TEST_CASE("cohomomorphism components swap gives the non-trivial automorphism") {
  auto e = space_from_profile({2});
  auto sa = sections_algebra(e);
  Cohomomorphism swap;
  swap.base_map = {0};
  swap.comp = {{1, 0}};
  auto h = dualize_cohom(swap, sa, sa);
  CHECK(h == HomMap{0, 2, 1});
  CHECK(is_homomorphism(h, sa.alg, sa.alg).is_morphism());

  Cohomomorphism ident;
  ident.base_map = {0};
  ident.comp = {{0, 1}};
  auto hid = dualize_cohom(ident, sa, sa);
  CHECK(hid == HomMap{0, 1, 2});
}

TEST_CASE("cohoms biject with homs of the dual algebras") {
  auto profiles = std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {2, 1}};
  for (const auto& ps : profiles)
    for (const auto& pt : profiles) {
      auto es = space_from_profile(ps), et = space_from_profile(pt);
      auto homs =
          enumerate_homs(sections_algebra(es).alg, sections_algebra(et).alg);
      auto cohoms = enumerate_cohoms(es, et);
      CHECK(homs.size() == cohoms.size());
    }
}

TEST_CASE("intersection preservation matches injective components") {
  auto profiles = std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {2, 1}};
  std::vector<FiniteLeftSkewBA> algebras;
  for (const auto& p : profiles) algebras.push_back(algebra_from_stalks(p));
  for (const auto& s : algebras)
    for (const auto& t : algebras) {
      auto sps = spectrum_etale(s), spt = spectrum_etale(t);
      for (const auto& k : enumerate_homs(s, t)) {
        auto rep = is_homomorphism(k, s, t);
        auto co = dualize_hom(k, s, t, sps, spt);
        bool inj = true;
        for (const auto& c : co.comp) {
          std::set<int> img(c.begin(), c.end());
          inj &= img.size() == c.size();
        }
        CHECK(*rep.preserves_intersections == inj);
      }
    }
}

TEST_CASE("spectral morphisms") {
  auto four = primitive_algebra(2);
  auto sp = spectral_morphisms(four, 1);
  REQUIRE(sp.size() == 3);
  CHECK(sp[0] == HomMap{0, 1, 2, 2});
  CHECK(sp[1] == HomMap{0, 2, 1, 2});
  CHECK(sp[2] == HomMap{0, 2, 2, 1});

  auto two = primitive_algebra(0);
  auto sp2 = spectral_morphisms(two, 0);
  REQUIRE(sp2.size() == 1);
  CHECK(sp2[0] == HomMap{0, 1});

  auto three = primitive_algebra(1);
  auto sp3 = spectral_morphisms(three, 1);
  CHECK(sp3.size() == 2);
  CHECK(enumerate_homs(three, three).size() == 4);

  // preimage of 1 is a single ultrafilter: inclusion-minimal among nonempty
  for (const auto& h : sp) {
    std::vector<int> pre;
    for (int a = 0; a < four.size; ++a)
      if (h[static_cast<size_t>(a)] == 1) pre.push_back(a);
    CHECK(pre.size() == 1);
  }

  // count = germs whenever n+1 covers the largest stalk
  for (const auto& p : small_profiles()) {
    auto s = algebra_from_stalks(p);
    auto spec = spectrum_etale(s);
    size_t max_stalk = 0;
    for (const auto& st : spec.space.stalks()) max_stalk = std::max(max_stalk, st.size());
    for (int n = 0; n <= 3; ++n)
      if (static_cast<size_t>(n + 1) >= max_stalk)
        CHECK(spectral_morphisms(s, n).size() ==
              static_cast<size_t>(spec.space.germ_count()));
  }
}

TEST_CASE("sections D-relation is domain equality") {
  auto sa = sections_algebra(space_from_profile({2, 1}));
  auto d = d_classes(sa.alg);
  for (int a = 0; a < sa.alg.size; ++a)
    for (int b = 0; b < sa.alg.size; ++b) {
      std::set<int> pa, pb;
      for (int g : sa.germ_set(a)) pa.insert(sa.space.projection[g]);
      for (int g : sa.germ_set(b)) pb.insert(sa.space.projection[g]);
      CHECK((d.cls_of[a] == d.cls_of[b]) == (pa == pb));
    }
}
