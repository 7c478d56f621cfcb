#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "skewstone/etale.hpp"
#include "skewstone/lambda.hpp"

using namespace skewstone;

namespace {
FiniteBooleanSpace space_of(int k) {
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back(std::string(1, 'p' + i));
  return make_space(labels);
}
}  // namespace

TEST_CASE("lambda sizes and pinned instances") {
  auto x1 = space_of(1);
  auto l = build_lambda(x1, 1);
  CHECK(l.size() == 3);
  auto t = l.table();
  CHECK(is_isomorphic(t, primitive_algebra(1)).has_value());
  CHECK(t.meet == primitive_algebra(1).meet);  // same tables on one point
  CHECK(t.join == primitive_algebra(1).join);

  CHECK(build_lambda(space_of(2), 1).size() == 9);
  CHECK(build_lambda(space_of(3), 2).size() == 64);
  CHECK(build_lambda(space_of(0), 1).size() == 1);
}

TEST_CASE("lambda_0 is the dual algebra of the space") {
  for (int k = 0; k <= 3; ++k) {
    auto x = space_of(k);
    auto l0 = build_lambda(x, 0).table();
    auto a = dual_algebra_A(x);
    // same size and isomorphic; encodings differ (mixed radix vs bitmask)
    CHECK(l0.size == a.alg.size);
    CHECK(is_isomorphic(l0, a.alg).has_value());
  }
}

TEST_CASE("lambda tables validate and lazy ops agree with tables") {
  for (int k = 1; k <= 2; ++k)
    for (int n = 0; n <= 2; ++n) {
      auto l = build_lambda(space_of(k), n);
      auto t = l.table();
      CHECK(check_axioms(t).empty());
      for (int a = 0; a < t.size; ++a)
        for (int b = 0; b < t.size; ++b) {
          CHECK(t.m(a, b) == static_cast<int>(l.meet(a, b)));
          CHECK(t.j(a, b) == static_cast<int>(l.join(a, b)));
          CHECK(t.leq(a, b) == l.leq(a, b));
          CHECK(relative_complement(t, a, b) ==
                static_cast<int>(l.relative_complement(a, b)));
          auto g = intersection(t, a, b);
          REQUIRE(g.has_value());  // lambda algebras have all intersections
          CHECK(*g == static_cast<int>(l.glb(a, b)));
        }
    }
}

TEST_CASE("structure lemma report is clean for all small instances") {
  for (int k = 1; k <= 3; ++k)
    for (int n = 0; n <= 2; ++n) {
      auto rep = d_and_order_lemmas(space_of(k), n);
      if (!rep.all_pass)
        for (const auto& f : rep.failures) MESSAGE(f);
      CHECK(rep.all_pass);
    }
}

TEST_CASE("quotient counts: (n+2)^{|X|} elements, 2^{|X|} classes") {
  for (int k = 1; k <= 3; ++k)
    for (int n = 0; n <= 2; ++n) {
      auto l = build_lambda(space_of(k), n);
      CHECK(l.size() == ipow(n + 2, k));
      auto q = max_boolean_image(l.table());
      CHECK(static_cast<std::int64_t>(q.d.classes.size()) == ipow(2, k));
    }
}

TEST_CASE("pinned lambda_1(X2) values used across the suite") {
  auto l = build_lambda(space_of(2), 1);
  auto code = [&](int p, int q) { return l.encode({p, q}); };

  // order: (1,0) <= (1,2)
  CHECK(l.leq(code(1, 0), code(1, 2)));
  // relative complement (1,2)\(2,0) = (0,2)
  CHECK(l.relative_complement(code(1, 2), code(2, 0)) == code(0, 2));
  // intersection (1,2) n (1,1) = (1,0)
  CHECK(l.glb(code(1, 2), code(1, 1)) == code(1, 0));
  // restriction of (1,2) to the class supported on p is (1,0)
  auto t = l.table();
  auto d = d_classes(t);
  CHECK(restriction(t, d, static_cast<int>(code(1, 2)),
                    d.cls_of[static_cast<size_t>(code(1, 0))]) == code(1, 0));
}

TEST_CASE("tuple encoding round-trips with pairwise disjoint levels") {
  for (int k = 1; k <= 2; ++k)
    for (int n = 0; n <= 2; ++n) {
      auto l = build_lambda(space_of(k), n);
      for (std::int64_t e = 0; e < l.size(); ++e) {
        auto t = tuple_of(l, e);
        REQUIRE(t.size() == static_cast<size_t>(n + 1));
        std::set<int> seen;
        for (const auto& level : t)
          for (int x : level) {
            CHECK(!seen.count(x));
            seen.insert(x);
          }
        CHECK(element_of_tuple(l, t) == e);
        // tuple levels are the flag differences A_i minus A_{i-1}
        auto f = flag_of(l, e);
        for (int i = 1; i <= n + 1; ++i) {
          std::vector<int> level = f[static_cast<size_t>(n + 1 - i)];
          if (i >= 2) {
            const auto& below = f[static_cast<size_t>(n + 2 - i)];
            std::vector<int> diff;
            std::set_difference(level.begin(), level.end(), below.begin(),
                                below.end(), std::back_inserter(diff));
            level = diff;
          }
          CHECK(level == t[static_cast<size_t>(i - 1)]);
        }
      }
    }
  auto l = build_lambda(space_of(2), 1);
  CHECK_THROWS_AS(element_of_tuple(l, LevelTuple{{0}, {0}}), MalformedTable);
}

TEST_CASE("flag encoding round-trips and matches the displayed order") {
  auto l = build_lambda(space_of(2), 1);
  // f = (p -> 2, q -> 0): levels are {p} then {}
  auto f = flag_of(l, l.encode({2, 0}));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::vector<int>{0});
  CHECK(f[1] == std::vector<int>{});
  for (std::int64_t e = 0; e < l.size(); ++e)
    CHECK(element_of_flag(l, flag_of(l, e)) == e);
}

TEST_CASE("flag formulas agree with pointwise operations everywhere") {
  for (int k = 1; k <= 2; ++k)
    for (int n = 0; n <= 2; ++n) {
      auto l = build_lambda(space_of(k), n);
      for (std::int64_t a = 0; a < l.size(); ++a)
        for (std::int64_t b = 0; b < l.size(); ++b) {
          auto fa = flag_of(l, a), fb = flag_of(l, b);
          CHECK(element_of_flag(l, flag_join(l, fa, fb)) == l.join(a, b));
          CHECK(element_of_flag(l, flag_meet(l, fa, fb)) == l.meet(a, b));
        }
      // joining or meeting with the zero flag
      auto zero = flag_of(l, 0);
      for (std::int64_t a = 0; a < l.size(); ++a) {
        CHECK(element_of_flag(l, flag_join(l, flag_of(l, a), zero)) == a);
        CHECK(element_of_flag(l, flag_meet(l, flag_of(l, a), zero)) == 0);
      }
    }
  CHECK_THROWS_AS(check_flag(build_lambda(space_of(2), 1), Flag{{}, {0}}),
                  FlagNotDescending);
}

TEST_CASE("ultrafilter families N_x and N_{x,i}") {
  for (int k = 1; k <= 3; ++k)
    for (int n = 0; n <= 2; ++n) {
      auto l = build_lambda(space_of(k), n);
      auto t = l.table();
      auto q = max_boolean_image(t);
      auto u = ultrafilter_families(l, q);
      auto sp = spectrum_etale(t);

      // stalk of the spectrum over each point has n+1 germs, and the germs
      // are exactly the indicator up-sets N_{x,i}
      CHECK(sp.space.base.size() == k);
      for (const auto& st : sp.space.stalks())
        CHECK(st.size() == static_cast<size_t>(n + 1));

      for (int x = 0; x < k; ++x) {
        for (int i = 1; i <= n + 1; ++i) {
          const auto& nxi = u.n_x_i[static_cast<size_t>(x)][static_cast<size_t>(i - 1)];
          // N_{x,i} is the up-set of the indicator taking value i at x
          std::vector<int> v(static_cast<size_t>(k), 0);
          v[static_cast<size_t>(x)] = i;
          int rep = static_cast<int>(l.encode(v));
          int germ = -1;
          for (size_t g = 0; g < sp.germ_rep.size(); ++g)
            if (sp.germ_rep[g] == rep) germ = static_cast<int>(g);
          REQUIRE(germ >= 0);
          std::vector<std::int64_t> up(sp.upsets[static_cast<size_t>(germ)].begin(),
                                       sp.upsets[static_cast<size_t>(germ)].end());
          CHECK(nxi == up);
        }
        // alpha(N_{x,i}) = N_x and alpha^{-1}(N_x) is the union of the N_{x,i}
        std::set<int> from_all;
        std::set<std::int64_t> union_nxi;
        for (int i = 1; i <= n + 1; ++i)
          for (auto e : u.n_x_i[static_cast<size_t>(x)][static_cast<size_t>(i - 1)]) {
            from_all.insert(q.d.cls_of[static_cast<size_t>(e)]);
            union_nxi.insert(e);
          }
        std::set<int> nx(u.n_x[static_cast<size_t>(x)].begin(),
                         u.n_x[static_cast<size_t>(x)].end());
        CHECK(from_all == nx);
        std::set<std::int64_t> alpha_pre;
        for (int e = 0; e < t.size; ++e)
          if (nx.count(q.d.cls_of[static_cast<size_t>(e)]) && l.value(e, x) != 0)
            alpha_pre.insert(e);
        // every element whose class lies in N_x has x in its support
        for (int e = 0; e < t.size; ++e)
          if (nx.count(q.d.cls_of[static_cast<size_t>(e)]))
            CHECK(l.value(e, x) != 0);
        CHECK(union_nxi == alpha_pre);
      }
    }
}

TEST_CASE("every ultrafilter of lambda_n(X) is some N_{x,i}") {
  for (int k = 1; k <= 2; ++k)
    for (int n = 0; n <= 2; ++n) {
      auto l = build_lambda(space_of(k), n);
      auto t = l.table();
      auto sp = spectrum_etale(t);
      CHECK(sp.space.germ_count() == k * (n + 1));
      for (int rep : sp.germ_rep) {
        // representative is an indicator: exactly one nonzero value
        auto v = l.decode(rep);
        int nonzero = 0;
        for (int d : v) nonzero += d != 0;
        CHECK(nonzero == 1);
      }
    }
}

TEST_CASE("lambda on maps: functorial, with the pinned preimage law") {
  auto x1 = space_of(1), x2 = space_of(2);
  auto l1 = build_lambda(x1, 1), l2 = build_lambda(x2, 1);

  SpaceMap id1 = {0};
  auto hid = lambda_on_map(id1, l1, l1);
  for (int e = 0; e < 3; ++e) CHECK(hid[static_cast<size_t>(e)] == e);

  // constant g: X2 -> X1 pulls back to constant-pattern elements
  SpaceMap cst = {0, 0};
  auto hc = lambda_on_map(cst, l1, l2);
  CHECK(hc == HomMap{static_cast<int>(l2.encode({0, 0})),
                     static_cast<int>(l2.encode({1, 1})),
                     static_cast<int>(l2.encode({2, 2}))});
  CHECK(is_homomorphism(hc, l1.table(), l2.table()).is_morphism());

  // preimage law: lambda_n(g)^{-1}(N_{x,i}) = N_{g(x),i}
  for (int n = 0; n <= 1; ++n) {
    auto a1 = build_lambda(x1, n), a2 = build_lambda(x2, n);
    std::vector<SpaceMap> maps;
    SpaceMap g(2, 0);
    do maps.push_back(g);
    while (next_tuple(g, 1));
    for (const auto& gm : maps) {
      auto h = lambda_on_map(gm, a1, a2);
      for (int x = 0; x < 2; ++x) {
        for (int i = 1; i <= n + 1; ++i) {
          std::set<int> pre, target;
          for (std::int64_t e = 0; e < a1.size(); ++e)
            if (a2.value(h[static_cast<size_t>(e)], x) == i)
              pre.insert(static_cast<int>(e));
          for (std::int64_t e = 0; e < a1.size(); ++e)
            if (a1.value(e, gm[static_cast<size_t>(x)]) == i)
              target.insert(static_cast<int>(e));
          CHECK(pre == target);
        }
        // quotient level: nonzero-at-x pulls back to nonzero-at-g(x)
        std::set<int> pre0, target0;
        for (std::int64_t e = 0; e < a1.size(); ++e) {
          if (a2.value(h[static_cast<size_t>(e)], x) != 0)
            pre0.insert(static_cast<int>(e));
          if (a1.value(e, gm[static_cast<size_t>(x)]) != 0)
            target0.insert(static_cast<int>(e));
        }
        CHECK(pre0 == target0);
      }
    }
  }
}

TEST_CASE("lambda on maps reverses composition") {
  auto x1 = space_of(1), x2 = space_of(2);
  auto l1 = build_lambda(x1, 1), l2 = build_lambda(x2, 1);
  std::vector<SpaceMap> maps21, maps12;
  SpaceMap a(2, 0);
  do maps21.push_back(a);
  while (next_tuple(a, 1));
  SpaceMap b(1, 0);
  do maps12.push_back(b);
  while (next_tuple(b, 2));
  for (const auto& g21 : maps21)  // X2 -> X1
    for (const auto& g12 : maps12) {
      // X1 -> X2
      SpaceMap comp(2);  // X2 -> X2
      for (size_t i = 0; i < 2; ++i) comp[i] = g12[static_cast<size_t>(g21[i])];
      auto lhs = lambda_on_map(comp, l2, l2);
      auto h21 = lambda_on_map(g21, l1, l2);
      auto h12 = lambda_on_map(g12, l2, l1);
      HomMap rhs;
      for (int e = 0; e < 9; ++e)
        rhs.push_back(h21[static_cast<size_t>(h12[static_cast<size_t>(e)])]);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("twisted-product view: lambda_1 over the double dual of the space") {
  for (int k = 0; k <= 3; ++k) {
    auto x = space_of(k);
    auto direct = build_lambda(x, 1);
    auto through_duals = build_lambda(dual_space_S(dual_algebra_A(x)), 1);
    CHECK(direct.size() == through_duals.size());
    if (direct.size() <= 81) {
      auto t1 = direct.table(), t2 = through_duals.table();
      CHECK(t1.meet == t2.meet);
      CHECK(t1.join == t2.join);
    }
  }
}
