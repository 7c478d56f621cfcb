#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "skewstone/stone.hpp"

using namespace skewstone;

TEST_CASE("dual algebra of small spaces") {
  auto x0 = make_space({});
  CHECK(dual_algebra_A(x0).alg.size == 1);

  auto x1 = make_space({"p"});
  auto a1 = dual_algebra_A(x1);
  CHECK(a1.alg.size == 2);
  CHECK(a1.atoms == std::vector<int>{1});

  auto x2 = make_space({"p", "q"});
  auto a2 = dual_algebra_A(x2);
  CHECK(a2.alg.size == 4);
  CHECK(a2.atoms == std::vector<int>{1, 2});
  CHECK(a2.top == 3);
  CHECK(check_axioms(a2.alg).empty());
}

TEST_CASE("dual space has one point per atom") {
  auto x2 = make_space({"p", "q"});
  auto a2 = dual_algebra_A(x2);
  CHECK(dual_space_S(a2).size() == 2);
  CHECK(dual_space_S(dual_algebra_A(make_space({"p"}))).size() == 1);
  CHECK(dual_space_S(dual_algebra_A(make_space({}))).size() == 0);
}

TEST_CASE("double duals are canonically isomorphic") {
  for (int k = 0; k <= 4; ++k) {
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back("x" + std::to_string(i));
    auto x = make_space(labels);
    auto u = unit_space_iso(x);
    CHECK(is_bijection(u, dual_space_S(dual_algebra_A(x)).size()));
  }
  // algebras up to 16 elements: powersets of up to 4 points
  for (int k = 0; k <= 4; ++k) {
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back("x" + std::to_string(i));
    auto b = dual_algebra_A(make_space(labels));
    auto h = unit_algebra_iso(b);
    auto bb = dual_algebra_A(dual_space_S(b));
    CHECK(is_bijection(h, bb.alg.size));
    CHECK(is_homomorphism(h, b.alg, bb.alg).is_morphism());
  }
}

TEST_CASE("A and S are contravariant functors") {
  auto x1 = make_space({"p"});
  auto x2 = make_space({"p", "q"});
  auto x3 = make_space({"a", "b", "c"});
  auto a1 = dual_algebra_A(x1), a2 = dual_algebra_A(x2), a3 = dual_algebra_A(x3);
  (void)a3;

  // identities
  SpaceMap id2 = {0, 1};
  auto aid = A_on_map(id2, x2, x2);
  for (int e = 0; e < a2.alg.size; ++e) CHECK(aid[static_cast<size_t>(e)] == e);

  // constant map collapses to the diagonal embedding
  SpaceMap cst = {0, 0};
  auto ac = A_on_map(cst, x2, x1);
  CHECK(ac == HomMap{0, 3});
  CHECK(is_homomorphism(ac, a1.alg, a2.alg).is_morphism());

  // composition reverses, exhaustively over all maps x2 -> x3 -> x1
  std::vector<SpaceMap> maps23, maps31;
  SpaceMap f(2, 0);
  do maps23.push_back(f);
  while (next_tuple(f, 3));
  SpaceMap g(3, 0);
  do maps31.push_back(g);
  while (next_tuple(g, 1));
  for (const auto& f23 : maps23)
    for (const auto& g31 : maps31) {
      SpaceMap comp(2);
      for (size_t i = 0; i < 2; ++i) comp[i] = g31[static_cast<size_t>(f23[i])];
      auto lhs = A_on_map(comp, x2, x1);
      auto af = A_on_map(f23, x2, x3);
      auto ag = A_on_map(g31, x3, x1);
      HomMap rhs(static_cast<size_t>(a1.alg.size));
      for (int e = 0; e < a1.alg.size; ++e)
        rhs[static_cast<size_t>(e)] =
            af[static_cast<size_t>(ag[static_cast<size_t>(e)])];
      CHECK(lhs == rhs);
    }
}

TEST_CASE("S on maps sends ultrafilters through preimages") {
  auto x2 = make_space({"p", "q"});
  auto a2 = dual_algebra_A(x2);
  auto two = as_boolean(primitive_algebra(0));

  // embed 2 on top: 0 -> {}, 1 -> {p,q}
  HomMap phi = {0, 3};
  REQUIRE(is_homomorphism(phi, two.alg, a2.alg).is_morphism());
  auto g = S_on_map(phi, two, a2);
  CHECK(g == SpaceMap{0, 0});  // both points land on the unique ultrafilter

  HomMap improper = {0, 1};  // misses the atom {q}
  CHECK_THROWS_AS(S_on_map(improper, two, a2), NotProper);
}

TEST_CASE("ultrafilters = up-sets of atoms, via brute-force homs to 2") {
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back("x" + std::to_string(i));
    auto b = dual_algebra_A(make_space(labels));
    auto homs = enumerate_homs_brute_force(b.alg, primitive_algebra(0), 70000);
    CHECK(homs.size() == b.atoms.size());
    for (const auto& h : homs) {
      // the filter h^{-1}(1) is the up-set of exactly one atom
      int count = 0;
      for (int atom : b.atoms)
        if (h[static_cast<size_t>(atom)] == 1) ++count;
      CHECK(count == 1);
    }
  }
}
