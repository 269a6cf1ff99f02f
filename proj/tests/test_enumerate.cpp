#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "latmod/enumerate.hpp"
#include "oracles.hpp"

using namespace latmod;

TEST_CASE("poset enumeration matches the independent relation-mask oracle") {
  for (int k = 0; k <= 3; ++k)
    CHECK(static_cast<int>(enumerate_posets(k).size()) == oracle::count_unlabeled_posets(k));
  CHECK(enumerate_posets(4).size() == 16);
  CHECK(enumerate_posets(5).size() == 63);
}

TEST_CASE("lattice enumeration: small counts and membership") {
  auto l1 = enumerate_lattices(1);
  REQUIRE(l1.size() == 2);
  CHECK(l1[0].size() == 1);
  CHECK(l1[1].size() == 2);

  auto l2 = enumerate_lattices(2);
  CHECK(l2.size() == 4);
  bool has_three_chain = false, has_square = false;
  for (const auto& L : l2) {
    if (oracle::isomorphic(L, fixtures::three_chain())) has_three_chain = true;
    if (oracle::isomorphic(L, fixtures::two_by_two())) has_square = true;
  }
  CHECK(has_three_chain);
  CHECK(has_square);

  CHECK(enumerate_lattices(3).size() == 9);
  CHECK_THROWS_AS(enumerate_lattices(6), Error);
}

TEST_CASE("enumerated lattices are pairwise non-isomorphic") {
  auto ls = enumerate_lattices(3);
  for (size_t i = 0; i < ls.size(); ++i)
    for (size_t j = i + 1; j < ls.size(); ++j)
      if (ls[i].size() == ls[j].size()) CHECK(!oracle::isomorphic(ls[i], ls[j]));
}

TEST_CASE("lattice identities hold exactly on every enumerated lattice") {
  for (const FiniteDistLattice& L : enumerate_lattices(3)) {
    for (int x = 0; x < L.size(); ++x) {
      CHECK(L.meet(x, x) == x);
      CHECK(L.join(x, x) == x);
      for (int y = 0; y < L.size(); ++y) {
        CHECK(L.meet(x, L.join(x, y)) == x);
        CHECK(L.join(x, L.meet(x, y)) == x);
        for (int z = 0; z < L.size(); ++z)
          CHECK(L.meet(x, L.join(y, z)) == L.join(L.meet(x, y), L.meet(x, z)));
      }
    }
  }
}

TEST_CASE("hom enumeration") {
  FiniteDistLattice L3 = fixtures::three_chain();
  FiniteDistLattice two = fixtures::chain(2);

  std::vector<ElementId> fix_ends(3, -1);
  fix_ends[L3.bottom()] = two.bottom();
  fix_ends[L3.top()] = two.top();
  auto homs = enumerate_homs(L3, two, fix_ends);
  REQUIRE(homs.size() == 2);
  CHECK(homs[0].map == std::vector<ElementId>{0, 0, 1});
  CHECK(homs[1].map == std::vector<ElementId>{0, 1, 1});

  // Identity constraint pins everything.
  std::vector<ElementId> ident = {0, 1, 2};
  CHECK(enumerate_homs(L3, L3, ident).size() == 1);

  // Bounded homs into the two-element lattice match the prime filters.
  FiniteDistLattice sq = fixtures::two_by_two();
  CHECK(enumerate_homs(sq, two).size() == prime_filters(sq).size());
  for (const FiniteDistLattice& L : enumerate_lattices(3))
    CHECK(enumerate_homs(L, two, {}, 8).size() == prime_filters(L).size());

  CHECK_THROWS_AS(enumerate_homs(boolean_lattice(4), two, {}, 8), Error);
}

TEST_CASE("enumerate_homs_above prunes by the pointwise bound") {
  FiniteDistLattice L3 = fixtures::three_chain();
  FiniteDistLattice sq = fixtures::two_by_two();
  // M(m) = a; continuations send m to a or top.
  std::vector<ElementId> lower = {sq.bottom(), *sq.find("a"), sq.top()};
  auto above = enumerate_homs_above(L3, sq, lower);
  REQUIRE(above.size() == 2);
  for (const auto& h : above) CHECK(sq.leq(*sq.find("a"), h.map[1]));
}

TEST_CASE("downset homs respect both bounds") {
  FiniteDistLattice L3 = fixtures::three_chain();
  FiniteDistLattice two = fixtures::chain(2);
  // Downset of m is a two-chain; exactly one bounded hom into the downset of top.
  auto homs = enumerate_downset_homs(L3, *L3.find("m"), two, two.top());
  REQUIRE(homs.size() == 1);
  CHECK(homs[0][*L3.find("m")] == two.top());
  CHECK(homs[0][L3.bottom()] == two.bottom());
  CHECK(homs[0][L3.top()] == -1);

  // Degenerate level: the downset of bottom is a point.
  CHECK(enumerate_downset_homs(L3, *L3.find("m"), two, two.bottom()).size() == 1);
}

TEST_CASE("downset lattice of the vee poset has trivial core") {
  Poset vee{3, {}};
  vee.rel.assign(9, false);
  auto set = [&](int i, int j) { vee.rel[i * 3 + j] = true; };
  for (int i = 0; i < 3; ++i) set(i, i);
  set(2, 0);
  set(2, 1);  // c below a and b
  FiniteDistLattice L = downset_lattice(vee);
  CHECK(L.size() == 5);
  CHECK(oracle::isomorphic(L, fixtures::vee_downsets()));
  CHECK(boolean_core(L).members.size() == 2);
}
