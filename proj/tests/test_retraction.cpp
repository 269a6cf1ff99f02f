#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "latmod/enumerate.hpp"
#include "latmod/retraction.hpp"
#include "oracles.hpp"

using namespace latmod;

TEST_CASE("approximation bounds") {
  FiniteDistLattice L3 = fixtures::three_chain();
  BooleanCore c3 = boolean_core(L3);
  ApproxPair ap = approx_bounds(L3, c3, *L3.find("m"));
  CHECK(ap.lower == L3.bottom());
  CHECK(ap.upper == L3.top());

  FiniteDistLattice sq = fixtures::two_by_two();
  BooleanCore csq = boolean_core(sq);
  ApproxPair apx = approx_bounds(sq, csq, *sq.find("a"));
  CHECK(apx.lower == *sq.find("a"));
  CHECK(apx.upper == *sq.find("a"));

  FiniteDistLattice L4 = fixtures::chain(4);
  BooleanCore c4 = boolean_core(L4);
  for (ElementId mid : {1, 2}) {
    ApproxPair am = approx_bounds(L4, c4, mid);
    CHECK(am.lower == L4.bottom());
    CHECK(am.upper == L4.top());
  }
}

TEST_CASE("normal forms agree with the closure oracle") {
  FiniteDistLattice L3 = fixtures::three_chain();
  BooleanCore c3 = boolean_core(L3);
  auto forms = normal_form_sublattice(L3, c3, *L3.find("m"));
  std::vector<ElementId> denoted;
  for (const NormalForm& nf : forms) denoted.push_back(nf.denotes);
  CHECK(denoted == std::vector<ElementId>{0, 1, 2});

  // x in the core: the sublattice is the core itself.
  auto core_forms = normal_form_sublattice(L3, c3, L3.top());
  std::vector<ElementId> core_denoted;
  for (const NormalForm& nf : core_forms) core_denoted.push_back(nf.denotes);
  CHECK(core_denoted == c3.members);

  for (const FiniteDistLattice& L : enumerate_lattices(3)) {
    BooleanCore core = boolean_core(L);
    for (int x = 0; x < L.size(); ++x) {
      std::vector<ElementId> seed = core.members;
      seed.push_back(x);
      auto closure = oracle::sublattice_closure(L, seed);
      std::vector<ElementId> got;
      for (const NormalForm& nf : normal_form_sublattice(L, core, x)) got.push_back(nf.denotes);
      CHECK(got == closure);
    }
  }
}

TEST_CASE("normal-form canonical representative is the componentwise maximum") {
  for (const FiniteDistLattice& L : enumerate_lattices(3)) {
    BooleanCore core = boolean_core(L);
    for (int x = 0; x < L.size(); ++x) {
      for (const NormalForm& nf : normal_form_sublattice(L, core, x)) {
        for (ElementId b0 : core.members)
          for (ElementId b1 : core.members)
            if (L.join(L.meet(b0, x), b1) == nf.denotes) {
              CHECK(L.leq(b0, nf.b0));
              CHECK(L.leq(b1, nf.b1));
            }
      }
    }
  }
}

TEST_CASE("six inequalities: trivial cases and preconditions") {
  FiniteDistLattice L3 = fixtures::three_chain();
  BooleanCore c3 = boolean_core(L3);
  ElementId bot = L3.bottom(), top = L3.top(), m = *L3.find("m");

  auto res = check_six_inequalities(L3, c3, m, top, bot, top, bot, bot, bot, top);
  CHECK(res.ok);
  CHECK(res.cert.inequalities.size() == 6);

  // Representations denoting different elements are rejected.
  CHECK_THROWS_AS(check_six_inequalities(L3, c3, m, top, bot, bot, bot, bot, bot, top), Error);
  // r outside the interval: take a square where the interval is a point.
  FiniteDistLattice sq = fixtures::two_by_two();
  BooleanCore csq = boolean_core(sq);
  ElementId a = *sq.find("a");
  CHECK_THROWS_AS(
      check_six_inequalities(sq, csq, a, sq.top(), sq.bottom(), sq.top(), sq.bottom(), sq.bottom(), a, a),
      Error);
}

TEST_CASE("six inequalities never fail over enumerated instances") {
  for (const FiniteDistLattice& L : enumerate_lattices(3)) {
    BooleanCore core = boolean_core(L);
    for (int x = 0; x < L.size(); ++x) {
      ApproxPair ap = approx_bounds(L, core, x);
      std::map<ElementId, std::vector<std::pair<ElementId, ElementId>>> groups;
      for (ElementId b0 : core.members)
        for (ElementId b1 : core.members) groups[L.join(L.meet(b0, x), b1)].push_back({b0, b1});
      for (auto& [e, reps] : groups)
        for (auto& [b0, b1] : reps)
          for (auto& [b0p, b1p] : reps)
            for (ElementId r : core.members) {
              if (!L.leq(ap.lower, r) || !L.leq(r, ap.upper)) continue;
              auto res = check_six_inequalities(L, core, x, b0, b1, b0p, b1p, r, ap.lower, ap.upper);
              CHECK(res.ok);
            }
    }
  }
}

TEST_CASE("build_retraction on the three-chain") {
  FiniteDistLattice L = fixtures::three_chain();
  BooleanCore core = boolean_core(L);
  ElementId m = *L.find("m");

  auto low = build_retraction(L, core, m, L.bottom());
  CHECK(low == std::vector<ElementId>{0, 0, 2});
  auto high = build_retraction(L, core, m, L.top());
  CHECK(high == std::vector<ElementId>{0, 2, 2});
  CHECK(is_hom(L, L, low));
  CHECK(is_hom(L, L, high));
}

TEST_CASE("build_retraction at a complemented x is the identity on the core") {
  FiniteDistLattice sq = fixtures::two_by_two();
  BooleanCore core = boolean_core(sq);
  ElementId a = *sq.find("a");
  auto r = build_retraction(sq, core, a, a);
  for (int x = 0; x < sq.size(); ++x) CHECK(r[x] == x);
  CHECK_THROWS_AS(build_retraction(sq, core, a, sq.bottom()), Error);
}

TEST_CASE("extend_hom lower tie-break") {
  FiniteDistLattice L3 = fixtures::three_chain();
  BooleanCore c3 = boolean_core(L3);

  std::vector<ElementId> total = {0, 0, 2};
  CHECK(extend_hom(L3, c3, total) == total);

  std::vector<ElementId> partial = {0, -1, 2};
  CHECK(extend_hom(L3, c3, partial) == std::vector<ElementId>{0, 0, 2});

  FiniteDistLattice L4 = fixtures::chain(4);
  BooleanCore c4 = boolean_core(L4);
  std::vector<ElementId> p4 = {0, -1, -1, 3};
  auto e4 = extend_hom(L4, c4, p4);
  CHECK(e4 == std::vector<ElementId>{0, 0, 0, 3});
  CHECK(is_hom(L4, L4, e4));
}

TEST_CASE("retraction uniqueness is the boolean collapse") {
  CHECK(retraction_unique(fixtures::two_by_two(), boolean_core(fixtures::two_by_two())).unique);
  auto ru = retraction_unique(fixtures::three_chain(), boolean_core(fixtures::three_chain()));
  CHECK(!ru.unique);
  CHECK(ru.witness == 1);

  for (const FiniteDistLattice& L : enumerate_lattices(3)) {
    BooleanCore core = boolean_core(L);
    CHECK(retraction_unique(L, core).unique == is_boolean(L));

    // Cross-check against the hom count: unique iff exactly one retraction.
    FiniteDistLattice B = core_as_lattice(L, core);
    std::vector<ElementId> constraint(L.size(), -1);
    for (int i = 0; i < B.size(); ++i) constraint[core.members[i]] = i;
    auto homs = enumerate_homs(L, B, constraint, 8);
    CHECK((homs.size() == 1) == retraction_unique(L, core).unique);
  }
}

TEST_CASE("every admissible r is hit and every retraction stays in the interval") {
  for (const FiniteDistLattice& L : enumerate_lattices(3)) {
    BooleanCore core = boolean_core(L);
    FiniteDistLattice B = core_as_lattice(L, core);

    for (int x = 0; x < L.size(); ++x) {
      ApproxPair ap = approx_bounds(L, core, x);
      for (ElementId r : core.members) {
        if (!L.leq(ap.lower, r) || !L.leq(r, ap.upper)) continue;
        auto map = build_retraction(L, core, x, r);
        CHECK(map[x] == r);
        CHECK(is_hom(L, L, map));
        for (ElementId b : core.members) CHECK(map[b] == b);
      }
    }

    std::vector<ElementId> constraint(L.size(), -1);
    for (int i = 0; i < B.size(); ++i) constraint[core.members[i]] = i;
    for (const LatticeHom& h : enumerate_homs(L, B, constraint, 8))
      for (int x = 0; x < L.size(); ++x) {
        ApproxPair ap = approx_bounds(L, core, x);
        CHECK(L.leq(ap.lower, core.members[h.map[x]]));
        CHECK(L.leq(core.members[h.map[x]], ap.upper));
      }
  }
}
