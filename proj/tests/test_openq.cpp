#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latmod/lattice.hpp"
#include "latmod/openq.hpp"

using namespace latmod;

namespace {

IntervalUnion U(const std::string& s) { return parse_union(s); }

// Largest open union disjoint from u, recomputed independently for the
// strong-split criterion check.
IntervalUnion gaps_of(const IntervalUnion& u) {
  std::vector<QInterval> out;
  Endpoint cur = Endpoint::neg_inf();
  for (const QInterval& i : u.parts) {
    if (cur < i.lo) out.push_back(QInterval{cur, i.lo});
    cur = i.hi;
  }
  if (cur < Endpoint::pos_inf()) out.push_back(QInterval{cur, Endpoint::pos_inf()});
  return normalize(std::move(out));
}

}  // namespace

TEST_CASE("exact sign analysis in Q(sqrt 2)") {
  QSqrt2 root{Rational(0), Rational(1)};
  CHECK(sign(root - QSqrt2{Rational(7, 5)}) > 0);    // sqrt2 > 1.4
  CHECK(sign(root - QSqrt2{Rational(3, 2)}) < 0);    // sqrt2 < 1.5
  QSqrt2 half_one_plus{Rational(1, 2), Rational(1, 2)};  // (1 + sqrt2)/2
  CHECK(sign(half_one_plus - QSqrt2{Rational(1)}) > 0);
  CHECK(sign(half_one_plus - QSqrt2{Rational(13, 10)}) < 0);
  CHECK(sign(QSqrt2{Rational(0)}) == 0);
  CHECK(sign(QSqrt2{Rational(2), Rational(-1)}) > 0);   // 2 - sqrt2 > 0
  CHECK(sign(QSqrt2{Rational(1), Rational(-1)}) < 0);   // 1 - sqrt2 < 0
}

TEST_CASE("between-helpers stay inside their bounds") {
  Endpoint zero = Endpoint::finite(QSqrt2{Rational(0)});
  Endpoint one = Endpoint::finite(QSqrt2{Rational(1)});
  Rational q = rational_between(zero, one);
  CHECK(q > 0);
  CHECK(q < 1);
  QSqrt2 t = irrational_between(zero, one);
  CHECK(!t.is_rational());
  CHECK(sign(t) > 0);
  CHECK(sign(t - QSqrt2{Rational(1)}) < 0);

  CHECK(rational_between(Endpoint::neg_inf(), zero) < 0);
  CHECK(rational_between(one, Endpoint::pos_inf()) > 1);
  CHECK(!irrational_between(Endpoint::neg_inf(), Endpoint::pos_inf()).is_rational());
}

TEST_CASE("parser and printer") {
  IntervalUnion u = U("(0,1) u (1,2)");
  CHECK(u.parts.size() == 2);
  CHECK(U("(-1r2, 1r2)") == U("(  -1r2 , 1r2 )"));
  CHECK(U("(0,1r2) u (1r2,3)") == U("(0,3)"));
  CHECK(U("(1+1/2r2, 4)").parts[0].lo.value == QSqrt2{Rational(1), Rational(1, 2)});
  CHECK(U("(-inf, inf)").is_top());
  CHECK(U("bot").is_bottom());

  CHECK(parse_union(to_string(u)) == u);
  IntervalUnion tricky = U("(-inf, -1/3+2/7r2) u (5, inf)");
  CHECK(parse_union(to_string(tricky)) == tricky);

  CHECK_THROWS_AS(U("(1,0)"), Error);
  CHECK_THROWS_AS(U("(0 1)"), Error);
  CHECK_THROWS_AS(U("(0,1) x (1,2)"), Error);
  CHECK_THROWS_AS(U("(0,1/0)"), Error);
}

TEST_CASE("normalization merge rules") {
  CHECK(U("(0,1r2) u (1r2,3)") == U("(0,3)"));       // irrational point is no hole
  CHECK(U("(0,1) u (1,2)").parts.size() == 2);       // rational hole stays
  CHECK(U("(0,2) u (1,3)") == U("(0,3)"));           // overlap merges
  CHECK(U("(0,1) u (1/2,3/4)") == U("(0,1)"));       // containment
}

TEST_CASE("lattice operations on unions") {
  CHECK(iu_meet(U("(0,2)"), U("(1,3)")) == U("(1,2)"));
  CHECK(iu_join(U("(0,1)"), U("(1,2)")) != U("(0,2)"));
  CHECK(iu_join(U("(0,1r2)"), U("(1,3)")) == U("(0,3)"));
  CHECK(iu_leq(U("(0,1)"), U("(0,2)")));
  CHECK(!iu_leq(U("(0,2)"), U("(0,1)")));
  CHECK(iu_meet(U("(0,1)"), U("(1,2)")).is_bottom());
}

TEST_CASE("membership sampling agrees with the operations") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 400; ++i) {
    IntervalUnion u = random_union(rng), v = random_union(rng);
    IntervalUnion m = iu_meet(u, v), j = iu_join(u, v);
    for (int k = 0; k < 5; ++k) {
      Rational q = random_rational(rng);
      CHECK(contains(m, q) == (contains(u, q) && contains(v, q)));
      CHECK(contains(j, q) == (contains(u, q) || contains(v, q)));
    }
  }
}

TEST_CASE("normalize preserves membership") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    IntervalUnion u = random_union(rng, 4);
    std::vector<QInterval> raw = u.parts;
    // Shuffle and duplicate pieces; the canonical form must not change.
    if (!raw.empty()) {
      raw.push_back(raw[rng() % raw.size()]);
      std::swap(raw[0], raw[raw.size() / 2]);
    }
    CHECK(normalize(raw) == u);
  }
}

TEST_CASE("complement") {
  auto c = complement(U("(-1r2, 1r2)"));
  REQUIRE(c);
  CHECK(*c == U("(-inf, -1r2) u (1r2, inf)"));
  CHECK(!complement(U("(0,1)")).has_value());
  CHECK(complement(iu_bottom()) == iu_top());
  CHECK(complement(iu_top()) == iu_bottom());
  CHECK(!complement(U("(0,1) u (1,2)")).has_value());
  auto c2 = complement(U("(-inf, -1r2)"));
  REQUIRE(c2);
  CHECK(*c2 == U("(-1r2, inf)"));
}

TEST_CASE("split_join: worked example and trivial cases") {
  IntervalUnion b = U("(1/2r2, 2r2)"), u = U("(0, 1r2)"), v = U("(1, 3)");
  SplitPair sp = split_join(b, u, v);
  CHECK(iu_leq(sp.b1, u));
  CHECK(iu_leq(sp.b2, v));
  CHECK(iu_join(sp.b1, sp.b2) == b);
  CHECK(is_complemented(sp.b1));
  CHECK(is_complemented(sp.b2));

  CHECK(split_join(U("(1r2, 2r2)"), U("(1, 3)"), U("(4, 5)")).b2.is_bottom());
  SplitPair other = split_join(U("(2r2, 3r2)"), U("(0, 1)"), U("(1, 10)"));
  CHECK(other.b1.is_bottom());
  CHECK(other.b2 == U("(2r2, 3r2)"));

  CHECK_THROWS_AS(split_join(U("(0, 1)"), U("(0, 2)"), U("(1, 3)")), Error);
  CHECK_THROWS_AS(split_join(U("(-1r2, 1r2)"), U("(0, 1)"), U("(1, 2)")), Error);
}

TEST_CASE("split_join postconditions on random admissible triples") {
  std::mt19937_64 rng(11);
  int done = 0;
  while (done < 300) {
    IntervalUnion u = random_union(rng), v = random_union(rng);
    IntervalUnion uv = iu_join(u, v);
    if (uv.is_bottom()) continue;
    IntervalUnion b = random_core_below(rng, uv);
    SplitPair sp = split_join(b, u, v);  // validates its own postconditions
    CHECK(iu_join(sp.b1, sp.b2) == b);
    ++done;
  }
}

TEST_CASE("downarrow hom law on the named pairs") {
  std::mt19937_64 rng(3);
  CHECK(check_downarrow_hom(U("(0,1r2)"), U("(1,3)"), rng));
  CHECK(check_downarrow_hom(U("(0,1)"), U("(1,2)"), rng));
  CHECK(check_downarrow_hom(U("(0,1)"), U("(0,1)"), rng));
}

TEST_CASE("strong split: obstruction and success") {
  StrongSplitOutcome blocked = strong_split(U("(-1r2, 1r2)"), U("(-inf, 0)"));
  CHECK(!blocked.split.has_value());
  REQUIRE(blocked.obstruction.has_value());
  CHECK(*blocked.obstruction == 0);

  StrongSplitOutcome ok = strong_split(U("(-1r2, 1r2)"), U("(-inf, 1/2r2)"));
  REQUIRE(ok.split.has_value());
  CHECK(iu_leq(ok.split->b1, U("(-inf, 1/2r2)")));
  CHECK(iu_meet(ok.split->v, U("(-inf, 1/2r2)")).is_bottom());
  CHECK(iu_join(ok.split->b1, ok.split->b2) == U("(-1r2, 1r2)"));
  CHECK(iu_leq(ok.split->b2, ok.split->v));

  StrongSplitOutcome triv = strong_split(U("(1r2, 2r2)"), U("(1, 3)"));
  REQUIRE(triv.split.has_value());
  CHECK(triv.split->b1 == U("(1r2, 2r2)"));
  CHECK(triv.split->b2.is_bottom());

  CHECK_THROWS_AS(strong_split(U("(0, 1)"), U("(0, 2)")), Error);
}

TEST_CASE("strong split absence criterion matches the disjoint-cover test") {
  // A triple exists iff b is below u joined with the gaps of u, since any v
  // disjoint from u sits inside those gaps.
  std::mt19937_64 rng(13);
  int absent_seen = 0, present_seen = 0;
  for (int i = 0; i < 300; ++i) {
    IntervalUnion u = random_union(rng);
    IntervalUnion b = random_union(rng, 2, /*core_only=*/true);
    StrongSplitOutcome out = strong_split(b, u);
    bool coverable = iu_leq(b, iu_join(u, gaps_of(u)));
    CHECK(out.split.has_value() == coverable);
    if (out.split) {
      ++present_seen;
      CHECK(iu_join(out.split->b1, out.split->b2) == b);
      CHECK(iu_meet(out.split->v, u).is_bottom());
    } else {
      ++absent_seen;
      CHECK(contains(b, *out.obstruction));
      bool is_boundary = false;
      for (const QInterval& c : u.parts) {
        if (c.lo.is_rational() && c.lo.value.a == *out.obstruction) is_boundary = true;
        if (c.hi.is_rational() && c.hi.value.a == *out.obstruction) is_boundary = true;
      }
      CHECK(is_boundary);
    }
  }
  CHECK(absent_seen > 0);
  CHECK(present_seen > 0);
}

TEST_CASE("saturation hulls") {
  auto hulls = saturation(U("(0,1)"));
  REQUIRE(hulls.size() == 1);
  CHECK(hulls[0].lo == Endpoint::finite(QSqrt2{Rational(0)}));
  CHECK(hulls[0].hi == Endpoint::finite(QSqrt2{Rational(1)}));

  auto half = saturation(U("(-inf, 0)"));
  REQUIRE(half.size() == 1);
  CHECK(half[0].lo == Endpoint::neg_inf());

  CHECK(saturation(U("(0,1) u (1,2)")).size() == 2);

  // Guarantee: complemented elements inside a hull lie inside the component.
  std::mt19937_64 rng(17);
  IntervalUnion w = U("(0,1)");
  for (int i = 0; i < 100; ++i) {
    Endpoint lo = Endpoint::finite(random_irrational_between(rng, w.parts[0].lo, w.parts[0].hi));
    Endpoint hi = Endpoint::finite(random_irrational_between(rng, lo, w.parts[0].hi));
    CHECK(iu_leq(IntervalUnion{{QInterval{lo, hi}}}, w));
  }
}

TEST_CASE("forced value certificates") {
  std::mt19937_64 rng(19);
  ForcedValueCert c1 = forced_value(U("(0,1)"), rng);
  CHECK(c1.components.size() == 1);
  CHECK(!c1.components[0].witnesses.empty());

  ForcedValueCert c2 = forced_value(U("(0,1) u (1,2)"), rng);
  CHECK(c2.components.size() == 2);
  CHECK(!c2.splits.empty());

  forced_value(U("(-inf, 0)"), rng);
  forced_value(U("(-1r2, 1r2)"), rng);  // degenerate: already complemented
  forced_value(iu_top(), rng);
  forced_value(iu_bottom(), rng);

  for (int i = 0; i < 100; ++i) forced_value(random_union(rng), rng);
}

TEST_CASE("the worked disjoint witness from the certificate argument") {
  // Candidate (sqrt2 - 1, sqrt2) is not below (0,1); the piece above the edge,
  // ((1+sqrt2)/2, sqrt2), is complemented, inside the candidate, disjoint
  // from (0,1).
  IntervalUnion u = U("(0,1)");
  IntervalUnion cand = U("(-1+1r2, 1r2)");
  CHECK(!iu_leq(cand, u));
  IntervalUnion witness = U("(1/2+1/2r2, 1r2)");
  CHECK(iu_leq(witness, cand));
  CHECK(iu_meet(witness, u).is_bottom());
  CHECK(is_complemented(witness));
  CHECK(!witness.is_bottom());
}

TEST_CASE("approximation bounds in the interval lattice") {
  OpenQApprox both = lower_upper_approx_openq(U("(-1r2, 1r2)"));
  CHECK(both.lower == U("(-1r2, 1r2)"));
  CHECK(both.upper == U("(-1r2, 1r2)"));

  OpenQApprox none = lower_upper_approx_openq(U("(-inf, 0)"));
  CHECK(!none.lower.has_value());
  CHECK(!none.upper.has_value());

  OpenQApprox bottom = lower_upper_approx_openq(iu_bottom());
  CHECK(bottom.lower == iu_bottom());
  CHECK(bottom.upper == iu_bottom());

  // A rational hole with irrational outer endpoints: no largest element below,
  // but filling the hole gives the least element above.
  OpenQApprox holed = lower_upper_approx_openq(U("(-1r2, 1) u (1, 1r2)"));
  CHECK(!holed.lower.has_value());
  CHECK(holed.upper == U("(-1r2, 1r2)"));
}

TEST_CASE("absent bounds admit strict improvements forever") {
  std::mt19937_64 rng(23);
  IntervalUnion u = U("(-inf, 0)");
  IntervalUnion b = U("(-inf, -1r2)");
  for (int i = 0; i < 6; ++i) {
    IntervalUnion better = improve_lower(u, b);
    CHECK(iu_leq(b, better));
    CHECK(b != better);
    CHECK(iu_leq(better, u));
    CHECK(is_complemented(better));
    b = better;
  }

  IntervalUnion upper = U("(-inf, 1r2)");
  for (int i = 0; i < 6; ++i) {
    IntervalUnion better = improve_upper(u, upper);
    CHECK(iu_leq(better, upper));
    CHECK(better != upper);
    CHECK(iu_leq(u, better));
    CHECK(is_complemented(better));
    upper = better;
  }

  // Also starting from nothing: improve a bottom candidate below (0,1).
  IntervalUnion tiny = improve_lower(U("(0,1)"), iu_bottom());
  CHECK(!tiny.is_bottom());
  CHECK(iu_leq(tiny, U("(0,1)")));
  (void)rng;
}

TEST_CASE("ideal equality discrimination") {
  CHECK(!separating_rational(U("(0,1)"), U("(0,1)")).has_value());
  auto q = separating_rational(U("(0,2)"), U("(0,1) u (1,2)"));
  REQUIRE(q.has_value());
  CHECK(*q == 1);

  std::mt19937_64 rng(29);
  int distinct = 0;
  for (int i = 0; i < 200; ++i) {
    IntervalUnion u = random_union(rng), v = random_union(rng);
    if (u == v) {
      CHECK(!separating_rational(u, v).has_value());
      continue;
    }
    ++distinct;
    IntervalUnion b = separating_core_witness(u, v);
    CHECK(is_complemented(b));
    CHECK(iu_leq(b, u) != iu_leq(b, v));
  }
  CHECK(distinct > 50);
}
