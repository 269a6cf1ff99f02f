#include "latmod/openq.hpp"

#include <algorithm>

#include "latmod/lattice.hpp"

namespace latmod {

namespace {

struct TaggedPiece {
  QInterval iv;
  bool from_u;
};

IntervalUnion single(const QInterval& i) { return IntervalUnion{{i}}; }

// Covers one component c of b (irrational or infinite endpoints) by pieces of
// the tagged components of A and V, walking left to right. Cut points are
// irrational, so the union of the pieces is exactly c over Q.
std::vector<TaggedPiece> sweep_component(const QInterval& c, const IntervalUnion& A,
                                         const IntervalUnion& V) {
  std::vector<TaggedPiece> comps;
  for (const QInterval& i : A.parts) comps.push_back({i, true});
  for (const QInterval& i : V.parts) comps.push_back({i, false});

  std::vector<TaggedPiece> pieces;
  Endpoint p = c.lo;
  while (true) {
    int best = -1;
    for (size_t k = 0; k < comps.size(); ++k) {
      if (compare(comps[k].iv.lo, p) <= 0 && compare(p, comps[k].iv.hi) < 0) {
        if (best < 0 || compare(comps[best].iv.hi, comps[k].iv.hi) < 0 ||
            (compare(comps[best].iv.hi, comps[k].iv.hi) == 0 && comps[k].from_u &&
             !comps[best].from_u))
          best = static_cast<int>(k);
      }
    }
    if (best < 0)
      throw Error(Errc::InternalInvariant, "cover gap while splitting " + to_string(c));

    const TaggedPiece& ch = comps[best];
    if (compare(c.hi, ch.iv.hi) <= 0) {
      pieces.push_back({QInterval{p, c.hi}, ch.from_u});
      return pieces;
    }
    Endpoint a2 = ch.iv.hi;  // finite and strictly inside c
    if (!a2.is_rational()) {
      pieces.push_back({QInterval{p, a2}, ch.from_u});
      p = a2;
      continue;
    }
    // The rational endpoint a2 lies in c, so some component spans it; cut just
    // before a2 inside the overlap.
    int succ = -1;
    for (size_t k = 0; k < comps.size(); ++k)
      if (compare(comps[k].iv.lo, a2) < 0 && compare(a2, comps[k].iv.hi) < 0)
        if (succ < 0 || compare(comps[succ].iv.hi, comps[k].iv.hi) < 0)
          succ = static_cast<int>(k);
    if (succ < 0)
      throw Error(Errc::InternalInvariant, "rational endpoint uncovered while splitting");
    Endpoint overlap_lo = compare(p, comps[succ].iv.lo) < 0 ? comps[succ].iv.lo : p;
    Endpoint t = Endpoint::finite(irrational_between(overlap_lo, a2));
    pieces.push_back({QInterval{p, t}, ch.from_u});
    p = t;
  }
}

}  // namespace

SplitPair split_join(const IntervalUnion& b, const IntervalUnion& u, const IntervalUnion& v) {
  if (!is_complemented(b))
    throw Error(Errc::PreconditionViolated, "split candidate is not complemented");
  IntervalUnion uv = iu_join(u, v);
  if (!iu_leq(b, uv))
    throw Error(Errc::PreconditionViolated, "split candidate is not below the join");

  if (iu_leq(b, u)) return SplitPair{b, iu_bottom()};
  if (iu_meet(b, u).is_bottom()) return SplitPair{iu_bottom(), b};

  std::vector<QInterval> left, right;
  for (const QInterval& c : b.parts) {
    IntervalUnion A = iu_meet(u, single(c));
    IntervalUnion V = iu_meet(v, single(c));
    for (const TaggedPiece& p : sweep_component(c, A, V))
      (p.from_u ? left : right).push_back(p.iv);
  }
  SplitPair out{normalize(std::move(left)), normalize(std::move(right))};

  if (!is_complemented(out.b1) || !is_complemented(out.b2) || !iu_leq(out.b1, u) ||
      !iu_leq(out.b2, v) || iu_join(out.b1, out.b2) != b)
    throw Error(Errc::InternalInvariant, "split postconditions failed for " + to_string(b));
  return out;
}

bool check_downarrow_hom(const IntervalUnion& u, const IntervalUnion& v, std::mt19937_64& rng,
                         int samples, IntervalUnion* bad) {
  IntervalUnion uv = iu_join(u, v);
  for (int s = 0; s < samples; ++s) {
    IntervalUnion b = random_core_below(rng, uv);
    try {
      split_join(b, u, v);
    } catch (const Error&) {
      if (bad) *bad = b;
      return false;
    }
  }
  return true;
}

namespace {

/// Largest open union disjoint from u: the gaps between components plus tails.
IntervalUnion pseudo_complement(const IntervalUnion& u) {
  std::vector<QInterval> gaps;
  Endpoint cursor = Endpoint::neg_inf();
  for (const QInterval& i : u.parts) {
    if (cursor < i.lo) gaps.push_back(QInterval{cursor, i.lo});
    cursor = i.hi;
  }
  if (cursor < Endpoint::pos_inf()) gaps.push_back(QInterval{cursor, Endpoint::pos_inf()});
  return normalize(std::move(gaps));
}

}  // namespace

StrongSplitOutcome strong_split(const IntervalUnion& b, const IntervalUnion& u) {
  if (!is_complemented(b))
    throw Error(Errc::PreconditionViolated, "strong split candidate is not complemented");

  if (iu_leq(b, u)) return StrongSplitOutcome{StrongSplit{b, iu_bottom(), iu_bottom()}, {}};

  // Obstructed exactly when a rational boundary point of u lies inside b: any
  // piece covering that point would meet u arbitrarily close to it.
  std::vector<Rational> boundary;
  for (const QInterval& i : u.parts) {
    if (i.lo.is_rational()) boundary.push_back(i.lo.value.a);
    if (i.hi.is_rational()) boundary.push_back(i.hi.value.a);
  }
  std::sort(boundary.begin(), boundary.end());
  for (const Rational& r : boundary)
    if (contains(b, r)) return StrongSplitOutcome{{}, r};

  IntervalUnion v = pseudo_complement(u);
  if (!iu_meet(v, u).is_bottom())
    throw Error(Errc::InternalInvariant, "pseudo-complement meets u");
  SplitPair sp = split_join(b, u, v);
  return StrongSplitOutcome{StrongSplit{sp.b1, sp.b2, v}, {}};
}

std::vector<ClosedHull> saturation(const IntervalUnion& u) {
  std::vector<ClosedHull> out;
  out.reserve(u.parts.size());
  for (const QInterval& i : u.parts) out.push_back(ClosedHull{i.lo, i.hi});
  return out;
}

namespace {

// A complemented subinterval of b lying beyond the hull of w; exists whenever
// b (complemented) is not below w, by the saturation guarantee.
std::optional<QInterval> disjoint_piece(const IntervalUnion& b, const QInterval& w) {
  for (const QInterval& c : b.parts) {
    if (compare(w.hi, c.lo) <= 0 || compare(c.hi, w.lo) <= 0) return c;  // already clear of w
    if (w.hi.is_finite() && compare(w.hi, c.hi) < 0)
      return QInterval{Endpoint::finite(irrational_between(w.hi, c.hi)), c.hi};
    if (w.lo.is_finite() && compare(c.lo, w.lo) < 0)
      return QInterval{c.lo, Endpoint::finite(irrational_between(c.lo, w.lo))};
  }
  return std::nullopt;
}

}  // namespace

ForcedValueCert forced_value(const IntervalUnion& u, std::mt19937_64& rng,
                             int candidates_per_component, int split_samples) {
  ForcedValueCert cert;

  for (const QInterval& w : u.parts) {
    ForcedValueCert::ComponentCert cc;
    cc.component = w;
    cc.hull = ClosedHull{w.lo, w.hi};
    IntervalUnion W = single(w);

    // Saturation: complemented elements inside the closed hull stay inside the
    // open component, including ones that start exactly at an irrational edge.
    for (int s = 0; s < candidates_per_component; ++s) {
      Endpoint lo = w.lo, hi = w.hi;
      if (rng() % 2 == 0 || lo.is_rational())
        lo = Endpoint::finite(random_irrational_between(rng, w.lo, w.hi));
      if (rng() % 2 == 0 || hi.is_rational() || !(lo < hi))
        hi = Endpoint::finite(random_irrational_between(rng, lo, w.hi));
      if (!(lo < hi)) continue;
      IntervalUnion sample = single(QInterval{lo, hi});
      if (!iu_leq(sample, W))
        throw Error(Errc::CertificateFailed, "saturation violated by " + to_string(sample));
      ++cc.saturation_samples;
    }

    // Candidates sticking out of the component admit a complemented piece
    // disjoint from it; that forces any dominating hom to drop them. Half the
    // candidates straddle the component edge.
    bool right = w.hi.is_finite(), left = w.lo.is_finite();
    for (int s = 0; s < candidates_per_component && (left || right); ++s) {
      bool use_right = right && (!left || rng() % 2 == 0);
      bool straddle = rng() % 2 == 0;
      const Endpoint& edge = use_right ? w.hi : w.lo;
      Rational q = use_right
                       ? random_rational_between(rng, edge, Endpoint::pos_inf())
                       : random_rational_between(rng, Endpoint::neg_inf(), edge);
      Endpoint qe = Endpoint::finite(QSqrt2{q});
      Endpoint clo, chi;
      if (use_right) {
        chi = Endpoint::finite(random_irrational_between(rng, qe, Endpoint::pos_inf()));
        clo = straddle ? Endpoint::finite(random_irrational_between(rng, w.lo, w.hi))
                       : Endpoint::finite(irrational_between(edge, qe));
      } else {
        clo = Endpoint::finite(random_irrational_between(rng, Endpoint::neg_inf(), qe));
        chi = straddle ? Endpoint::finite(random_irrational_between(rng, w.lo, w.hi))
                       : Endpoint::finite(irrational_between(qe, edge));
      }
      std::vector<QInterval> cand_parts{QInterval{clo, chi}};
      if (rng() % 2 == 0) {
        Endpoint s1 = Endpoint::finite(random_irrational_between(rng, w.lo, w.hi));
        if (s1 < w.hi)
          cand_parts.push_back(QInterval{s1, Endpoint::finite(random_irrational_between(rng, s1, w.hi))});
      }
      IntervalUnion cand = normalize(std::move(cand_parts));
      if (iu_leq(cand, W)) continue;

      auto piece = disjoint_piece(cand, w);
      if (!piece)
        throw Error(Errc::CertificateFailed, "no disjoint witness inside " + to_string(cand));
      IntervalUnion witness = single(*piece);
      if (witness.is_bottom() || !iu_leq(witness, cand) || !iu_meet(witness, W).is_bottom())
        throw Error(Errc::CertificateFailed, "invalid disjoint witness for " + to_string(cand));
      cc.witnesses.push_back(ForcedValueCert::DisjointWitness{cand, witness});
    }
    cert.components.push_back(std::move(cc));
  }

  // Reassembly across components: sampled complemented b <= u split into
  // per-component pieces joining back to b.
  for (int s = 0; s < split_samples; ++s) {
    IntervalUnion b = random_core_below(rng, u);
    ForcedValueCert::SplitRecord rec;
    rec.sample = b;
    IntervalUnion rest = b;
    for (size_t k = 0; k < u.parts.size(); ++k) {
      IntervalUnion W = single(u.parts[k]);
      if (k + 1 == u.parts.size()) {
        if (!iu_leq(rest, W))
          throw Error(Errc::CertificateFailed, "split remainder escapes the last component");
        rec.parts.push_back(rest);
        rest = iu_bottom();
        break;
      }
      std::vector<QInterval> tail(u.parts.begin() + k + 1, u.parts.end());
      SplitPair sp = split_join(rest, W, normalize(std::move(tail)));
      rec.parts.push_back(sp.b1);
      rest = sp.b2;
    }
    IntervalUnion glued = iu_bottom();
    for (const IntervalUnion& part : rec.parts) glued = iu_join(glued, part);
    if (glued != b) throw Error(Errc::CertificateFailed, "split pieces do not reassemble");
    cert.splits.push_back(std::move(rec));
  }
  return cert;
}

OpenQApprox lower_upper_approx_openq(const IntervalUnion& u) {
  OpenQApprox out;
  if (is_complemented(u)) out.lower = u;
  IntervalUnion filled = fill_rational_holes(u);
  if (is_complemented(filled)) out.upper = filled;
  return out;
}

IntervalUnion improve_lower(const IntervalUnion& u, const IntervalUnion& b) {
  if (is_complemented(u))
    throw Error(Errc::PreconditionViolated, "lower approximation exists; nothing to improve");
  if (!is_complemented(b) || !iu_leq(b, u))
    throw Error(Errc::PreconditionViolated, "candidate must be complemented and below u");

  for (const QInterval& comp : u.parts) {
    bool at_lo = comp.lo.is_rational();
    if (!at_lo && !comp.hi.is_rational()) continue;
    IntervalUnion inside = iu_meet(b, single(comp));
    Endpoint frontier;
    if (inside.is_bottom()) {
      // Fresh piece anywhere inside the component.
      Rational q = rational_between(comp.lo, comp.hi);
      Endpoint qe = Endpoint::finite(QSqrt2{q});
      IntervalUnion piece = single(QInterval{Endpoint::finite(irrational_between(comp.lo, qe)),
                                             Endpoint::finite(irrational_between(qe, comp.hi))});
      return iu_join(b, piece);
    }
    if (at_lo) {
      frontier = inside.parts.front().lo;  // irrational and strictly above comp.lo
      Rational q = rational_between(comp.lo, frontier);
      IntervalUnion piece = single(
          QInterval{Endpoint::finite(irrational_between(comp.lo, Endpoint::finite(QSqrt2{q}))),
                    frontier});
      return iu_join(b, piece);
    }
    frontier = inside.parts.back().hi;  // irrational and strictly below comp.hi
    Rational q = rational_between(frontier, comp.hi);
    IntervalUnion piece = single(
        QInterval{frontier,
                  Endpoint::finite(irrational_between(Endpoint::finite(QSqrt2{q}), comp.hi))});
    return iu_join(b, piece);
  }
  throw Error(Errc::InternalInvariant, "no rational endpoint found to improve at");
}

IntervalUnion improve_upper(const IntervalUnion& u, const IntervalUnion& b) {
  IntervalUnion filled = fill_rational_holes(u);
  if (is_complemented(filled))
    throw Error(Errc::PreconditionViolated, "upper approximation exists; nothing to improve");
  if (!is_complemented(b) || !iu_leq(u, b))
    throw Error(Errc::PreconditionViolated, "candidate must be complemented and above u");

  for (size_t k = 0; k < filled.parts.size(); ++k) {
    const QInterval& block = filled.parts[k];
    if (block.hi.is_rational()) {
      // Carve a gap just above the block, inside b but clear of u.
      Endpoint limit = k + 1 < filled.parts.size() ? filled.parts[k + 1].lo : Endpoint::pos_inf();
      for (const QInterval& c : b.parts) {
        if (!(c.lo < block.hi) || !(block.hi < c.hi)) continue;
        Endpoint e = compare(limit, c.hi) < 0 ? limit : c.hi;
        Endpoint t1 = Endpoint::finite(irrational_between(block.hi, e));
        Endpoint t2 = Endpoint::finite(irrational_between(t1, e));
        IntervalUnion gap = single(QInterval{t1, t2});
        IntervalUnion better = iu_meet(b, *complement(gap));
        if (better != b && iu_leq(u, better)) return better;
      }
    }
    if (block.lo.is_rational()) {
      Endpoint limit = k > 0 ? filled.parts[k - 1].hi : Endpoint::neg_inf();
      for (const QInterval& c : b.parts) {
        if (!(c.lo < block.lo) || !(block.lo < c.hi)) continue;
        Endpoint e = compare(c.lo, limit) < 0 ? limit : c.lo;
        Endpoint t2 = Endpoint::finite(irrational_between(e, block.lo));
        Endpoint t1 = Endpoint::finite(irrational_between(e, t2));
        IntervalUnion gap = single(QInterval{t1, t2});
        IntervalUnion better = iu_meet(b, *complement(gap));
        if (better != b && iu_leq(u, better)) return better;
      }
    }
  }
  throw Error(Errc::InternalInvariant, "no shrinking cut found");
}

std::optional<Rational> separating_rational(const IntervalUnion& u, const IntervalUnion& v) {
  std::vector<Endpoint> cuts;
  for (const IntervalUnion* w : {&u, &v})
    for (const QInterval& i : w->parts) {
      if (i.lo.is_finite()) cuts.push_back(i.lo);
      if (i.hi.is_finite()) cuts.push_back(i.hi);
    }
  std::sort(cuts.begin(), cuts.end(), [](const Endpoint& a, const Endpoint& b) {
    return compare(a, b) < 0;
  });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Rational> candidates;
  Endpoint prev = Endpoint::neg_inf();
  for (const Endpoint& e : cuts) {
    candidates.push_back(rational_between(prev, e));
    if (e.is_rational()) candidates.push_back(e.value.a);
    prev = e;
  }
  candidates.push_back(rational_between(prev, Endpoint::pos_inf()));

  for (const Rational& q : candidates)
    if (contains(u, q) != contains(v, q)) return q;
  return std::nullopt;
}

IntervalUnion separating_core_witness(const IntervalUnion& u, const IntervalUnion& v) {
  auto q = separating_rational(u, v);
  if (!q) throw Error(Errc::PreconditionViolated, "unions are equal; no separating witness");
  const IntervalUnion& host = contains(u, *q) ? u : v;
  Endpoint qe = Endpoint::finite(QSqrt2{*q});
  for (const QInterval& i : host.parts) {
    if (!(i.lo < qe && qe < i.hi)) continue;
    IntervalUnion b = single(QInterval{Endpoint::finite(irrational_between(i.lo, qe)),
                                       Endpoint::finite(irrational_between(qe, i.hi))});
    if (!iu_leq(b, host) || iu_leq(b, contains(u, *q) ? v : u))
      throw Error(Errc::InternalInvariant, "separating witness failed validation");
    return b;
  }
  throw Error(Errc::InternalInvariant, "separating rational outside every component");
}

Rational random_rational(std::mt19937_64& rng, int span) {
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };
  int den = pick(1, 12);
  int num = pick(-span * 12, span * 12);
  return Rational(num, den);
}

Rational random_rational_between(std::mt19937_64& rng, const Endpoint& lo, const Endpoint& hi) {
  Endpoint a = lo, b = hi;
  int depth = static_cast<int>(rng() % 4);
  for (int d = 0; d < depth; ++d) {
    Endpoint m = Endpoint::finite(QSqrt2{rational_between(a, b)});
    (rng() % 2 == 0 ? b : a) = m;
  }
  return rational_between(a, b);
}

QSqrt2 random_irrational_between(std::mt19937_64& rng, const Endpoint& lo, const Endpoint& hi) {
  Endpoint a = lo, b = hi;
  int depth = static_cast<int>(rng() % 4);
  for (int d = 0; d < depth; ++d) {
    Endpoint m = Endpoint::finite(irrational_between(a, b));
    (rng() % 2 == 0 ? b : a) = m;
  }
  return irrational_between(a, b);
}

IntervalUnion random_union(std::mt19937_64& rng, int max_parts, bool core_only) {
  int k = static_cast<int>(rng() % static_cast<unsigned>(max_parts + 1));
  std::vector<QInterval> parts;
  for (int i = 0; i < k; ++i) {
    auto endpoint = [&](bool force_irrational) {
      Rational a = random_rational(rng);
      if (force_irrational || rng() % 2 == 0) {
        Rational b = random_rational(rng, 2);
        if (b == 0) b = 1;
        return QSqrt2{a, b};
      }
      return QSqrt2{a};
    };
    Endpoint lo, hi;
    if (rng() % 8 == 0) lo = Endpoint::neg_inf();
    else lo = Endpoint::finite(endpoint(core_only));
    if (rng() % 8 == 0) hi = Endpoint::pos_inf();
    else hi = Endpoint::finite(endpoint(core_only));
    if (!(lo < hi)) {
      if (hi < lo) std::swap(lo, hi);
      else if (lo.is_finite()) hi = Endpoint::finite(lo.value + QSqrt2{Rational(1)});
      else continue;
    }
    parts.push_back(QInterval{lo, hi});
  }
  return normalize(std::move(parts));
}

IntervalUnion random_core_below(std::mt19937_64& rng, const IntervalUnion& u) {
  std::vector<QInterval> parts;
  for (const QInterval& comp : u.parts) {
    if (rng() % 4 == 0) continue;  // skip some components
    Endpoint lo = (!comp.lo.is_rational() && rng() % 2 == 0)
                      ? comp.lo
                      : Endpoint::finite(random_irrational_between(rng, comp.lo, comp.hi));
    Endpoint hi = (!comp.hi.is_rational() && rng() % 2 == 0)
                      ? comp.hi
                      : Endpoint::finite(random_irrational_between(rng, lo, comp.hi));
    parts.push_back(QInterval{lo, hi});
  }
  IntervalUnion out = normalize(std::move(parts));
  if (!is_complemented(out) || !iu_leq(out, u))
    throw Error(Errc::InternalInvariant, "random core sample escaped its bound");
  return out;
}

}  // namespace latmod
