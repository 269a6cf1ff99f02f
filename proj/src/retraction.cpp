#include "latmod/retraction.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace latmod {

ApproxPair approx_bounds(const FiniteDistLattice& L, const BooleanCore& core, ElementId x) {
  ElementId lo = L.bottom(), hi = L.top();
  for (ElementId b : core.members) {
    if (L.leq(b, x)) lo = L.join(lo, b);
    if (L.leq(x, b)) hi = L.meet(hi, b);
  }
  return ApproxPair{x, lo, hi};
}

std::vector<NormalForm> normal_form_sublattice(const FiniteDistLattice& L, const BooleanCore& core,
                                               ElementId x) {
  std::map<ElementId, NormalForm> best;
  for (ElementId b0 : core.members) {
    for (ElementId b1 : core.members) {
      ElementId e = L.join(L.meet(b0, x), b1);
      auto it = best.find(e);
      if (it == best.end()) {
        best.emplace(e, NormalForm{b0, b1, e});
      } else {
        // Representations of one element are closed under componentwise join,
        // so accumulating joins reaches the canonical maximum.
        NormalForm& nf = it->second;
        nf.b0 = L.join(nf.b0, b0);
        nf.b1 = L.join(nf.b1, b1);
      }
    }
  }
  std::vector<NormalForm> out;
  out.reserve(best.size());
  for (auto& [e, nf] : best) {
    if (L.join(L.meet(nf.b0, x), nf.b1) != e)
      throw Error(Errc::InternalInvariant, "canonical normal form does not denote its element", {e});
    out.push_back(nf);
  }
  return out;
}

SixCheckResult check_six_inequalities(const FiniteDistLattice& L, const BooleanCore& core,
                                      ElementId x, ElementId b0, ElementId b1, ElementId b0p,
                                      ElementId b1p, ElementId r, ElementId xminus,
                                      ElementId xplus) {
  for (ElementId b : {b0, b1, b0p, b1p, r, xminus, xplus})
    if (!core.contains(b))
      throw Error(Errc::PreconditionViolated, "argument is not a core element", {b});
  if (L.join(L.meet(b0, x), b1) != L.join(L.meet(b0p, x), b1p))
    throw Error(Errc::PreconditionViolated, "the two normal forms denote different elements",
                {b0, b1, b0p, b1p});
  if (!L.leq(xminus, r) || !L.leq(r, xplus))
    throw Error(Errc::PreconditionViolated, "r outside the approximation interval", {r});

  auto neg = [&](ElementId b) { return core.complement[b]; };
  std::array<CoreInequality, 6> ineqs = {{
      {"r <= -b0 v b0' v b1'", r, L.join(L.join(neg(b0), b0p), b1p)},
      {"b1 <= b0' v b1'", b1, L.join(b0p, b1p)},
      {"b1 ^ -b1' <= r", L.meet(b1, neg(b1p)), r},
      {"r <= -b0' v b0 v b1", r, L.join(L.join(neg(b0p), b0), b1)},
      {"b1' <= b0 v b1", b1p, L.join(b0, b1)},
      {"b1' ^ -b1 <= r", L.meet(b1p, neg(b1)), r},
  }};

  SixCheckResult res;
  res.cert.inequalities = ineqs;
  for (const CoreInequality& iq : ineqs) {
    if (!L.leq(iq.lhs, iq.rhs)) {
      res.ok = false;
      res.violated = iq;
      return res;
    }
  }
  res.ok = true;
  return res;
}

namespace {

// Closes the assigned set under meet and join, propagating values; reports a
// conflict as ExtensionFailed.
void close_partial(const FiniteDistLattice& L, std::vector<ElementId>& val) {
  std::deque<ElementId> work;
  for (int e = 0; e < L.size(); ++e)
    if (val[e] != -1) work.push_back(e);

  while (!work.empty()) {
    ElementId e = work.front();
    work.pop_front();
    for (int d = 0; d < L.size(); ++d) {
      if (val[d] == -1) continue;
      for (bool use_meet : {true, false}) {
        ElementId z = use_meet ? L.meet(e, d) : L.join(e, d);
        ElementId v = use_meet ? L.meet(val[e], val[d]) : L.join(val[e], val[d]);
        if (val[z] == -1) {
          val[z] = v;
          work.push_back(z);
        } else if (val[z] != v) {
          throw Error(Errc::ExtensionFailed,
                      "extension conflict at " + L.name(z) + ": " + L.name(val[z]) + " vs " +
                          L.name(v),
                      {z, val[z], v});
        }
      }
    }
  }
}

}  // namespace

std::vector<ElementId> extend_hom(const FiniteDistLattice& L, const BooleanCore& core,
                                  std::vector<ElementId> partial) {
  if (partial.size() != static_cast<size_t>(L.size()))
    throw Error(Errc::InternalInvariant, "partial map has wrong shape");
  for (int e = 0; e < L.size(); ++e)
    if (partial[e] != -1 && !core.contains(partial[e]))
      throw Error(Errc::PreconditionViolated, "partial map leaves the core", {e, partial[e]});
  if (partial[L.bottom()] == -1) partial[L.bottom()] = L.bottom();
  if (partial[L.top()] == -1) partial[L.top()] = L.top();

  close_partial(L, partial);  // also validates the seed is a hom on its sublattice

  while (true) {
    ElementId next = -1;
    for (int e = 0; e < L.size(); ++e)
      if (partial[e] == -1) { next = e; break; }
    if (next == -1) break;

    // Lower tie-break: the least admissible value. Each assigned pair with
    // s1 <= s2 v y forces H(s1) ^ -H(s2) <= H(y); joining all such images
    // gives the bottom of the admissible interval (s2 = bottom recovers the
    // plain join of the images below y).
    ElementId v = L.bottom();
    for (int s1 = 0; s1 < L.size(); ++s1) {
      if (partial[s1] == -1) continue;
      for (int s2 = 0; s2 < L.size(); ++s2) {
        if (partial[s2] == -1 || !L.leq(s1, L.join(s2, next))) continue;
        v = L.join(v, L.meet(partial[s1], core.complement[partial[s2]]));
      }
    }
    partial[next] = v;
    close_partial(L, partial);
  }

  if (auto bad = hom_violation(L, L, partial))
    throw Error(Errc::ExtensionFailed, "extended map is not a hom", {bad->first, bad->second});
  return partial;
}

std::vector<ElementId> build_retraction(const FiniteDistLattice& L, const BooleanCore& core,
                                        ElementId x, ElementId r) {
  ApproxPair ap = approx_bounds(L, core, x);
  if (!core.contains(r) || !L.leq(ap.lower, r) || !L.leq(r, ap.upper))
    throw Error(Errc::RangeError, "r outside [x-, x+]", {x, r});

  std::vector<ElementId> partial(L.size(), -1);
  for (ElementId b : core.members) partial[b] = b;
  for (const NormalForm& nf : normal_form_sublattice(L, core, x))
    partial[nf.denotes] = L.join(L.meet(nf.b0, r), nf.b1);

  std::vector<ElementId> map = extend_hom(L, core, partial);

  for (ElementId b : core.members)
    if (map[b] != b) throw Error(Errc::InternalInvariant, "retraction moves a core element", {b});
  if (map[x] != r) throw Error(Errc::InternalInvariant, "retraction misses r at x", {x, map[x]});
  return map;
}

RetractionUniqueness retraction_unique(const FiniteDistLattice& L, const BooleanCore& core) {
  for (int x = 0; x < L.size(); ++x) {
    ApproxPair ap = approx_bounds(L, core, x);
    if (ap.lower != ap.upper) return RetractionUniqueness{false, x};
  }
  return RetractionUniqueness{true, std::nullopt};
}

}  // namespace latmod
