#include "latmod/models.hpp"

#include <algorithm>

#include "latmod/enumerate.hpp"
#include "latmod/retraction.hpp"

namespace latmod {

namespace {

ElementId lower_approx(const FiniteDistLattice& L, const BooleanCore& core, ElementId u) {
  ElementId lo = L.bottom();
  for (ElementId b : core.members)
    if (L.leq(b, u)) lo = L.join(lo, b);
  return lo;
}

/// Largest v <= x disjoint from u; the disjoint candidates are closed under
/// join, so this single element carries all of them.
ElementId largest_disjoint_below(const FiniteDistLattice& K, ElementId u, ElementId x) {
  ElementId acc = K.bottom();
  for (int v = 0; v < K.size(); ++v)
    if (K.leq(v, x) && K.meet(v, u) == K.bottom()) acc = K.join(acc, v);
  return acc;
}

}  // namespace

SheafModel make_model(FiniteDistLattice source, FiniteDistLattice target,
                      std::vector<ElementId> map) {
  if (!is_boolean(target)) throw Error(Errc::NotBoolean, "model target is not Boolean");
  if (auto bad = hom_violation(source, target, map))
    throw Error(Errc::NotAHom, "model map is not a bounded-lattice hom",
                {bad->first, bad->second});
  return SheafModel{std::move(source), std::move(target), std::move(map)};
}

bool is_canonical(const SheafModel& M) {
  BooleanCore core = boolean_core(M.source);
  if (core.members.size() != static_cast<size_t>(M.target.size())) return false;
  std::vector<bool> hit(M.target.size(), false);
  for (ElementId b : core.members) {
    if (hit[M.map[b]]) return false;
    hit[M.map[b]] = true;
  }
  for (int u = 0; u < M.source.size(); ++u)
    if (M.map[u] != M.map[lower_approx(M.source, core, u)]) return false;
  return true;
}

Filter gamma_filter(const SheafModel& M) {
  std::vector<ElementId> members;
  for (int u = 0; u < M.source.size(); ++u)
    if (M.map[u] == M.target.top()) members.push_back(u);
  return make_filter(M.source, members);
}

QuotientLattice l1_quotient(const FiniteDistLattice& K, const Filter& F) {
  const int n = K.size();
  auto related = [&](ElementId a, ElementId b) {
    for (ElementId x : F.members)
      if (K.meet(x, a) == K.meet(x, b)) return true;
    return false;
  };

  std::vector<int> class_of(n, -1);
  std::vector<ElementId> rep_of;
  for (int u = 0; u < n; ++u) {
    if (class_of[u] != -1) continue;
    int c = static_cast<int>(rep_of.size());
    class_of[u] = c;
    rep_of.push_back(u);
    for (int v = u + 1; v < n; ++v)
      if (class_of[v] == -1 && related(u, v)) class_of[v] = c;
  }

  // The witness condition is transitive (meet the witnesses), so classes are
  // already consistent; a violation would be an arithmetic bug.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((class_of[a] == class_of[b]) != related(a, b))
        throw Error(Errc::InternalInvariant, "quotient relation is not an equivalence", {a, b});

  const int m = static_cast<int>(rep_of.size());
  std::vector<std::string> names(m);
  std::vector<bool> leq(static_cast<size_t>(m) * m, false);
  for (int i = 0; i < m; ++i) {
    names[i] = "[" + K.name(rep_of[i]) + "]";
    for (int j = 0; j < m; ++j)
      leq[i * m + j] = related(K.meet(rep_of[i], rep_of[j]), rep_of[i]);
  }

  QuotientLattice Q;
  Q.lattice = lattice_from_leq(std::move(names), std::move(leq));
  Q.filter = F;
  Q.class_of = std::move(class_of);
  Q.rep_of = std::move(rep_of);

  if (auto bad = hom_violation(K, Q.lattice, Q.class_of))
    throw Error(Errc::InternalInvariant, "quotient projection is not a hom",
                {bad->first, bad->second});
  return Q;
}

std::variant<SheafModel, CanonicalDiagnostic> canonical_model(const FiniteDistLattice& K) {
  BooleanCore core = boolean_core(K);
  std::vector<ElementId> low(K.size());
  for (int u = 0; u < K.size(); ++u) low[u] = lower_approx(K, core, u);

  for (int u = 0; u < K.size(); ++u)
    for (int v = 0; v < K.size(); ++v)
      if (low[K.join(u, v)] != K.join(low[u], low[v])) return CanonicalDiagnostic{u, v};

  FiniteDistLattice B = core_as_lattice(K, core);
  std::vector<ElementId> map(K.size());
  for (int u = 0; u < K.size(); ++u) map[u] = core.member_index[low[u]];
  return make_model(K, std::move(B), std::move(map));
}

LatticeHom psi_embed(const FiniteDistLattice& K, const BooleanCore& core,
                     const QuotientLattice& Q) {
  FiniteDistLattice B = core_as_lattice(K, core);
  std::vector<ElementId> psi(B.size());
  for (int i = 0; i < B.size(); ++i) psi[i] = Q.class_of[core.members[i]];

  if (auto bad = hom_violation(B, Q.lattice, psi))
    throw Error(Errc::InvariantViolated, "psi is not a hom", {bad->first, bad->second});
  for (int i = 0; i < B.size(); ++i)
    for (int j = i + 1; j < B.size(); ++j)
      if (psi[i] == psi[j])
        throw Error(Errc::InvariantViolated, "psi identifies distinct core elements",
                    {core.members[i], core.members[j]});

  BooleanCore qcore = boolean_core(Q.lattice);
  std::vector<ElementId> image(psi.begin(), psi.end());
  std::sort(image.begin(), image.end());
  if (image != qcore.members)
    throw Error(Errc::InvariantViolated, "psi image differs from the complemented core");

  // The filter of a canonical model is {top}, so the projection must be an
  // isomorphism onto the base lattice.
  if (Q.lattice.size() != K.size())
    throw Error(Errc::InvariantViolated, "quotient is not isomorphic to the base");

  return LatticeHom{std::move(psi)};
}

TypeSpaceSlice type_space(const FiniteDistLattice& K, const FiniteDistLattice& B, ElementId x,
                          int bound) {
  if (static_cast<int>(K.downset(x).size()) > bound || B.size() > bound)
    throw Error(Errc::BoundExceeded, "type space slice exceeds bound");

  TypeSpaceSlice slice;
  slice.x = x;
  slice.homs_at.resize(B.size());
  for (int b = 0; b < B.size(); ++b) slice.homs_at[b] = enumerate_downset_homs(K, x, B, b);

  // Finite gluing over binary covers b = b1 v b2: matching pairs glue to a
  // unique hom at b.
  auto find_hom = [&](ElementId b, const std::vector<ElementId>& h) {
    const auto& v = slice.homs_at[b];
    auto it = std::find(v.begin(), v.end(), h);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
  };
  auto restrict_to = [&](const std::vector<ElementId>& h, ElementId bp) {
    std::vector<ElementId> out(h.size(), -1);
    for (size_t u = 0; u < h.size(); ++u)
      if (h[u] != -1) out[u] = B.meet(h[u], bp);
    return out;
  };
  for (int b = 0; b < B.size(); ++b) {
    for (int b1 = 0; b1 < B.size(); ++b1) {
      for (int b2 = b1; b2 < B.size(); ++b2) {
        if (B.join(b1, b2) != b) continue;
        ElementId b12 = B.meet(b1, b2);
        for (const auto& h1 : slice.homs_at[b1]) {
          for (const auto& h2 : slice.homs_at[b2]) {
            if (restrict_to(h1, b12) != restrict_to(h2, b12)) continue;
            std::vector<ElementId> glued(h1.size(), -1);
            for (size_t u = 0; u < h1.size(); ++u)
              if (h1[u] != -1) glued[u] = B.join(h1[u], h2[u]);
            int idx = find_hom(b, glued);
            if (idx < 0 || restrict_to(glued, b1) != h1 || restrict_to(glued, b2) != h2)
              throw Error(Errc::InternalInvariant, "gluing failed over a binary cover", {b, b1, b2});
            int matches = 0;
            for (const auto& h : slice.homs_at[b])
              if (restrict_to(h, b1) == h1 && restrict_to(h, b2) == h2) ++matches;
            if (matches != 1)
              throw Error(Errc::InternalInvariant, "glued section is not unique", {b, b1, b2});
          }
        }
      }
    }
  }
  return slice;
}

int type_space_restrict(const TypeSpaceSlice& slice, const FiniteDistLattice& B, ElementId b,
                        ElementId bp, int i) {
  if (!B.leq(bp, b)) throw Error(Errc::PreconditionViolated, "not a restriction level", {bp, b});
  const auto& h = slice.homs_at[b][i];
  std::vector<ElementId> r(h.size(), -1);
  for (size_t u = 0; u < h.size(); ++u)
    if (h[u] != -1) r[u] = B.meet(h[u], bp);
  const auto& v = slice.homs_at[bp];
  auto it = std::find(v.begin(), v.end(), r);
  if (it == v.end())
    throw Error(Errc::InternalInvariant, "restriction left the type space", {b, bp});
  return static_cast<int>(it - v.begin());
}

std::vector<ElementId> type_space_action(const FiniteDistLattice& K, ElementId x, ElementId y,
                                         const std::vector<ElementId>& hom_at_x) {
  if (!K.leq(x, y)) throw Error(Errc::PreconditionViolated, "not comparable", {x, y});
  std::vector<ElementId> out(K.size(), -1);
  for (int v = 0; v < K.size(); ++v)
    if (K.leq(v, y)) out[v] = hom_at_x[K.meet(v, x)];
  return out;
}

std::vector<ElementId> tp(const SheafModel& M, ElementId x, ElementId b) {
  if (!M.target.leq(b, M.map[x]))
    throw Error(Errc::NoSection, "no section over this level", {x, b});
  std::vector<ElementId> out(M.source.size(), -1);
  for (int u = 0; u < M.source.size(); ++u)
    if (M.source.leq(u, x)) out[u] = M.target.meet(b, M.map[u]);
  return out;
}

std::vector<NatTransTable> enumerate_nat_trans(const SheafModel& M, int bound) {
  const FiniteDistLattice& K = M.source;
  const FiniteDistLattice& B = M.target;
  if (K.size() > bound) throw Error(Errc::BoundExceeded, "nat trans enumeration exceeds bound");

  std::vector<std::vector<std::vector<ElementId>>> choices(K.size());
  for (int x = 0; x < K.size(); ++x) choices[x] = enumerate_downset_homs(K, x, B, M.map[x]);

  std::vector<NatTransTable> out;
  NatTransTable cur;
  cur.h.assign(K.size(), {});

  auto compatible = [&](int x, int y) {
    // Naturality along the comparabilities of x with already chosen y.
    int lo = K.leq(x, y) ? x : (K.leq(y, x) ? y : -1);
    if (lo == -1) return true;
    int hi = lo == x ? y : x;
    for (int v = 0; v < K.size(); ++v)
      if (K.leq(v, hi) && cur.h[lo][K.meet(v, lo)] != B.meet(cur.h[hi][v], M.map[lo]))
        return false;
    return true;
  };

  auto rec = [&](auto&& self, int x) -> void {
    if (x == K.size()) {
      out.push_back(cur);
      return;
    }
    for (const auto& h : choices[x]) {
      cur.h[x] = h;
      bool ok = true;
      for (int y = 0; y < x && ok; ++y) ok = compatible(x, y);
      if (ok) self(self, x + 1);
    }
    cur.h[x] = {};
  };
  rec(rec, 0);
  return out;
}

std::vector<ModelNatTrans> enumerate_nat_trans(const SheafModel& M, const SheafModel& N) {
  if (!M.source.same_shape(N.source) || !M.target.same_shape(N.target))
    throw Error(Errc::SourceMismatch, "models live over different lattices");
  for (int u = 0; u < M.source.size(); ++u)
    if (!M.target.leq(M.map[u], N.map[u])) return {};
  return {ModelNatTrans{}};
}

ElementaryCheck is_elementary(const SheafModel& M, const SheafModel& N) {
  if (enumerate_nat_trans(M, N).empty())
    throw Error(Errc::PreconditionViolated, "no natural transformation: M is not below N");
  for (int x = 0; x < M.source.size(); ++x)
    for (int u = 0; u < M.source.size(); ++u)
      if (M.source.leq(u, x) && M.target.meet(N.map[u], M.map[x]) != M.map[u])
        return ElementaryCheck{false, std::make_pair(u, x)};
  return ElementaryCheck{true, std::nullopt};
}

std::vector<ElementId> nat_trans_component(const SheafModel& M, const NatTransTable& t,
                                           ElementId x, ElementId b) {
  if (!M.target.leq(b, M.map[x]))
    throw Error(Errc::NoSection, "no section over this level", {x, b});
  std::vector<ElementId> out(M.source.size(), -1);
  for (int u = 0; u < M.source.size(); ++u)
    if (M.source.leq(u, x)) out[u] = M.target.meet(t.h[x][u], b);
  return out;
}

bool tp_minimality_check(const SheafModel& M, int bound) {
  const FiniteDistLattice& K = M.source;
  const FiniteDistLattice& B = M.target;
  for (const NatTransTable& beta : enumerate_nat_trans(M, bound)) {
    for (int x = 0; x < K.size(); ++x)
      for (int b = 0; b < B.size(); ++b) {
        if (!B.leq(b, M.map[x])) continue;
        std::vector<ElementId> level = nat_trans_component(M, beta, x, b);
        std::vector<ElementId> tp_level = tp(M, x, b);
        for (int u = 0; u < K.size(); ++u)
          if (K.leq(u, x) && !B.leq(tp_level[u], level[u])) return false;
      }
  }
  return true;
}

bool elem_iff_tp_check(const SheafModel& M, const SheafModel& N) {
  bool elementary = is_elementary(M, N).elementary;
  bool tp_commutes = true;
  for (int x = 0; x < M.source.size() && tp_commutes; ++x)
    for (int b = 0; b < M.target.size() && tp_commutes; ++b) {
      if (!M.target.leq(b, M.map[x])) continue;
      for (int u = 0; u < M.source.size(); ++u) {
        if (!M.source.leq(u, x)) continue;
        if (M.target.meet(N.map[u], b) != M.target.meet(M.map[u], b)) {
          tp_commutes = false;
          break;
        }
      }
    }
  return elementary == tp_commutes;
}

StronglyClosedResult strongly_positively_closed(const SheafModel& M) {
  const FiniteDistLattice& K = M.source;
  const FiniteDistLattice& B = M.target;
  StronglyClosedResult res;
  res.verdict = true;

  for (int x = 0; x < K.size() && res.verdict; ++x) {
    for (int u = 0; u < K.size() && res.verdict; ++u) {
      if (!K.leq(u, x)) continue;
      ElementId vstar = largest_disjoint_below(K, u, x);
      ElementId reach = B.join(M.map[u], M.map[vstar]);
      for (int b = 0; b < B.size(); ++b) {
        if (!B.leq(b, M.map[x])) continue;
        if (!B.leq(b, reach)) {
          res.verdict = false;
          res.witness = StrongSplitWitness{u, x, b};
          break;
        }
      }
    }
  }

  if (is_canonical(M)) {
    QuotientLattice Q = l1_quotient(K, gamma_filter(M));
    res.quotient_route = is_boolean(Q.lattice);
    res.l1_size = Q.lattice.size();
    res.cross_check_mismatch = (*res.quotient_route != res.verdict);
  }
  return res;
}

PositivelyClosedResult positively_closed(const SheafModel& M, int bound, int routes) {
  const FiniteDistLattice& K = M.source;
  const FiniteDistLattice& B = M.target;
  PositivelyClosedResult res;

  if (routes & RouteDefinition) {
    bool ok = true;
    for (const LatticeHom& N : enumerate_homs_above(K, B, M.map, bound)) {
      SheafModel NM{K, B, N.map};
      ElementaryCheck ec = is_elementary(M, NM);
      if (!ec.elementary) {
        ok = false;
        res.counter = PositivelyClosedCounter{N.map, ec.witness->first, ec.witness->second};
        break;
      }
    }
    res.definition_route = ok;
  }

  if (routes & RouteLocal) {
    BooleanCore bcore = boolean_core(B);
    bool ok = true;
    for (int x = 0; x < K.size() && ok; ++x)
      for (int u = 0; u < K.size(); ++u) {
        if (!K.leq(u, x)) continue;
        ElementId vstar = largest_disjoint_below(K, u, x);
        ElementId lhs = B.meet(M.map[x], bcore.complement[M.map[u]]);
        ElementId rhs = B.meet(M.map[x], M.map[vstar]);
        if (lhs != rhs) {
          ok = false;
          res.local_witness = std::make_pair(u, x);
          break;
        }
      }
    res.local_route = ok;
  }

  if ((routes & RouteRetraction) && is_canonical(M)) {
    RetractionUniqueness ru = retraction_unique(K, boolean_core(K));
    res.retraction_route = ru.unique;
    res.retraction_witness = ru.witness;
  }

  if (res.definition_route) res.verdict = *res.definition_route;
  else if (res.local_route) res.verdict = *res.local_route;
  else if (res.retraction_route) res.verdict = *res.retraction_route;

  auto compare = [&](const std::optional<bool>& a, const std::optional<bool>& b,
                     const char* label) {
    if (a && b && *a != *b) res.mismatches.push_back(label);
  };
  compare(res.definition_route, res.local_route, "definition/local");
  compare(res.definition_route, res.retraction_route, "definition/retraction");
  compare(res.local_route, res.retraction_route, "local/retraction");
  return res;
}

SheafModel product_model(const std::vector<SheafModel>& prime_models, int k_bound) {
  const int k = static_cast<int>(prime_models.size());
  if (k == 0 || k > k_bound)
    throw Error(Errc::BoundExceeded, "product model arity out of range");
  const FiniteDistLattice& K = prime_models[0].source;
  for (const SheafModel& Mj : prime_models) {
    if (!Mj.source.same_shape(K))
      throw Error(Errc::SourceMismatch, "product factors have different sources");
    if (Mj.target.size() != 2)
      throw Error(Errc::SourceMismatch, "product factors must be two-valued");
  }

  FiniteDistLattice B = boolean_lattice(k);
  std::vector<ElementId> map(K.size(), 0);
  for (int u = 0; u < K.size(); ++u) {
    int mask = 0;
    for (int j = 0; j < k; ++j)
      if (prime_models[j].map[u] == prime_models[j].target.top()) mask |= 1 << j;
    map[u] = mask;  // boolean_lattice indexes elements by subset mask
  }

  // Membership law: J is in M(u) iff every factor in J sends u to top.
  for (int u = 0; u < K.size(); ++u)
    for (int J = 0; J < (1 << k); ++J) {
      bool all = true;
      for (int j = 0; j < k; ++j)
        if ((J >> j & 1) && prime_models[j].map[u] != prime_models[j].target.top()) all = false;
      if (B.leq(J, map[u]) != all)
        throw Error(Errc::InternalInvariant, "product membership law violated", {u, J});
    }

  return make_model(K, std::move(B), std::move(map));
}

SheafModel realize_type(const FiniteDistLattice& K, const Filter& p) {
  if (p.contains(K.bottom())) throw Error(Errc::Inconsistent, "filter contains bottom");

  ElementId base = K.meet_all(p.members);
  while (true) {
    auto in = [&](ElementId e) { return K.leq(base, e); };
    ElementId cx = -1, cy = -1;
    for (int x = 0; x < K.size() && cx == -1; ++x)
      for (int y = x; y < K.size(); ++y)
        if (in(K.join(x, y)) && !in(x) && !in(y)) {
          cx = x;
          cy = y;
          break;
        }
    if (cx == -1) break;
    // Keep the lowest-indexed component that keeps the filter proper; at
    // least one of the two always does.
    if (K.meet(base, cx) != K.bottom()) base = K.meet(base, cx);
    else if (K.meet(base, cy) != K.bottom()) base = K.meet(base, cy);
    else
      throw Error(Errc::InternalInvariant, "both join components inconsistent", {cx, cy});
  }

  FiniteDistLattice two = boolean_lattice(1);
  std::vector<ElementId> map(K.size());
  for (int u = 0; u < K.size(); ++u) map[u] = K.leq(base, u) ? two.top() : two.bottom();
  return make_model(K, std::move(two), std::move(map));
}

}  // namespace latmod
