#include "latmod/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace latmod {

namespace {

bool is_transitive(const Poset& P) {
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j)
      if (i != j && P.leq(i, j))
        for (int k = 0; k < P.n; ++k)
          if (j != k && P.leq(j, k) && !P.leq(i, k)) return false;
  return true;
}

std::vector<bool> permuted_rel(const Poset& P, const std::vector<int>& perm) {
  std::vector<bool> out(P.rel.size(), false);
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j)
      if (P.leq(i, j)) out[perm[i] * P.n + perm[j]] = true;
  return out;
}

std::vector<bool> canonical_rel(const Poset& P) {
  std::vector<int> perm(P.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best = permuted_rel(P, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<bool> cand = permuted_rel(P, perm);
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace

std::vector<Poset> enumerate_posets(int k) {
  if (k < 0 || k > 5) throw Error(Errc::BoundExceeded, "poset enumeration capped at 5 points");
  if (k == 0) return {Poset{0, {}}};

  // One of three states per unordered pair, then a transitivity check.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);

  std::set<std::vector<bool>> seen;
  std::vector<Poset> out;
  int combos = 1;
  for (size_t i = 0; i < pairs.size(); ++i) combos *= 3;

  for (int code = 0; code < combos; ++code) {
    Poset P{k, std::vector<bool>(static_cast<size_t>(k) * k, false)};
    for (int i = 0; i < k; ++i) P.rel[i * k + i] = true;
    int c = code;
    for (auto [i, j] : pairs) {
      int state = c % 3;
      c /= 3;
      if (state == 1) P.rel[i * k + j] = true;
      if (state == 2) P.rel[j * k + i] = true;
    }
    if (!is_transitive(P)) continue;
    auto canon = canonical_rel(P);
    if (seen.insert(canon).second) out.push_back(Poset{k, canon});
  }
  std::sort(out.begin(), out.end(), [](const Poset& a, const Poset& b) { return a.rel < b.rel; });
  return out;
}

FiniteDistLattice downset_lattice(const Poset& P) {
  std::vector<unsigned> downsets;
  for (unsigned mask = 0; mask < (1u << P.n); ++mask) {
    bool closed = true;
    for (int j = 0; j < P.n && closed; ++j)
      if (mask >> j & 1)
        for (int i = 0; i < P.n; ++i)
          if (P.leq(i, j) && !(mask >> i & 1)) { closed = false; break; }
    if (closed) downsets.push_back(mask);
  }
  std::sort(downsets.begin(), downsets.end(), [](unsigned a, unsigned b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  const int m = static_cast<int>(downsets.size());
  std::vector<std::string> names(m);
  for (int i = 0; i < m; ++i) {
    std::string nm = "{";
    bool first = true;
    for (int p = 0; p < P.n; ++p)
      if (downsets[i] >> p & 1) {
        if (!first) nm += ",";
        nm += "p" + std::to_string(p);
        first = false;
      }
    names[i] = nm + "}";
  }
  std::vector<bool> leq(static_cast<size_t>(m) * m, false);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) leq[i * m + j] = (downsets[i] & downsets[j]) == downsets[i];
  return lattice_from_leq(std::move(names), std::move(leq));
}

std::vector<FiniteDistLattice> enumerate_lattices(int n_poset_max) {
  if (n_poset_max < 0 || n_poset_max > 5)
    throw Error(Errc::BoundExceeded, "lattice enumeration capped at posets on 5 points");
  std::vector<FiniteDistLattice> out;
  for (int k = 0; k <= n_poset_max; ++k)
    for (const Poset& P : enumerate_posets(k)) out.push_back(downset_lattice(P));
  return out;
}

namespace {

// Backtracking over a meet-closed domain listed in a linear extension.
// Completeness: when position k is assigned, every pair meet is already
// assigned (linear extension), and joins landing on domain[k] are re-checked
// through join_pairs.
struct HomSearch {
  const FiniteDistLattice& L;
  const FiniteDistLattice& B;
  std::vector<ElementId> domain;                  // linear extension order
  std::vector<ElementId> codomain;                // allowed values, ascending
  std::vector<ElementId> constraint;              // L-indexed, -1 free
  const std::vector<ElementId>* lower = nullptr;  // L-indexed or null
  std::vector<std::vector<std::pair<ElementId, ElementId>>> join_pairs;  // L-indexed
  std::vector<ElementId> map;                     // L-indexed, -1 unassigned
  std::vector<std::vector<ElementId>> results;

  void prepare() {
    std::sort(domain.begin(), domain.end(), [&](ElementId a, ElementId b) {
      int da = static_cast<int>(L.downset(a).size());
      int db = static_cast<int>(L.downset(b).size());
      return da != db ? da < db : a < b;
    });
    join_pairs.assign(L.size(), {});
    for (size_t i = 0; i < domain.size(); ++i)
      for (size_t j = i; j < domain.size(); ++j) {
        ElementId z = L.join(domain[i], domain[j]);
        if (z != domain[i] && z != domain[j]) join_pairs[z].emplace_back(domain[i], domain[j]);
      }
    map.assign(L.size(), -1);
  }

  bool consistent_at(size_t k) {
    ElementId e = domain[k];
    for (size_t i = 0; i < k; ++i) {
      ElementId d = domain[i];
      ElementId m = L.meet(d, e);
      if (map[m] != B.meet(map[d], map[e])) return false;
      ElementId j = L.join(d, e);
      if (map[j] != -1 && map[j] != B.join(map[d], map[e])) return false;
    }
    for (auto [a, b] : join_pairs[e])
      if (map[a] != -1 && map[b] != -1 && map[e] != B.join(map[a], map[b])) return false;
    return true;
  }

  void run(size_t k) {
    if (k == domain.size()) {
      results.push_back(map);
      return;
    }
    ElementId e = domain[k];
    for (ElementId v : codomain) {
      if (constraint[e] != -1 && constraint[e] != v) continue;
      if (lower && !B.leq((*lower)[e], v)) continue;
      map[e] = v;
      if (consistent_at(k)) run(k + 1);
      map[e] = -1;
    }
  }
};

std::vector<std::vector<ElementId>> search_homs(const FiniteDistLattice& L,
                                                const std::vector<ElementId>& domain,
                                                const FiniteDistLattice& B,
                                                const std::vector<ElementId>& codomain,
                                                std::vector<ElementId> constraint,
                                                const std::vector<ElementId>* lower) {
  HomSearch s{L, B, domain, codomain, std::move(constraint), lower, {}, {}, {}};
  s.prepare();
  s.run(0);
  return std::move(s.results);
}

std::vector<ElementId> full_range(int n) {
  std::vector<ElementId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Pins bottom and top; returns false when that conflicts with an existing
// entry (e.g. a one-element source into a larger target).
bool pin_bounds(std::vector<ElementId>& con, const FiniteDistLattice& source,
                const FiniteDistLattice& target) {
  for (auto [p, v] : {std::pair{source.bottom(), target.bottom()},
                      std::pair{source.top(), target.top()}}) {
    if (con[p] == -1) con[p] = v;
    else if (con[p] != v) return false;
  }
  return true;
}

}  // namespace

std::vector<LatticeHom> enumerate_homs(const FiniteDistLattice& source,
                                       const FiniteDistLattice& target,
                                       const std::vector<ElementId>& constraint, int bound) {
  if (source.size() > bound)
    throw Error(Errc::BoundExceeded, "hom enumeration source exceeds bound");
  std::vector<ElementId> con(source.size(), -1);
  if (!constraint.empty()) {
    if (constraint.size() != static_cast<size_t>(source.size()))
      throw Error(Errc::InternalInvariant, "constraint has wrong shape");
    con = constraint;
  }
  if (!pin_bounds(con, source, target)) return {};
  auto raw = search_homs(source, full_range(source.size()), target, full_range(target.size()),
                         std::move(con), nullptr);
  std::vector<LatticeHom> out;
  out.reserve(raw.size());
  for (auto& m : raw) out.push_back(LatticeHom{std::move(m)});
  std::sort(out.begin(), out.end(),
            [](const LatticeHom& a, const LatticeHom& b) { return a.map < b.map; });
  return out;
}

std::vector<LatticeHom> enumerate_homs_above(const FiniteDistLattice& source,
                                             const FiniteDistLattice& target,
                                             const std::vector<ElementId>& lower, int bound) {
  if (source.size() > bound)
    throw Error(Errc::BoundExceeded, "hom enumeration source exceeds bound");
  std::vector<ElementId> con(source.size(), -1);
  if (!pin_bounds(con, source, target)) return {};
  auto raw = search_homs(source, full_range(source.size()), target, full_range(target.size()),
                         std::move(con), &lower);
  std::vector<LatticeHom> out;
  out.reserve(raw.size());
  for (auto& m : raw) out.push_back(LatticeHom{std::move(m)});
  std::sort(out.begin(), out.end(),
            [](const LatticeHom& a, const LatticeHom& b) { return a.map < b.map; });
  return out;
}

std::vector<std::vector<ElementId>> enumerate_downset_homs(const FiniteDistLattice& source,
                                                           ElementId x,
                                                           const FiniteDistLattice& target,
                                                           ElementId b) {
  std::vector<ElementId> con(source.size(), -1);
  con[x] = b;
  if (con[source.bottom()] == -1) con[source.bottom()] = target.bottom();
  else if (con[source.bottom()] != target.bottom()) return {};
  auto out = search_homs(source, source.downset(x), target, target.downset(b), std::move(con),
                         nullptr);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace latmod
