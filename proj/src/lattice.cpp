#include "latmod/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace latmod {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotAPoset: return "NotAPoset";
    case Errc::NotALattice: return "NotALattice";
    case Errc::NotDistributive: return "NotDistributive";
    case Errc::NotBoolean: return "NotBoolean";
    case Errc::NotAFilter: return "NotAFilter";
    case Errc::NotAHom: return "NotAHom";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::RangeError: return "RangeError";
    case Errc::ExtensionFailed: return "ExtensionFailed";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::SourceMismatch: return "SourceMismatch";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::NoSection: return "NoSection";
    case Errc::ParseError: return "ParseError";
    case Errc::InvariantViolated: return "InvariantViolated";
    case Errc::CertificateFailed: return "CertificateFailed";
    case Errc::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

std::optional<ElementId> FiniteDistLattice::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

ElementId FiniteDistLattice::meet_all(const std::vector<ElementId>& xs) const {
  ElementId acc = top_;
  for (ElementId x : xs) acc = meet(acc, x);
  return acc;
}

ElementId FiniteDistLattice::join_all(const std::vector<ElementId>& xs) const {
  ElementId acc = bottom_;
  for (ElementId x : xs) acc = join(acc, x);
  return acc;
}

std::vector<ElementId> FiniteDistLattice::downset(ElementId x) const {
  std::vector<ElementId> out;
  for (int u = 0; u < size(); ++u)
    if (leq(u, x)) out.push_back(u);
  return out;
}

std::vector<ElementId> FiniteDistLattice::upset(ElementId x) const {
  std::vector<ElementId> out;
  for (int u = 0; u < size(); ++u)
    if (leq(x, u)) out.push_back(u);
  return out;
}

bool FiniteDistLattice::same_shape(const FiniteDistLattice& other) const {
  return names_ == other.names_ && leq_ == other.leq_;
}

FiniteDistLattice lattice_from_leq(std::vector<std::string> names, std::vector<bool> leq) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw Error(Errc::NotALattice, "a lattice needs at least one element");
  if (leq.size() != static_cast<size_t>(n) * n)
    throw Error(Errc::InternalInvariant, "order table has wrong shape");

  {
    std::set<std::string> seen;
    for (const auto& nm : names)
      if (!seen.insert(nm).second)
        throw Error(Errc::DuplicateName, "duplicate element name: " + nm);
  }

  FiniteDistLattice L;
  L.names_ = std::move(names);
  L.leq_ = std::move(leq);
  L.meet_.assign(static_cast<size_t>(n) * n, -1);
  L.join_.assign(static_cast<size_t>(n) * n, -1);

  auto at = [&](int x, int y) -> bool { return L.leq_[x * n + y]; };

  for (int x = 0; x < n; ++x)
    if (!at(x, x)) throw Error(Errc::NotAPoset, "order not reflexive at " + L.names_[x], {x});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && at(x, y) && at(y, x))
        throw Error(Errc::NotAPoset,
                    "order not antisymmetric on " + L.names_[x] + ", " + L.names_[y], {x, y});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (at(x, y))
        for (int z = 0; z < n; ++z)
          if (at(y, z) && !at(x, z))
            throw Error(
                Errc::NotAPoset,
                "order not transitive on " + L.names_[x] + " <= " + L.names_[y] + " <= " + L.names_[z],
                {x, y, z});

  // Greatest lower / least upper bounds; both must exist and be unique.
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      ElementId m = -1;
      for (int z = 0; z < n; ++z) {
        if (!at(z, x) || !at(z, y)) continue;
        if (m == -1 || at(m, z)) m = z;
      }
      if (m != -1) {
        for (int z = 0; z < n; ++z)
          if (at(z, x) && at(z, y) && !at(z, m)) { m = -1; break; }
      }
      if (m == -1)
        throw Error(Errc::NotALattice, "no meet of " + L.names_[x] + " and " + L.names_[y], {x, y});
      L.meet_[x * n + y] = m;

      ElementId j = -1;
      for (int z = 0; z < n; ++z) {
        if (!at(x, z) || !at(y, z)) continue;
        if (j == -1 || at(z, j)) j = z;
      }
      if (j != -1) {
        for (int z = 0; z < n; ++z)
          if (at(x, z) && at(y, z) && !at(j, z)) { j = -1; break; }
      }
      if (j == -1)
        throw Error(Errc::NotALattice, "no join of " + L.names_[x] + " and " + L.names_[y], {x, y});
      L.join_[x * n + y] = j;
    }
  }

  for (int z = 0; z < n; ++z) {
    bool bot = true, top = true;
    for (int x = 0; x < n; ++x) {
      bot = bot && at(z, x);
      top = top && at(x, z);
    }
    if (bot) L.bottom_ = z;
    if (top) L.top_ = z;
  }
  if (L.bottom_ == -1 || L.top_ == -1)
    throw Error(Errc::NotALattice, "missing bottom or top");

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)))
          throw Error(Errc::NotDistributive,
                      "distributivity fails on " + L.names_[x] + ", " + L.names_[y] + ", " + L.names_[z],
                      {x, y, z});

  return L;
}

FiniteDistLattice build_lattice(const std::vector<std::string>& names,
                                const std::vector<std::pair<std::string, std::string>>& pairs,
                                bool transitive_closure) {
  const int n = static_cast<int>(names.size());
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(names[i], i).second)
      throw Error(Errc::DuplicateName, "duplicate element name: " + names[i]);
  }

  std::vector<bool> leq(static_cast<size_t>(n) * n, false);
  for (int i = 0; i < n; ++i) leq[i * n + i] = true;
  for (const auto& [a, b] : pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw Error(Errc::UnknownElement, "unknown element: " + a);
    if (ib == index.end()) throw Error(Errc::UnknownElement, "unknown element: " + b);
    leq[ia->second * n + ib->second] = true;
  }

  if (transitive_closure) {
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (leq[i * n + k])
          for (int j = 0; j < n; ++j)
            if (leq[k * n + j]) leq[i * n + j] = true;
  }

  return lattice_from_leq(names, std::move(leq));
}

ElementId lattice_op(const FiniteDistLattice& L, LatticeOpKind kind, ElementId x, ElementId y) {
  switch (kind) {
    case LatticeOpKind::Meet: return L.meet(x, y);
    case LatticeOpKind::Join: return L.join(x, y);
    case LatticeOpKind::Leq: return L.leq(x, y) ? L.top() : L.bottom();
  }
  throw Error(Errc::InternalInvariant, "bad op kind");
}

std::optional<ElementId> complement_of(const FiniteDistLattice& L, ElementId x) {
  for (int c = 0; c < L.size(); ++c)
    if (L.meet(x, c) == L.bottom() && L.join(x, c) == L.top()) return c;
  return std::nullopt;
}

BooleanCore boolean_core(const FiniteDistLattice& L) {
  BooleanCore core;
  core.complement.assign(L.size(), -1);
  core.member_index.assign(L.size(), -1);
  for (int x = 0; x < L.size(); ++x) {
    if (auto c = complement_of(L, x)) {
      core.complement[x] = *c;
      core.member_index[x] = static_cast<int>(core.members.size());
      core.members.push_back(x);
    }
  }
  // Closure properties; a failure here would signal a distributivity bug.
  for (ElementId a : core.members) {
    if (core.complement[core.complement[a]] != a)
      throw Error(Errc::InternalInvariant, "complement is not involutive", {a});
    for (ElementId b : core.members) {
      if (!core.contains(L.meet(a, b)) || !core.contains(L.join(a, b)))
        throw Error(Errc::InternalInvariant, "core not closed under meet/join", {a, b});
    }
  }
  if (!core.contains(L.bottom()) || !core.contains(L.top()))
    throw Error(Errc::InternalInvariant, "core misses a bound");
  return core;
}

FiniteDistLattice core_as_lattice(const FiniteDistLattice& L, const BooleanCore& core) {
  const int k = static_cast<int>(core.members.size());
  std::vector<std::string> names(k);
  std::vector<bool> leq(static_cast<size_t>(k) * k, false);
  for (int i = 0; i < k; ++i) {
    names[i] = L.name(core.members[i]);
    for (int j = 0; j < k; ++j) leq[i * k + j] = L.leq(core.members[i], core.members[j]);
  }
  return lattice_from_leq(std::move(names), std::move(leq));
}

FiniteDistLattice boolean_lattice(int k) {
  const int n = 1 << k;
  std::vector<std::string> names(n);
  for (int s = 0; s < n; ++s) {
    std::string nm = "{";
    bool first = true;
    for (int j = 0; j < k; ++j)
      if (s & (1 << j)) {
        if (!first) nm += ",";
        nm += std::to_string(j + 1);
        first = false;
      }
    nm += "}";
    names[s] = nm;
  }
  std::vector<bool> leq(static_cast<size_t>(n) * n, false);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a * n + b] = (a & b) == a;
  return lattice_from_leq(std::move(names), std::move(leq));
}

bool is_boolean(const FiniteDistLattice& L) {
  for (int x = 0; x < L.size(); ++x)
    if (!complement_of(L, x)) return false;
  return true;
}

bool Filter::contains(ElementId x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

Filter make_filter(const FiniteDistLattice& L, std::vector<ElementId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Filter f{std::move(members), false};
  if (!f.contains(L.top())) throw Error(Errc::NotAFilter, "filter misses top");
  for (ElementId x : f.members) {
    for (ElementId y : f.members)
      if (!f.contains(L.meet(x, y)))
        throw Error(Errc::NotAFilter, "filter not meet-closed", {x, y});
    for (int y = 0; y < L.size(); ++y)
      if (L.leq(x, y) && !f.contains(y))
        throw Error(Errc::NotAFilter, "filter not upward closed", {x, y});
  }
  f.prime = !f.contains(L.bottom());
  if (f.prime) {
    for (int x = 0; x < L.size() && f.prime; ++x)
      for (int y = 0; y < L.size() && f.prime; ++y)
        if (f.contains(L.join(x, y)) && !f.contains(x) && !f.contains(y)) f.prime = false;
  }
  return f;
}

std::optional<Filter> generated_filter(const FiniteDistLattice& L,
                                       const std::vector<ElementId>& gens) {
  ElementId base = L.meet_all(gens);
  if (base == L.bottom() && L.bottom() != L.top()) return std::nullopt;
  return make_filter(L, L.upset(base));
}

std::vector<Filter> prime_filters(const FiniteDistLattice& L) {
  // Prime filters of a finite distributive lattice are exactly the principal
  // upsets of join-prime (= join-irreducible) elements.
  std::vector<Filter> out;
  for (int a = 0; a < L.size(); ++a) {
    if (a == L.bottom()) continue;
    bool join_prime = true;
    for (int x = 0; x < L.size() && join_prime; ++x)
      for (int y = 0; y < L.size() && join_prime; ++y)
        if (L.leq(a, L.join(x, y)) && !L.leq(a, x) && !L.leq(a, y)) join_prime = false;
    if (join_prime) out.push_back(make_filter(L, L.upset(a)));
  }
  std::sort(out.begin(), out.end(), [](const Filter& p, const Filter& q) {
    return p.members < q.members;
  });
  return out;
}

bool priestley_leq(const Filter& p, const Filter& q) {
  return std::includes(q.members.begin(), q.members.end(), p.members.begin(), p.members.end());
}

std::vector<Filter> all_filters(const FiniteDistLattice& L) {
  if (L.size() > 16) throw Error(Errc::BoundExceeded, "filter enumeration capped at 16 elements");
  std::vector<Filter> out;
  const int n = L.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> L.top() & 1)) continue;
    std::vector<ElementId> members;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) members.push_back(i);
    bool ok = true;
    for (ElementId x : members) {
      for (ElementId y : members)
        if (!(mask >> L.meet(x, y) & 1)) { ok = false; break; }
      if (!ok) break;
      for (int y = 0; y < n; ++y)
        if (L.leq(x, y) && !(mask >> y & 1)) { ok = false; break; }
      if (!ok) break;
    }
    if (ok) out.push_back(make_filter(L, members));
  }
  return out;
}

std::optional<std::pair<ElementId, ElementId>> hom_violation(const FiniteDistLattice& source,
                                                             const FiniteDistLattice& target,
                                                             const std::vector<ElementId>& map) {
  if (map[source.bottom()] != target.bottom() || map[source.top()] != target.top())
    return std::make_pair(source.bottom(), source.top());
  for (int x = 0; x < source.size(); ++x)
    for (int y = 0; y < source.size(); ++y) {
      if (map[source.meet(x, y)] != target.meet(map[x], map[y])) return std::make_pair(x, y);
      if (map[source.join(x, y)] != target.join(map[x], map[y])) return std::make_pair(x, y);
    }
  return std::nullopt;
}

bool is_hom(const FiniteDistLattice& source, const FiniteDistLattice& target,
            const std::vector<ElementId>& map) {
  return !hom_violation(source, target, map).has_value();
}

}  // namespace latmod
