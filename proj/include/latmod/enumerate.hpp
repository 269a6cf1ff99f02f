#ifndef LATMOD_ENUMERATE_HPP
#define LATMOD_ENUMERATE_HPP

#include "latmod/lattice.hpp"

namespace latmod {

/// A finite poset given by its reflexive order relation.
struct Poset {
  int n = 0;
  std::vector<bool> rel;  // rel[i*n+j] means i <= j

  bool leq(int i, int j) const { return rel[i * n + j]; }
};

/// All posets on exactly k points, one canonical representative per
/// isomorphism class, in a deterministic order. k <= 5.
std::vector<Poset> enumerate_posets(int k);

/// Lattice of downsets of P ordered by inclusion. Elements are named by their
/// point sets ("{}", "{p0}", "{p0,p1}", ...), listed by size then bitmask.
FiniteDistLattice downset_lattice(const Poset& P);

/// One lattice per unlabeled poset on <= n_poset_max points, as its lattice of
/// downsets. Every finite distributive lattice of matching scale appears
/// exactly once up to isomorphism. n_poset_max <= 5.
std::vector<FiniteDistLattice> enumerate_lattices(int n_poset_max);

/// All bounded-lattice homs source -> target consistent with the partial map
/// `constraint` (source-indexed, -1 where free; empty means unconstrained).
/// Throws BoundExceeded when the source is larger than `bound`.
std::vector<LatticeHom> enumerate_homs(const FiniteDistLattice& source,
                                       const FiniteDistLattice& target,
                                       const std::vector<ElementId>& constraint = {},
                                       int bound = 8);

/// All bounded-lattice homs H with H(x) >= lower(x) pointwise.
std::vector<LatticeHom> enumerate_homs_above(const FiniteDistLattice& source,
                                             const FiniteDistLattice& target,
                                             const std::vector<ElementId>& lower,
                                             int bound = 8);

/// All bounded homs between principal downsets: maps defined on the downset of
/// x in `source`, landing in the downset of b in `target`, preserving bottom,
/// binary meet, binary join, and sending x to b. Returned maps are
/// source-indexed with -1 outside the domain.
std::vector<std::vector<ElementId>> enumerate_downset_homs(const FiniteDistLattice& source,
                                                           ElementId x,
                                                           const FiniteDistLattice& target,
                                                           ElementId b);

}  // namespace latmod

#endif
