#ifndef LATMOD_RETRACTION_HPP
#define LATMOD_RETRACTION_HPP

#include <array>

#include "latmod/lattice.hpp"

namespace latmod {

/// Best core approximations of an element: lower is the join of all core
/// elements below it, upper the meet of all core elements above it.
struct ApproxPair {
  ElementId element;
  ElementId lower;
  ElementId upper;
};

ApproxPair approx_bounds(const FiniteDistLattice& L, const BooleanCore& core, ElementId x);

/// Canonical representation (b0 and x) or b1 of a sublattice element.
/// Among all representations of the same element the one with maximal b0,
/// then maximal b1 is stored; componentwise joins of representations are
/// again representations, so this maximum is unique.
struct NormalForm {
  ElementId b0;
  ElementId b1;
  ElementId denotes;
};

/// The sublattice generated by the core plus x, one canonical normal form per
/// element, sorted by denoted element id.
std::vector<NormalForm> normal_form_sublattice(const FiniteDistLattice& L, const BooleanCore& core,
                                               ElementId x);

struct CoreInequality {
  std::string label;
  ElementId lhs;
  ElementId rhs;
};

/// The verified obligations showing that equal normal forms stay equal after
/// substituting any admissible r for x.
struct RetractionCert {
  std::array<CoreInequality, 6> inequalities;
};

struct SixCheckResult {
  bool ok = false;
  RetractionCert cert;
  std::optional<CoreInequality> violated;
};

/// Given two representations (b0,b1), (b0p,b1p) of the same element and a core
/// r between the approximation bounds of x, checks the six inequalities whose
/// conjunction makes (b0 and r) or b1 = (b0p and r) or b1p.
/// Throws PreconditionViolated when the representations denote different
/// elements or r lies outside [xminus, xplus].
SixCheckResult check_six_inequalities(const FiniteDistLattice& L, const BooleanCore& core,
                                      ElementId x, ElementId b0, ElementId b1, ElementId b0p,
                                      ElementId b1p, ElementId r, ElementId xminus,
                                      ElementId xplus);

/// Extends a partial hom into the core to all of L, one element at a time.
/// `partial` is L-indexed with -1 on unassigned elements; defined entries must
/// form a sublattice on which the map is a hom into the core. Each new element
/// y receives the least admissible value, the join of the images of its lower
/// constraints (H(s1) ^ -H(s2) over assigned pairs with s1 <= s2 v y); the
/// sublattice is then re-closed and re-validated, and a conflict raises
/// ExtensionFailed with the offending element.
std::vector<ElementId> extend_hom(const FiniteDistLattice& L, const BooleanCore& core,
                                  std::vector<ElementId> partial);

/// The retraction L -> core fixing the core, sending x to r, built on the
/// generated sublattice via normal forms and completed by extend_hom.
/// Values are parent element ids (all core members). Throws RangeError when r
/// is outside [x-, x+].
std::vector<ElementId> build_retraction(const FiniteDistLattice& L, const BooleanCore& core,
                                        ElementId x, ElementId r);

struct RetractionUniqueness {
  bool unique = false;
  std::optional<ElementId> witness;  // some x with x- < x+
};

RetractionUniqueness retraction_unique(const FiniteDistLattice& L, const BooleanCore& core);

}  // namespace latmod

#endif
