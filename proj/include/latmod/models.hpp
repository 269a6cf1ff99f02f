#ifndef LATMOD_MODELS_HPP
#define LATMOD_MODELS_HPP

#include <variant>

#include "latmod/lattice.hpp"

namespace latmod {

/// A lattice-valued model: a bounded-lattice hom from K into a Boolean
/// lattice B. A section of the interpretation of x exists over b exactly when
/// b <= map(x); all interpretations are subterminal, so the hom is the model.
struct SheafModel {
  FiniteDistLattice source;
  FiniteDistLattice target;
  std::vector<ElementId> map;

  ElementId operator()(ElementId u) const { return map[u]; }
};

/// Validates that the target is Boolean and the map a bounded hom.
SheafModel make_model(FiniteDistLattice source, FiniteDistLattice target,
                      std::vector<ElementId> map);

/// True when the model is, up to an isomorphism of the target, the lower
/// approximation map of its source into the complemented core.
bool is_canonical(const SheafModel& M);

/// The global-sections filter {u : M(u) = top}.
Filter gamma_filter(const SheafModel& M);

/// Quotient of a lattice by the congruence "a ~ b iff some filter element x
/// has x and a = x and b".
struct QuotientLattice {
  FiniteDistLattice lattice;
  Filter filter;
  std::vector<int> class_of;       // base element -> quotient element
  std::vector<ElementId> rep_of;   // quotient element -> least base representative
};

QuotientLattice l1_quotient(const FiniteDistLattice& K, const Filter& F);

/// Witness pair against join preservation of the lower-approximation map.
struct CanonicalDiagnostic {
  ElementId u;
  ElementId v;
};

/// The lower-approximation model K -> core(K) when it is a hom; otherwise the
/// witnessing join failure. Meets and bounds are always preserved, so only
/// joins are at stake.
std::variant<SheafModel, CanonicalDiagnostic> canonical_model(const FiniteDistLattice& K);

/// The embedding of the core into the quotient of the canonical model's
/// global-sections filter, b -> [b]. Verifies injectivity, that the image is
/// exactly the complemented core of the quotient, and that the projection is
/// an isomorphism onto the base; throws InvariantViolated otherwise.
LatticeHom psi_embed(const FiniteDistLattice& K, const BooleanCore& core,
                     const QuotientLattice& Q);

/// All bounded homs from the downset of x into the downset of each b, with
/// gluing over binary covers of b validated at construction.
struct TypeSpaceSlice {
  ElementId x;
  // homs_at[b] lists homs as source-indexed value tables (-1 outside the
  // downset of x), in a deterministic order.
  std::vector<std::vector<std::vector<ElementId>>> homs_at;
};

TypeSpaceSlice type_space(const FiniteDistLattice& K, const FiniteDistLattice& B, ElementId x,
                          int bound = 8);

/// Index of the restriction of homs_at[b][i] at level bp <= b.
int type_space_restrict(const TypeSpaceSlice& slice, const FiniteDistLattice& B, ElementId b,
                        ElementId bp, int i);

/// Covariant action along x <= y: transports a hom at x to one at y.
std::vector<ElementId> type_space_action(const FiniteDistLattice& K, ElementId x, ElementId y,
                                         const std::vector<ElementId>& hom_at_x);

/// The type of the section of Mx over b: the hom u -> b and M(u) on the
/// downset of x. Throws NoSection when b is not below M(x).
std::vector<ElementId> tp(const SheafModel& M, ElementId x, ElementId b);

/// A natural transformation from M to the type space functor, tabulated by its
/// top-level components: h[x] is a bounded hom from the downset of x to the
/// downset of M(x); the component over b <= M(x) is its meet with b.
struct NatTransTable {
  std::vector<std::vector<ElementId>> h;

  bool operator==(const NatTransTable&) const = default;
};

/// Exhaustive enumeration of natural transformations M => S, by backtracking
/// over per-element downset homs filtered by naturality.
std::vector<NatTransTable> enumerate_nat_trans(const SheafModel& M, int bound = 8);

/// The component of a tabulated transformation at (x, b <= M(x)): the hom at x
/// restricted to the level b. Throws NoSection when b is not below M(x).
std::vector<ElementId> nat_trans_component(const SheafModel& M, const NatTransTable& t,
                                           ElementId x, ElementId b);

/// The natural transformations M => N for a second model: there is at most
/// one, present exactly when M <= N pointwise.
struct ModelNatTrans {};
std::vector<ModelNatTrans> enumerate_nat_trans(const SheafModel& M, const SheafModel& N);

struct ElementaryCheck {
  bool elementary = false;
  std::optional<std::pair<ElementId, ElementId>> witness;  // (u, x) with N(u) ^ M(x) != M(u)
};

/// Whether the unique map M => N reflects interpretations: N(u) ^ M(x) = M(u)
/// for all u <= x. Requires M <= N pointwise.
ElementaryCheck is_elementary(const SheafModel& M, const SheafModel& N);

/// Every enumerated natural transformation M => S dominates tp, at every level.
bool tp_minimality_check(const SheafModel& M, int bound = 8);

/// The biconditional: M => N is elementary iff composing with tp_N gives tp_M.
bool elem_iff_tp_check(const SheafModel& M, const SheafModel& N);

struct StrongSplitWitness {
  ElementId u;
  ElementId x;
  ElementId b;
};

struct StronglyClosedResult {
  bool verdict = false;  // the cover-split route
  std::optional<StrongSplitWitness> witness;
  std::optional<bool> quotient_route;  // canonical models: quotient is Boolean
  std::optional<int> l1_size;
  bool cross_check_mismatch = false;
};

/// Cover-split route: every b <= M(x) splits as b1 v b2 with b1 <= M(u) and
/// b2 <= M(v) for some v disjoint from u. For canonical models the quotient
/// route (Booleanness of the quotient by the global-sections filter) is run
/// as a cross-check.
StronglyClosedResult strongly_positively_closed(const SheafModel& M);

enum RouteMask {
  RouteDefinition = 1,
  RouteLocal = 2,
  RouteRetraction = 4,
  RouteAll = 7,
};

struct PositivelyClosedCounter {
  std::vector<ElementId> target_map;  // the non-elementary continuation N
  ElementId u;
  ElementId x;
};

struct PositivelyClosedResult {
  bool verdict = false;
  std::optional<bool> definition_route;
  std::optional<PositivelyClosedCounter> counter;
  std::optional<bool> local_route;
  std::optional<std::pair<ElementId, ElementId>> local_witness;
  std::optional<bool> retraction_route;  // canonical models only
  std::optional<ElementId> retraction_witness;
  std::vector<std::string> mismatches;
};

/// Definition route (authoritative): every hom N >= M yields an elementary
/// map. Local route: M(x) ^ -M(u) is the join of M(x) ^ M(v) over v disjoint
/// from u. Retraction route (canonical models): the approximation bounds
/// coincide everywhere. Disagreements are surfaced in `mismatches`.
PositivelyClosedResult positively_closed(const SheafModel& M, int bound = 8,
                                         int routes = RouteAll);

/// Product of models into the two-element Boolean lattice: the result maps u
/// to the set of indices whose model sends u to top, inside 2^k.
SheafModel product_model(const std::vector<SheafModel>& prime_models, int k_bound = 6);

/// Extends a proper filter to a prime one (greedily, keeping the
/// lowest-indexed consistent join component) and returns the corresponding
/// two-valued model. Throws Inconsistent when bottom is in the filter.
SheafModel realize_type(const FiniteDistLattice& K, const Filter& p);

}  // namespace latmod

#endif
