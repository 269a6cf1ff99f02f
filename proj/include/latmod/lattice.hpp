#ifndef LATMOD_LATTICE_HPP
#define LATMOD_LATTICE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latmod {

/// Element of a finite lattice, an index into the element table.
using ElementId = int;

enum class Errc {
  NotAPoset,
  NotALattice,
  NotDistributive,
  NotBoolean,
  NotAFilter,
  NotAHom,
  UnknownElement,
  DuplicateName,
  BoundExceeded,
  RangeError,
  ExtensionFailed,
  PreconditionViolated,
  SourceMismatch,
  Inconsistent,
  NoSection,
  ParseError,
  InvariantViolated,
  CertificateFailed,
  InternalInvariant,
};

const char* errc_name(Errc c);

/// Carries a machine-readable code plus the witnessing elements (when any).
class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message, std::vector<ElementId> witness = {})
      : std::runtime_error(std::move(message)), code_(code), witness_(std::move(witness)) {}

  Errc code() const { return code_; }
  const std::vector<ElementId>& witness() const { return witness_; }

private:
  Errc code_;
  std::vector<ElementId> witness_;
};

/// Finite bounded distributive lattice with an explicit order table.
/// Instances are immutable once built; all factory paths validate eagerly.
class FiniteDistLattice {
public:
  FiniteDistLattice() = default;

  int size() const { return static_cast<int>(names_.size()); }
  bool leq(ElementId x, ElementId y) const { return leq_[x * size() + y]; }
  bool lt(ElementId x, ElementId y) const { return x != y && leq(x, y); }
  ElementId meet(ElementId x, ElementId y) const { return meet_[x * size() + y]; }
  ElementId join(ElementId x, ElementId y) const { return join_[x * size() + y]; }
  ElementId bottom() const { return bottom_; }
  ElementId top() const { return top_; }
  const std::string& name(ElementId x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }

  /// Index of a named element, or nullopt.
  std::optional<ElementId> find(const std::string& name) const;

  /// Meet/join over a set; empty meet is top, empty join is bottom.
  ElementId meet_all(const std::vector<ElementId>& xs) const;
  ElementId join_all(const std::vector<ElementId>& xs) const;

  std::vector<ElementId> downset(ElementId x) const;
  std::vector<ElementId> upset(ElementId x) const;

  bool same_shape(const FiniteDistLattice& other) const;

private:
  friend FiniteDistLattice lattice_from_leq(std::vector<std::string> names,
                                            std::vector<bool> leq);

  std::vector<std::string> names_;
  std::vector<bool> leq_;     // row-major: leq_[x*n + y] means x <= y
  std::vector<ElementId> meet_;
  std::vector<ElementId> join_;
  ElementId bottom_ = -1;
  ElementId top_ = -1;
};

/// Validates a reflexive order table and derives meet/join tables.
/// Throws NotAPoset, NotALattice (witness pair) or NotDistributive (witness triple).
FiniteDistLattice lattice_from_leq(std::vector<std::string> names, std::vector<bool> leq);

/// Builds a lattice from named order (or cover) pairs. When `transitive_closure`
/// is set the reflexive-transitive closure of the pairs is taken first.
FiniteDistLattice build_lattice(const std::vector<std::string>& names,
                                const std::vector<std::pair<std::string, std::string>>& pairs,
                                bool transitive_closure = true);

enum class LatticeOpKind { Meet, Join, Leq };

/// Uniform entry point over the three basic operations. Leq encodes its result
/// as bottom/top of the same lattice; prefer the direct member functions in code.
ElementId lattice_op(const FiniteDistLattice& L, LatticeOpKind kind, ElementId x, ElementId y);

/// The unique complement of x when it exists (uniqueness is forced by distributivity).
std::optional<ElementId> complement_of(const FiniteDistLattice& L, ElementId x);

/// The Boolean subalgebra of complemented elements.
struct BooleanCore {
  std::vector<ElementId> members;        // sorted parent ids
  std::vector<ElementId> complement;     // parent-indexed, -1 when not complemented
  std::vector<int> member_index;         // parent-indexed position in `members`, -1 otherwise

  bool contains(ElementId x) const { return member_index[x] >= 0; }
};

BooleanCore boolean_core(const FiniteDistLattice& L);

/// Materializes a core as a lattice of its own. `core.members[i]` is the parent
/// element of the new element i; names are inherited.
FiniteDistLattice core_as_lattice(const FiniteDistLattice& L, const BooleanCore& core);

/// The Boolean lattice 2^k with subsets of {1..k} as element names.
FiniteDistLattice boolean_lattice(int k);

/// Whether every element of L is complemented.
bool is_boolean(const FiniteDistLattice& L);

struct Filter {
  std::vector<ElementId> members;  // sorted
  bool prime = false;

  bool contains(ElementId x) const;
};

/// Validates up-closure, meet-closure and top membership; computes the prime flag.
Filter make_filter(const FiniteDistLattice& L, std::vector<ElementId> members);

/// Smallest filter containing the given elements; nullopt when improper (contains bottom).
std::optional<Filter> generated_filter(const FiniteDistLattice& L, const std::vector<ElementId>& gens);

/// All prime filters, ordered by their minimum element, each paired with the
/// Priestley order via `priestley_leq` (inclusion of member sets).
std::vector<Filter> prime_filters(const FiniteDistLattice& L);

bool priestley_leq(const Filter& p, const Filter& q);

/// All filters (proper or not). Guarded: throws BoundExceeded above 16 elements.
std::vector<Filter> all_filters(const FiniteDistLattice& L);

/// A bounded-lattice homomorphism, stored as the value table source -> target.
struct LatticeHom {
  std::vector<ElementId> map;

  ElementId operator()(ElementId x) const { return map[x]; }
  bool operator==(const LatticeHom&) const = default;
};

/// Checks preservation of bottom, top, binary meet and binary join; returns a
/// witness pair on failure.
std::optional<std::pair<ElementId, ElementId>> hom_violation(const FiniteDistLattice& source,
                                                             const FiniteDistLattice& target,
                                                             const std::vector<ElementId>& map);

bool is_hom(const FiniteDistLattice& source, const FiniteDistLattice& target,
            const std::vector<ElementId>& map);

}  // namespace latmod

#endif
