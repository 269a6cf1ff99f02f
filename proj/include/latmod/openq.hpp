#ifndef LATMOD_OPENQ_HPP
#define LATMOD_OPENQ_HPP

#include <random>

#include "latmod/interval.hpp"

namespace latmod {

/// Splits a complemented b <= u v v into complemented pieces b1 <= u,
/// b2 <= v with b1 v b2 = b. Split points are deterministic irrational cuts.
/// Throws PreconditionViolated when b is not complemented or not below u v v.
struct SplitPair {
  IntervalUnion b1;
  IntervalUnion b2;
};

SplitPair split_join(const IntervalUnion& b, const IntervalUnion& u, const IntervalUnion& v);

/// Samples the hom law for the ideal map at the pair (u, v): all sampled
/// complemented b <= u v v must split. Returns false (with the offending b
/// stored in *bad when given) only on an invariant violation.
bool check_downarrow_hom(const IntervalUnion& u, const IntervalUnion& v, std::mt19937_64& rng,
                         int samples = 16, IntervalUnion* bad = nullptr);

/// Decomposition of a complemented b as b1 v b2 with b1 <= u and b2 <= v for
/// some v disjoint from u. Present exactly when no rational boundary point of
/// u lies strictly inside b; otherwise `obstruction` holds such a point.
struct StrongSplit {
  IntervalUnion b1;
  IntervalUnion b2;
  IntervalUnion v;
};

struct StrongSplitOutcome {
  std::optional<StrongSplit> split;
  std::optional<Rational> obstruction;
};

StrongSplitOutcome strong_split(const IntervalUnion& b, const IntervalUnion& u);

/// Closed hull [lo, hi] per maximal interval of u, with the guarantee that a
/// complemented element inside a hull already lies inside the open component.
struct ClosedHull {
  Endpoint lo;
  Endpoint hi;
};

std::vector<ClosedHull> saturation(const IntervalUnion& u);

/// Certificate that any hom fixing the complemented elements and dominating
/// the ideal map is forced to agree with it at u. Per component: hull samples
/// confirming the saturation guarantee, and for candidates b not below the
/// component a concrete complemented b2 <= b disjoint from it; plus split
/// records re-assembling sampled b <= u from per-component pieces.
struct ForcedValueCert {
  struct DisjointWitness {
    IntervalUnion candidate;
    IntervalUnion witness;
  };
  struct ComponentCert {
    QInterval component;
    ClosedHull hull;
    int saturation_samples = 0;
    std::vector<DisjointWitness> witnesses;
  };
  struct SplitRecord {
    IntervalUnion sample;
    std::vector<IntervalUnion> parts;
  };

  std::vector<ComponentCert> components;
  std::vector<SplitRecord> splits;
};

/// Throws CertificateFailed if any obligation cannot be discharged.
ForcedValueCert forced_value(const IntervalUnion& u, std::mt19937_64& rng,
                             int candidates_per_component = 6, int split_samples = 4);

/// Largest complemented element below u (present iff u is complemented) and
/// least complemented element above u (present iff filling the rational holes
/// of u leaves only irrational endpoints).
struct OpenQApprox {
  std::optional<IntervalUnion> lower;
  std::optional<IntervalUnion> upper;
};

OpenQApprox lower_upper_approx_openq(const IntervalUnion& u);

/// For a candidate complemented b <= u (strictly missing some of u near a
/// rational endpoint), a strictly larger complemented element still below u.
/// Requires that u is not complemented.
IntervalUnion improve_lower(const IntervalUnion& u, const IntervalUnion& b);

/// For a candidate complemented b >= u when the least upper bound does not
/// exist, a strictly smaller complemented element still above u.
IntervalUnion improve_upper(const IntervalUnion& u, const IntervalUnion& b);

/// A rational on which u and v disagree (nullopt when equal as subsets of Q).
std::optional<Rational> separating_rational(const IntervalUnion& u, const IntervalUnion& v);

/// A complemented element below exactly one of two distinct unions: a small
/// irrational-endpoint interval around a rational in the symmetric difference.
IntervalUnion separating_core_witness(const IntervalUnion& u, const IntervalUnion& v);

// Seeded random generators for property tests and certificates.
Rational random_rational(std::mt19937_64& rng, int span = 8);
Rational random_rational_between(std::mt19937_64& rng, const Endpoint& lo, const Endpoint& hi);
QSqrt2 random_irrational_between(std::mt19937_64& rng, const Endpoint& lo, const Endpoint& hi);
IntervalUnion random_union(std::mt19937_64& rng, int max_parts = 3, bool core_only = false);
/// Random complemented element below u (possibly bottom).
IntervalUnion random_core_below(std::mt19937_64& rng, const IntervalUnion& u);

}  // namespace latmod

#endif
