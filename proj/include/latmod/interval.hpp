#ifndef LATMOD_INTERVAL_HPP
#define LATMOD_INTERVAL_HPP

#include <vector>

#include "latmod/qsqrt2.hpp"

namespace latmod {

/// Open interval of rationals {q in Q : lo < q < hi} with lo < hi strictly.
struct QInterval {
  Endpoint lo;
  Endpoint hi;

  bool operator==(const QInterval&) const = default;
};

QInterval make_interval(Endpoint lo, Endpoint hi);

/// Canonical finite union of open rational intervals: strictly increasing,
/// pairwise disjoint, and no two adjacent intervals mergeable. Adjacent
/// intervals sharing an endpoint merge exactly when that endpoint is
/// irrational (an irrational point is not a hole in Q); overlapping intervals
/// always merge. The empty list is bottom; (-inf, inf) is top.
struct IntervalUnion {
  std::vector<QInterval> parts;

  bool is_bottom() const { return parts.empty(); }
  bool is_top() const;
  bool operator==(const IntervalUnion&) const = default;
};

IntervalUnion iu_bottom();
IntervalUnion iu_top();

/// Canonical form of an arbitrary list of intervals; denotes the same subset
/// of Q.
IntervalUnion normalize(std::vector<QInterval> raw);

IntervalUnion iu_meet(const IntervalUnion& u, const IntervalUnion& v);
IntervalUnion iu_join(const IntervalUnion& u, const IntervalUnion& v);
bool iu_leq(const IntervalUnion& u, const IntervalUnion& v);

bool contains(const IntervalUnion& u, const Rational& q);

/// All finite endpoints are irrational, i.e. u is complemented.
bool is_complemented(const IntervalUnion& u);

/// The complement in the lattice, present exactly when every finite endpoint
/// is irrational; validated to meet u at bottom and join it at top.
std::optional<IntervalUnion> complement(const IntervalUnion& u);

/// Adjacent components sharing a rational endpoint merged into one interval
/// (the rational holes are filled in); used by the approximation bounds.
IntervalUnion fill_rational_holes(const IntervalUnion& u);

/// Parses the interval expression grammar:
///   union    := interval ( "u" interval )*
///   interval := "(" ep "," ep ")"
///   ep       := "-inf" | "inf" | rational | rational "+" rational "r2" | rational "r2"
///   rational := integer [ "/" positive-integer ]
/// Example: "(0,1) u (1,2)", "(-1r2, 1r2)".
IntervalUnion parse_union(const std::string& text);

std::string to_string(const QInterval& i);
std::string to_string(const IntervalUnion& u);

}  // namespace latmod

#endif
