#ifndef LATMOD_TESTS_FIXTURES_HPP
#define LATMOD_TESTS_FIXTURES_HPP

#include "latmod/lattice.hpp"

namespace fixtures {

using latmod::FiniteDistLattice;

inline FiniteDistLattice chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(names[i], names[i + 1]);
  return latmod::build_lattice(names, pairs);
}

inline FiniteDistLattice three_chain() {
  return latmod::build_lattice({"bot", "m", "top"}, {{"bot", "m"}, {"m", "top"}});
}

inline FiniteDistLattice two_by_two() {
  return latmod::build_lattice({"bot", "a", "b", "top"},
                               {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

// Downsets of the poset p < r with q isolated: six elements, core of four.
inline FiniteDistLattice six_with_mixed_core() {
  return latmod::build_lattice(
      {"bot", "p", "q", "pq", "pr", "top"},
      {{"bot", "p"}, {"bot", "q"}, {"p", "pq"}, {"q", "pq"}, {"p", "pr"}, {"pq", "top"}, {"pr", "top"}});
}

// Downsets of the poset c < a, c < b: two non-complemented elements join to top.
inline FiniteDistLattice vee_downsets() {
  return latmod::build_lattice({"bot", "c", "ac", "bc", "top"},
                               {{"bot", "c"}, {"c", "ac"}, {"c", "bc"}, {"ac", "top"}, {"bc", "top"}});
}

}  // namespace fixtures

#endif
