#ifndef LATMOD_JSON_IO_HPP
#define LATMOD_JSON_IO_HPP

#include <json.hpp>

#include "latmod/models.hpp"

namespace latmod {

/// { "elements": ["bot","m","top"], "leq": [["bot","m"],["m","top"]],
///   "closure": "transitive" }
/// "leq" may list covers; the reflexive/transitive closure is applied unless
/// "closure" is "explicit".
FiniteDistLattice lattice_from_json(const nlohmann::json& j);
FiniteDistLattice load_lattice_file(const std::string& path);

nlohmann::json lattice_to_json(const FiniteDistLattice& L);

/// { "lattice": <lattice object or path>, "boolean": <lattice object or path>,
///   "map": {"m": "a", ...} }
/// Paths are resolved relative to `base_dir`.
SheafModel model_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
SheafModel load_model_file(const std::string& path);

}  // namespace latmod

#endif
