#include "latmod/json_io.hpp"

#include <filesystem>
#include <fstream>

namespace latmod {

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
  return j;
}

}  // namespace

FiniteDistLattice lattice_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> names = j.at("elements").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> pairs;
    if (j.contains("leq"))
      for (const auto& p : j.at("leq")) {
        if (!p.is_array() || p.size() != 2)
          throw Error(Errc::ParseError, "leq entries must be pairs");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
    bool closure = j.value("closure", std::string("transitive")) != "explicit";
    return build_lattice(names, pairs, closure);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad lattice object: ") + e.what());
  }
}

FiniteDistLattice load_lattice_file(const std::string& path) {
  return lattice_from_json(read_json_file(path));
}

nlohmann::json lattice_to_json(const FiniteDistLattice& L) {
  nlohmann::json j;
  j["elements"] = L.names();
  nlohmann::json pairs = nlohmann::json::array();
  for (int x = 0; x < L.size(); ++x)
    for (int y = 0; y < L.size(); ++y)
      if (x != y && L.leq(x, y)) pairs.push_back({L.name(x), L.name(y)});
  j["leq"] = pairs;
  j["closure"] = "transitive";
  return j;
}

SheafModel model_from_json(const nlohmann::json& j, const std::string& base_dir) {
  auto load_side = [&](const char* key) {
    const auto& side = j.at(key);
    if (side.is_string()) {
      std::filesystem::path p = side.get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      return load_lattice_file(p.string());
    }
    return lattice_from_json(side);
  };

  try {
    FiniteDistLattice source = load_side("lattice");
    FiniteDistLattice target = load_side("boolean");
    const auto& m = j.at("map");
    std::vector<ElementId> map(source.size(), -1);
    for (auto it = m.begin(); it != m.end(); ++it) {
      auto from = source.find(it.key());
      auto to = target.find(it.value().get<std::string>());
      if (!from) throw Error(Errc::UnknownElement, "map key not in lattice: " + it.key());
      if (!to)
        throw Error(Errc::UnknownElement,
                    "map value not in boolean lattice: " + it.value().get<std::string>());
      map[*from] = *to;
    }
    for (int u = 0; u < source.size(); ++u)
      if (map[u] == -1)
        throw Error(Errc::ParseError, "map misses element " + source.name(u));
    return make_model(std::move(source), std::move(target), std::move(map));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad model object: ") + e.what());
  }
}

SheafModel load_model_file(const std::string& path) {
  std::filesystem::path p(path);
  return model_from_json(read_json_file(path), p.parent_path().empty() ? "." : p.parent_path().string());
}

}  // namespace latmod
