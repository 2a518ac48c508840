#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nielsen/invariants.hpp"

namespace nielsen {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// {"rank":2,"letters":["a","b"],"images":{"a":"B","b":"aB"}}
Endomorphism endo_from_json(const json& j);
ordered_json endo_to_json(const Endomorphism& phi);

// {"vertices":[..],"edges":[{"name","from","to"}],"vertex_map":{..},
//  "edge_map":{"e":["a-","b"]}, optional "at":{"e":"v"} for empty images,
//  optional "filtration":[["a"],["b"]]}
GraphMap graph_map_from_json(const json& j, std::optional<Filtration>* filtration = nullptr);
ordered_json graph_map_to_json(const GraphMap& f, const Filtration* filtration = nullptr);

// One corpus or command-line input. Endomorphism files become roses.
struct Instance {
  std::string name;
  std::optional<Endomorphism> endo;
  GraphMap map;
  std::optional<Filtration> filtration;
  std::vector<std::string> routes;
  json expect;  // null when absent
};

Instance instance_from_json(const json& j, const std::string& name);
// Throws InputError naming the file and the parse location.
Instance load_instance(const std::filesystem::path& path);

ordered_json infinite_word_to_json(const InfiniteWord& w, const Basis& basis, std::size_t preview = 16);
ordered_json attraction_to_json(const AttractionVerdict& v);

// 12 significant digits.
double round12(double x);

ordered_json classification_report(const Analysis& an);
ordered_json invariants_report(const Analysis& an);
ordered_json attracting_report(const Analysis& an);
ordered_json lefschetz_report(const Analysis& an);
ordered_json route_report(const Analysis& an, const RouteAnalysis& ra);

}  // namespace nielsen
