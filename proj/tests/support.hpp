#pragma once

#include <random>
#include <string>

#include "nielsen/json_io.hpp"
#include "oracles.hpp"

namespace testing_support {

inline nielsen::Word w(const std::string& s, std::size_t rank = 2) {
  return nielsen::parse_word(s, nielsen::Basis::standard(rank));
}
inline std::string str(const nielsen::Word& x, std::size_t rank = 2) {
  return nielsen::format_word(x, nielsen::Basis::standard(rank));
}

inline nielsen::Endomorphism endo(const std::vector<std::string>& imgs) {
  auto b = nielsen::Basis::standard(imgs.size());
  std::vector<nielsen::Word> ws;
  for (const auto& s : imgs) ws.push_back(nielsen::parse_word(s, b));
  return nielsen::Endomorphism(b, ws);
}

inline oracle::Endo to_oracle(const std::vector<std::string>& imgs) {
  oracle::Endo e;
  for (std::size_t i = 0; i < imgs.size(); ++i) e[static_cast<char>('a' + i)] = imgs[i];
  return e;
}

inline std::string random_word(std::mt19937_64& rng, int rank, std::size_t len) {
  std::uniform_int_distribution<int> d(0, 2 * rank - 1);
  std::string s;
  while (s.size() < len) {
    int r = d(rng);
    char c = static_cast<char>(r % 2 ? 'A' + r / 2 : 'a' + r / 2);
    if (!s.empty() && s.back() == oracle::inv(c)) continue;
    s.push_back(c);
  }
  return s;
}

// Graph map seen through its JSON form, for the string-based oracle.
inline oracle::GMap to_oracle(const nielsen::GraphMap& f) {
  auto j = nielsen::graph_map_to_json(f);
  oracle::GMap g;
  g.vertices = j["vertices"].get<std::vector<std::string>>();
  for (const auto& e : j["edges"])
    g.edges.push_back({e["name"], {e["from"], e["to"]}});
  for (auto& [k, v] : j["vertex_map"].items()) g.vmap[k] = v;
  for (auto& [k, v] : j["edge_map"].items())
    g.emap[k] = v.is_object() ? v["path"].get<std::vector<std::string>>() : v.get<std::vector<std::string>>();
  return g;
}

inline nielsen::GraphMap graph_from(const std::string& text) {
  return nielsen::graph_map_from_json(nielsen::json::parse(text));
}

inline nielsen::GraphMap rose(const std::vector<std::string>& imgs) { return nielsen::rose_map(endo(imgs)); }

}  // namespace testing_support
