#pragma once

// Deliberately naive re-implementations used only as test oracles. They work
// on plain strings and maps so they share no code with the library.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Compact words: lowercase generator, uppercase inverse.
inline char inv(char c) { return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c)) : static_cast<char>(std::tolower(c)); }

inline std::string reduce(const std::string& w) {
  std::string out;
  for (char c : w) {
    if (!out.empty() && out.back() == inv(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

inline std::string inverse(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = inv(c);
  return out;
}

using Endo = std::map<char, std::string>;  // lowercase letter -> image

inline std::string substitute(const Endo& phi, const std::string& w) {
  std::string raw;
  for (char c : w) raw += std::islower(static_cast<unsigned char>(c)) ? phi.at(c) : inverse(phi.at(inv(c)));
  return reduce(raw);
}

inline std::string power(const Endo& phi, std::string w, int k) {
  for (int i = 0; i < k; ++i) w = substitute(phi, w);
  return w;
}

// All reduced words over the first `rank` letters, length 0..n.
inline std::vector<std::string> words(int rank, int n) {
  std::vector<std::string> out{""}, frontier{""};
  std::string alphabet;
  for (int i = 0; i < rank; ++i) {
    alphabet.push_back(static_cast<char>('a' + i));
    alphabet.push_back(static_cast<char>('A' + i));
  }
  for (int len = 1; len <= n; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier)
      for (char c : alphabet)
        if (w.empty() || w.back() != inv(c)) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// False if two distinct reduced words of length <= n share an image.
inline bool no_collision(const Endo& phi, int rank, int n) {
  std::set<std::string> seen;
  for (const auto& w : words(rank, n))
    if (!seen.insert(substitute(phi, w)).second) return false;
  return true;
}

inline std::vector<std::vector<long>> abelian(const Endo& phi, int rank) {
  std::vector<std::vector<long>> m(rank, std::vector<long>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (char c : phi.at(static_cast<char>('a' + i))) {
      int j = std::tolower(c) - 'a';
      m[j][i] += std::islower(static_cast<unsigned char>(c)) ? 1 : -1;
    }
  return m;
}

inline long trace(const Endo& phi, int rank) {
  auto m = abelian(phi, rank);
  long t = 0;
  for (int i = 0; i < rank; ++i) t += m[i][i];
  return t;
}

// Common prefix of phi^k(seed) and phi^(k+1)(seed) for growing k.
inline std::string ray_prefix(const Endo& phi, const std::string& seed, std::size_t n) {
  std::string w = seed;
  for (int k = 0; k < 60; ++k) {
    std::string next = substitute(phi, w);
    std::size_t common = 0;
    while (common < w.size() && common < next.size() && w[common] == next[common]) ++common;
    if (common >= n) return next.substr(0, n);
    w = next;
    if (w.size() > 100000) break;
  }
  return {};
}

// ---- graph maps with string edge names ------------------------------------

struct GMap {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> edges;  // name, (from, to)
  std::map<std::string, std::string> vmap;
  std::map<std::string, std::vector<std::string>> emap;  // forward images, "x-" reversed
};

inline std::string flip(const std::string& oe) { return oe.back() == '-' ? oe.substr(0, oe.size() - 1) : oe + "-"; }

inline std::pair<std::string, std::string> ends(const GMap& g, const std::string& oe) {
  bool r = oe.back() == '-';
  std::string name = r ? oe.substr(0, oe.size() - 1) : oe;
  for (const auto& e : g.edges)
    if (e.first == name) return r ? std::make_pair(e.second.second, e.second.first) : e.second;
  return {};
}

inline std::vector<std::string> tighten(std::vector<std::string> p) {
  std::vector<std::string> out;
  for (auto& e : p) {
    if (!out.empty() && out.back() == flip(e))
      out.pop_back();
    else
      out.push_back(e);
  }
  return out;
}

inline std::vector<std::string> image(const GMap& g, const std::vector<std::string>& p) {
  std::vector<std::string> raw;
  for (const auto& oe : p) {
    if (oe.back() == '-') {
      auto img = g.emap.at(oe.substr(0, oe.size() - 1));
      for (auto it = img.rbegin(); it != img.rend(); ++it) raw.push_back(flip(*it));
    } else {
      for (const auto& x : g.emap.at(oe)) raw.push_back(x);
    }
  }
  return tighten(raw);
}

struct NPath {
  std::string from, to;
  std::vector<std::string> edges;
};

// Every tight path of length 1..n between fixed vertices whose image
// tightens back to itself.
inline std::vector<NPath> nielsen_paths(const GMap& g, std::size_t n) {
  std::vector<NPath> out;
  std::vector<std::string> dirs;
  for (const auto& e : g.edges) {
    dirs.push_back(e.first);
    dirs.push_back(e.first + "-");
  }
  std::vector<std::string> path;
  std::function<void(const std::string&, const std::string&)> dfs = [&](const std::string& start, const std::string& at) {
    if (!path.empty() && g.vmap.at(at) == at && image(g, path) == path) out.push_back({start, at, path});
    if (path.size() == n) return;
    for (const auto& d : dirs) {
      if (ends(g, d).first != at) continue;
      if (!path.empty() && path.back() == flip(d)) continue;
      path.push_back(d);
      dfs(start, ends(g, d).second);
      path.pop_back();
    }
  };
  for (const auto& v : g.vertices)
    if (g.vmap.at(v) == v) dfs(v, v);
  return out;
}

// Partition of fixed vertices under "joined by a Nielsen path".
inline std::vector<std::set<std::string>> nielsen_partition(const GMap& g, std::size_t n) {
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& v : g.vertices)
    if (g.vmap.at(v) == v) parent[v] = v;
  for (const auto& p : nielsen_paths(g, n)) parent[find(p.from)] = find(p.to);
  std::map<std::string, std::set<std::string>> groups;
  for (auto& [v, _] : parent) groups[find(v)].insert(v);
  std::vector<std::set<std::string>> out;
  for (auto& [_, s] : groups) out.push_back(s);
  return out;
}

// Indivisible: no proper split at an interior fixed vertex into two Nielsen paths.
inline bool indivisible(const GMap& g, const NPath& p) {
  std::string at = p.from;
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
    at = ends(g, p.edges[i]).second;
    if (g.vmap.at(at) != at) continue;
    std::vector<std::string> a(p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    std::vector<std::string> b(p.edges.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.edges.end());
    if (image(g, a) == a && image(g, b) == b) return false;
  }
  return true;
}

}  // namespace oracle
