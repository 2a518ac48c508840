#include "nielsen/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "nielsen/error.hpp"

namespace nielsen {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(Rational a, Rational b) { return Rational(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational operator-(Rational a, Rational b) { return Rational(a.num * b.den - b.num * a.den, a.den * b.den); }
Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }

std::string Graph::oriented_name(int oe) const {
  return edges[geom(oe)].name + (is_reversed(oe) ? "-" : "");
}

int Graph::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int Graph::oriented_index(const std::string& name) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].name == name) return static_cast<int>(2 * i);
    if (edges[i].name + "-" == name) return static_cast<int>(2 * i + 1);
  }
  return -1;
}

std::vector<int> Graph::directions_at(int v) const {
  std::vector<int> out;
  for (int oe = 0; oe < static_cast<int>(2 * edges.size()); ++oe)
    if (origin(oe) == v) out.push_back(oe);
  return out;
}

bool Graph::connected() const {
  if (vertices.empty()) return false;
  std::vector<bool> seen(vertices.size(), false);
  std::deque<int> q{0};
  seen[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const auto& e : edges) {
      for (auto [a, b] : {std::pair{e.from, e.to}, std::pair{e.to, e.from}})
        if (a == v && !seen[b]) {
          seen[b] = true;
          q.push_back(b);
        }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

EdgePath tighten(const Graph& g, int start, const std::vector<int>& raw) {
  EdgePath p{start, {}};
  int at = start;
  for (int oe : raw) {
    if (oe < 0 || oe >= static_cast<int>(2 * g.edges.size())) throw InputError("edge index out of range");
    if (g.origin(oe) != at)
      throw InputError("non-adjacent edge sequence at " + g.oriented_name(oe));
    if (!p.edges.empty() && p.edges.back() == rev(oe))
      p.edges.pop_back();
    else
      p.edges.push_back(oe);
    at = g.terminus(oe);
  }
  return p;
}

EdgePath reverse_path(const EdgePath& p, const Graph& g) {
  EdgePath r{p.end(g), {}};
  for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) r.edges.push_back(rev(*it));
  return r;
}

EdgePath concat(const Graph& g, const EdgePath& p, const EdgePath& q) {
  if (p.end(g) != q.start) throw InputError("paths do not meet");
  std::vector<int> raw = p.edges;
  raw.insert(raw.end(), q.edges.begin(), q.edges.end());
  return tighten(g, p.start, raw);
}

std::string format_path(const Graph& g, const EdgePath& p) {
  if (p.trivial()) return "[" + g.vertices[p.start] + "]";
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += " ";
    s += g.oriented_name(p.edges[i]);
  }
  return s;
}

EdgePath GraphMap::image(int oe) const {
  const EdgePath& fwd = edge_images[geom(oe)];
  return is_reversed(oe) ? reverse_path(fwd, graph) : fwd;
}

void GraphMap::validate() const {
  const Graph& g = graph;
  if (g.vertices.empty()) throw InputError("graph has no vertices");
  std::set<std::string> names(g.vertices.begin(), g.vertices.end());
  if (names.size() != g.vertices.size()) throw InputError("duplicate vertex name");
  std::set<std::string> enames;
  for (const auto& e : g.edges) {
    if (e.name.empty() || !enames.insert(e.name).second) throw InputError("duplicate or empty edge name");
    if (e.name.back() == '-') throw InputError("edge names may not end in '-'");
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(g.vertices.size()) ||
        e.to >= static_cast<int>(g.vertices.size()))
      throw InputError("edge endpoint out of range");
  }
  if (vertex_map.size() != g.vertices.size()) throw InputError("vertex_map must cover every vertex");
  for (int v : vertex_map)
    if (v < 0 || v >= static_cast<int>(g.vertices.size())) throw InputError("vertex_map target out of range");
  if (edge_images.size() != g.edges.size()) throw InputError("edge_map must cover every edge");
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const EdgePath& p = edge_images[i];
    const std::string& n = g.edges[i].name;
    EdgePath t = tighten(g, p.start, p.edges);
    if (!(t == p)) throw InputError("image of edge " + n + " is not tight");
    if (p.start != vertex_map[g.edges[i].from] || p.end(g) != vertex_map[g.edges[i].to])
      throw InputError("image of edge " + n + " does not match vertex_map at its endpoints");
  }
}

std::size_t GraphMap::total_image_length() const {
  std::size_t s = 0;
  for (const auto& p : edge_images) s += p.size();
  return s;
}

EdgePath map_path(const GraphMap& f, const EdgePath& p) {
  std::vector<int> raw;
  for (int oe : p.edges) {
    EdgePath img = f.image(oe);
    raw.insert(raw.end(), img.edges.begin(), img.edges.end());
  }
  return tighten(f.graph, f.vertex_map[p.start], raw);
}

GraphMap compose(const GraphMap& f, const GraphMap& g) {
  GraphMap h;
  h.graph = g.graph;
  for (int v : g.vertex_map) h.vertex_map.push_back(f.vertex_map[v]);
  for (const auto& p : g.edge_images) h.edge_images.push_back(map_path(f, p));
  return h;
}

int derivative(const GraphMap& f, int oe) {
  EdgePath img = f.image(oe);
  return img.trivial() ? -1 : img.edges.front();
}

std::string to_string(TurnStatus s) {
  switch (s) {
    case TurnStatus::Legal: return "legal";
    case TurnStatus::Illegal: return "illegal";
    case TurnStatus::Degenerate: return "degenerate";
  }
  return "legal";
}

TurnStatus classify_turn(const GraphMap& f, int d1, int d2, int max_iter) {
  if (f.graph.origin(d1) != f.graph.origin(d2)) throw InputError("turn directions do not share an origin");
  if (d1 == d2) return TurnStatus::Degenerate;
  const int dirs = static_cast<int>(2 * f.graph.edges.size());
  if (max_iter < 0) max_iter = dirs * dirs + 1;
  std::set<std::pair<int, int>> seen;
  int x = d1, y = d2;
  for (int i = 0; i < max_iter; ++i) {
    x = derivative(f, x);
    y = derivative(f, y);
    if (x < 0 || y < 0) return TurnStatus::Legal;
    if (x == y) return TurnStatus::Illegal;
    if (!seen.insert({std::min(x, y), std::max(x, y)}).second) return TurnStatus::Legal;
  }
  return TurnStatus::Legal;
}

std::vector<int> fixed_vertices(const GraphMap& f) {
  std::vector<int> out;
  for (std::size_t v = 0; v < f.vertex_map.size(); ++v)
    if (f.vertex_map[v] == static_cast<int>(v)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<int> fixed_directions(const GraphMap& f, int v) {
  if (f.vertex_map.at(v) != v) throw InputError("vertex " + f.graph.vertices[v] + " is not fixed");
  std::vector<int> out;
  for (int d : f.graph.directions_at(v))
    if (derivative(f, d) == d) out.push_back(d);
  return out;
}

bool pointwise_fixed(const GraphMap& f, int g) {
  const EdgePath& p = f.edge_images[g];
  return p.edges.size() == 1 && p.edges[0] == 2 * g;
}

std::vector<InteriorPoint> detect_interior_fixed_points(const GraphMap& f, bool allow_pointwise) {
  std::vector<InteriorPoint> out;
  for (std::size_t g = 0; g < f.graph.edges.size(); ++g) {
    const EdgePath& img = f.edge_images[g];
    const auto k = static_cast<std::int64_t>(img.size());
    if (pointwise_fixed(f, static_cast<int>(g))) {
      if (allow_pointwise) continue;
      throw StructureError("non-isolated interior fixed set on edge " + f.graph.edges[g].name);
    }
    std::set<std::pair<std::int64_t, std::int64_t>> found;
    for (std::int64_t j = 0; j < k; ++j) {
      int oe = img.edges[static_cast<std::size_t>(j)];
      if (geom(oe) != static_cast<int>(g)) continue;
      // Point t runs over position k*t of the image; segment j covers
      // [j/k, (j+1)/k]. Solve k t - j = t (same direction) or 1 - (k t - j) = t.
      Rational t = is_reversed(oe) ? Rational(1 + j, k + 1) : Rational(j, k - 1);
      if (Rational(0) < t && t < Rational(1)) found.insert({t.num, t.den});
    }
    std::vector<Rational> ts;
    for (auto [n, d] : found) ts.emplace_back(n, d);
    std::sort(ts.begin(), ts.end());
    for (auto t : ts) out.push_back({static_cast<int>(g), t});
  }
  return out;
}

GraphMap subdivide_at(const GraphMap& f, const std::vector<InteriorPoint>& points) {
  const Graph& g = f.graph;
  const std::size_t ne = g.edges.size();
  std::vector<std::vector<Rational>> cuts(ne);
  for (const auto& pt : points) {
    if (!(Rational(0) < pt.t && pt.t < Rational(1))) throw InputError("subdivision point must be interior");
    cuts.at(pt.edge).push_back(pt.t);
  }
  GraphMap h;
  h.graph.vertices = g.vertices;
  h.vertex_map = f.vertex_map;
  // first_piece[e] = index of the first new geometric edge of old edge e.
  std::vector<int> first_piece(ne);
  std::vector<std::vector<int>> cut_vertex(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    auto& c = cuts[e];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    c.insert(c.begin(), Rational(0));
    c.push_back(Rational(1));
    cut_vertex[e].push_back(g.edges[e].from);
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
      cut_vertex[e].push_back(static_cast<int>(h.graph.vertices.size()));
      h.graph.vertices.push_back(g.edges[e].name + "@" + c[i].str());
      h.vertex_map.push_back(cut_vertex[e].back());
    }
    cut_vertex[e].push_back(g.edges[e].to);
    first_piece[e] = static_cast<int>(h.graph.edges.size());
    const std::size_t pieces = c.size() - 1;
    for (std::size_t i = 0; i < pieces; ++i) {
      std::string name = pieces == 1 ? g.edges[e].name : g.edges[e].name + "#" + std::to_string(i + 1);
      h.graph.edges.push_back({name, cut_vertex[e][i], cut_vertex[e][i + 1]});
    }
  }

  auto cut_index = [&](std::size_t e, Rational x) {
    for (std::size_t i = 0; i < cuts[e].size(); ++i)
      if (cuts[e][i] == x) return i;
    throw StructureError("subdivision inconsistency on edge " + g.edges[e].name + " at " + x.str());
  };
  // Pieces of old oriented edge oe between local positions a < b along oe.
  auto pieces_between = [&](int oe, Rational a, Rational b, std::vector<int>& out) {
    const std::size_t e = static_cast<std::size_t>(geom(oe));
    if (!is_reversed(oe)) {
      for (std::size_t i = cut_index(e, a); i < cut_index(e, b); ++i)
        out.push_back(2 * (first_piece[e] + static_cast<int>(i)));
    } else {
      std::size_t hi = cut_index(e, Rational(1) - a), lo = cut_index(e, Rational(1) - b);
      for (std::size_t i = hi; i > lo; --i) out.push_back(2 * (first_piece[e] + static_cast<int>(i) - 1) + 1);
    }
  };

  for (std::size_t e = 0; e < ne; ++e) {
    const EdgePath& img = f.edge_images[e];
    const auto k = static_cast<std::int64_t>(img.size());
    for (std::size_t i = 0; i + 1 < cuts[e].size(); ++i) {
      int from = cut_vertex[e][i];
      std::vector<int> raw;
      Rational s0 = cuts[e][i] * Rational(k), s1 = cuts[e][i + 1] * Rational(k);
      for (std::int64_t j = 0; j < k; ++j) {
        Rational lo = std::max(s0, Rational(j)), hi = std::min(s1, Rational(j + 1));
        if (!(lo < hi)) continue;
        pieces_between(img.edges[static_cast<std::size_t>(j)], lo - Rational(j), hi - Rational(j), raw);
      }
      int start = h.vertex_map[from];
      if (k == 0) start = f.vertex_map[g.edges[e].from];
      h.edge_images.push_back(tighten(h.graph, start, raw));
    }
  }
  h.validate();
  return h;
}

Normalized normalize(const GraphMap& f) {
  Normalized out{f, {}};
  for (int round = 0; round < 4; ++round) {
    auto pts = detect_interior_fixed_points(out.map, true);
    if (pts.empty()) return out;
    if (round > 0) throw StructureError("subdivision did not remove interior fixed points");
    out.points = pts;
    out.map = subdivide_at(out.map, pts);
  }
  throw StructureError("subdivision did not converge");
}

Pi1Data pi1_data(const Graph& g, int base) {
  Pi1Data pi;
  pi.base = base;
  const std::size_t nv = g.vertices.size(), ne = g.edges.size();
  pi.in_tree.assign(ne, false);
  pi.tree_path.assign(nv, EdgePath{base, {}});
  std::vector<bool> seen(nv, false);
  seen[base] = true;
  std::deque<int> q{base};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int d : g.directions_at(v)) {
      int w = g.terminus(d);
      if (seen[w]) continue;
      seen[w] = true;
      pi.in_tree[geom(d)] = true;
      pi.tree_path[w] = pi.tree_path[v];
      pi.tree_path[w].edges.push_back(d);
      q.push_back(w);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("graph is not connected");
  pi.generator_of_edge.assign(ne, -1);
  std::vector<std::string> full, stripped;
  for (std::size_t e = 0; e < ne; ++e) {
    if (pi.in_tree[e]) continue;
    pi.generator_of_edge[e] = static_cast<int>(pi.generator_edge.size());
    pi.generator_edge.push_back(static_cast<int>(e));
    full.push_back(g.edges[e].name);
    stripped.push_back(g.edges[e].name.substr(0, g.edges[e].name.find('#')));
  }
  if (full.empty()) throw InputError("graph is a tree: trivial fundamental group");
  std::set<std::string> uniq(stripped.begin(), stripped.end());
  pi.basis = Basis(uniq.size() == stripped.size() ? stripped : full);
  return pi;
}

Word path_word(const Pi1Data& pi, const EdgePath& p) {
  std::vector<Letter> raw;
  for (int oe : p.edges) {
    int gen = pi.generator_of_edge[geom(oe)];
    if (gen >= 0) raw.push_back(gen_letter(gen, is_reversed(oe)));
  }
  return reduce(raw);
}

EdgePath word_path(const Pi1Data& pi, const Graph& g, const Word& w) {
  std::vector<int> raw;
  for (Letter l : w) {
    int e = pi.generator_edge.at(gen_of(l));
    int oe = 2 * e + (l < 0 ? 1 : 0);
    const EdgePath& to_origin = pi.tree_path[g.origin(oe)];
    EdgePath back = reverse_path(pi.tree_path[g.terminus(oe)], g);
    raw.insert(raw.end(), to_origin.edges.begin(), to_origin.edges.end());
    raw.push_back(oe);
    raw.insert(raw.end(), back.edges.begin(), back.edges.end());
  }
  return tighten(g, pi.base, raw);
}

Endomorphism induced_endo(const GraphMap& f, const Pi1Data& pi, const EdgePath& route) {
  const Graph& g = f.graph;
  if (route.start != pi.base || route.end(g) != f.vertex_map[pi.base])
    throw InputError("route must run from the base vertex to its image");
  EdgePath back = reverse_path(route, g);
  std::vector<Word> imgs;
  for (std::size_t i = 0; i < pi.generator_edge.size(); ++i) {
    EdgePath loop = word_path(pi, g, {gen_letter(static_cast<int>(i))});
    EdgePath img = concat(g, concat(g, route, map_path(f, loop)), back);
    imgs.push_back(path_word(pi, img));
  }
  return Endomorphism(pi.basis, std::move(imgs));
}

int circle_degree(const GraphMap& f, const std::vector<int>& circle_edges) {
  const Graph& g = f.graph;
  if (circle_edges.empty()) throw InputError("empty circle");
  std::set<int> in(circle_edges.begin(), circle_edges.end());
  std::map<int, int> valence;
  for (int e : circle_edges) {
    ++valence[g.edges[e].from];
    ++valence[g.edges[e].to];
  }
  for (auto [v, c] : valence)
    if (c != 2) throw InputError("not a circle");
  // Walk the cycle to orient it.
  std::vector<int> cycle{2 * circle_edges[0]};
  std::set<int> used{circle_edges[0]};
  while (g.terminus(cycle.back()) != g.origin(cycle.front())) {
    int at = g.terminus(cycle.back());
    bool moved = false;
    for (int e : circle_edges) {
      if (used.count(e)) continue;
      int oe = g.edges[e].from == at ? 2 * e : (g.edges[e].to == at ? 2 * e + 1 : -1);
      if (oe < 0) continue;
      cycle.push_back(oe);
      used.insert(e);
      moved = true;
      break;
    }
    if (!moved) throw InputError("not a circle");
  }
  if (used.size() != in.size()) throw InputError("not a circle");
  std::map<int, int> sign;
  for (int oe : cycle) {
    sign[oe] = 1;
    sign[rev(oe)] = -1;
  }
  long long total = 0;
  for (int oe : cycle) {
    for (int x : f.image(oe).edges) {
      auto it = sign.find(x);
      if (it == sign.end()) throw InputError("circle is not invariant");
      total += it->second;
    }
  }
  return static_cast<int>(total / static_cast<long long>(cycle.size()));
}

GraphMap rose_map(const Endomorphism& phi) {
  GraphMap f;
  f.graph.vertices = {"v"};
  for (std::size_t i = 0; i < phi.rank(); ++i) f.graph.edges.push_back({phi.basis.name(static_cast<int>(i)), 0, 0});
  f.vertex_map = {0};
  for (const auto& w : phi.images) {
    EdgePath p{0, {}};
    for (Letter l : w) p.edges.push_back(2 * gen_of(l) + (l < 0 ? 1 : 0));
    f.edge_images.push_back(p);
  }
  return f;
}

}  // namespace nielsen
