#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/endo.hpp"

namespace nielsen {

struct Rational {
  std::int64_t num = 0, den = 1;
  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);
  std::string str() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(Rational a, Rational b) { return !(b < a); }
};

// Oriented edges: 2g is geometric edge g forward, 2g+1 its reverse.
inline int rev(int oe) { return oe ^ 1; }
inline int geom(int oe) { return oe >> 1; }
inline bool is_reversed(int oe) { return (oe & 1) != 0; }

struct Graph {
  struct Edge {
    std::string name;
    int from = 0, to = 0;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
  int origin(int oe) const { return is_reversed(oe) ? edges[geom(oe)].to : edges[geom(oe)].from; }
  int terminus(int oe) const { return origin(rev(oe)); }
  std::string oriented_name(int oe) const;
  int vertex_index(const std::string& name) const;  // -1 if absent
  // Accepts "e" or "e-".
  int oriented_index(const std::string& name) const;
  // Oriented edges with the given origin, ascending id.
  std::vector<int> directions_at(int v) const;
  int valence(int v) const { return static_cast<int>(directions_at(v).size()); }
  bool connected() const;
  int euler_characteristic() const {
    return static_cast<int>(vertices.size()) - static_cast<int>(edges.size());
  }
};

struct EdgePath {
  int start = 0;
  std::vector<int> edges;

  bool trivial() const { return edges.empty(); }
  std::size_t size() const { return edges.size(); }
  int end(const Graph& g) const { return edges.empty() ? start : g.terminus(edges.back()); }
  bool operator==(const EdgePath&) const = default;
};

// Removes backtracks; throws InputError if consecutive edges are not adjacent.
EdgePath tighten(const Graph& g, int start, const std::vector<int>& raw);
EdgePath reverse_path(const EdgePath& p, const Graph& g);
EdgePath concat(const Graph& g, const EdgePath& p, const EdgePath& q);
std::string format_path(const Graph& g, const EdgePath& p);

struct GraphMap {
  Graph graph;
  std::vector<int> vertex_map;
  std::vector<EdgePath> edge_images;  // image of each geometric edge, forward

  EdgePath image(int oe) const;
  // Checks adjacency, tightness and endpoint compatibility.
  void validate() const;
  std::size_t total_image_length() const;
};

EdgePath map_path(const GraphMap& f, const EdgePath& p);
GraphMap compose(const GraphMap& f, const GraphMap& g);  // f o g

// First edge of the image of a direction, or -1 when the image is trivial.
int derivative(const GraphMap& f, int oe);

enum class TurnStatus { Legal, Illegal, Degenerate };
std::string to_string(TurnStatus s);
TurnStatus classify_turn(const GraphMap& f, int d1, int d2, int max_iter = -1);

std::vector<int> fixed_vertices(const GraphMap& f);
// Directions d at v with Df(d) = d.
std::vector<int> fixed_directions(const GraphMap& f, int v);
bool pointwise_fixed(const GraphMap& f, int g);

struct InteriorPoint {
  int edge = 0;
  Rational t;
};

// Interior fixed points under the uniform-speed parametrisation. Edges fixed
// pointwise raise StructureError unless allow_pointwise.
std::vector<InteriorPoint> detect_interior_fixed_points(const GraphMap& f, bool allow_pointwise = false);
GraphMap subdivide_at(const GraphMap& f, const std::vector<InteriorPoint>& points);

struct Normalized {
  GraphMap map;
  std::vector<InteriorPoint> points;  // in terms of the input's edges
};
// Repeats detect/subdivide until every fixed point is a vertex.
Normalized normalize(const GraphMap& f);

struct Pi1Data {
  int base = 0;
  std::vector<bool> in_tree;              // per geometric edge
  std::vector<EdgePath> tree_path;        // base -> v inside the tree
  std::vector<int> generator_edge;        // geometric edge of each generator
  std::vector<int> generator_of_edge;     // -1 for tree edges
  Basis basis;
};

Pi1Data pi1_data(const Graph& g, int base);
// Letters read off the non-tree edges of a path.
Word path_word(const Pi1Data& pi, const EdgePath& p);
// Loop at the base spelling w.
EdgePath word_path(const Pi1Data& pi, const Graph& g, const Word& w);
// [a] -> [route . f(a) . route^-1]; route runs from base to f(base).
Endomorphism induced_endo(const GraphMap& f, const Pi1Data& pi, const EdgePath& route);

// Signed degree of f on an invariant circle made of the given edges.
int circle_degree(const GraphMap& f, const std::vector<int>& circle_edges);

// One-vertex graph map realising phi; vertex "v", edges named by the basis.
GraphMap rose_map(const Endomorphism& phi);

}  // namespace nielsen
