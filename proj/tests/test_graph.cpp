#include <doctest.h>

#include <numeric>

#include "nielsen/error.hpp"
#include "nielsen/graph.hpp"
#include "support.hpp"

using namespace nielsen;
using testing_support::endo;
using testing_support::rose;
using testing_support::str;
using testing_support::w;

namespace {

std::vector<std::string> names(const Graph& g, const EdgePath& p) {
  std::vector<std::string> out;
  for (int oe : p.edges) out.push_back(g.oriented_name(oe));
  return out;
}

// Fixed points t = p/q (q <= 24) of a rose map at uniform speed, found by
// locating t inside the image and comparing coordinates.
std::vector<std::pair<std::string, Rational>> brute_interior(const std::vector<std::string>& imgs) {
  std::vector<std::pair<std::string, Rational>> out;
  for (std::size_t e = 0; e < imgs.size(); ++e) {
    const char me = static_cast<char>('a' + e);
    const auto k = static_cast<std::int64_t>(imgs[e].size());
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (std::int64_t q = 2; q <= 24; ++q)
      for (std::int64_t p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        // position k*p/q inside the image
        const std::int64_t idx = k * p / q;
        const std::int64_t rem = k * p - idx * q;  // local coordinate rem/q
        if (rem == 0) continue;  // lands on the vertex
        const char c = imgs[e][static_cast<std::size_t>(idx)];
        const bool hit = (c == me && rem == p) || (c == oracle::inv(me) && q - rem == p);
        if (hit && seen.insert({p, q}).second) out.push_back({std::string(1, me), Rational(p, q)});
      }
  }
  return out;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2).str() == "-1/2");
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("tighten, reverse and concat") {
  auto f = rose({"a", "b"});
  const Graph& g = f.graph;
  int a = g.oriented_index("a"), A = g.oriented_index("a-"), b = g.oriented_index("b");
  CHECK(tighten(g, 0, {a, b, rev(b), A}).trivial());
  auto p = tighten(g, 0, {a, b});
  CHECK(names(g, reverse_path(p, g)) == std::vector<std::string>{"b-", "a-"});
  CHECK(concat(g, p, reverse_path(p, g)).trivial());
  CHECK(format_path(g, p) == "a b");
}

TEST_CASE("path images follow the edge map") {
  auto f = rose({"b", "A"});
  EdgePath p = tighten(f.graph, 0, {f.graph.oriented_index("a"), f.graph.oriented_index("b")});
  CHECK(names(f.graph, map_path(f, p)) == std::vector<std::string>{"b", "a-"});
  CHECK(names(f.graph, map_path(f, map_path(f, p))) == std::vector<std::string>{"a-", "b-"});
  CHECK(derivative(f, f.graph.oriented_index("b")) == f.graph.oriented_index("a-"));
}

TEST_CASE("turns") {
  auto f = rose({"A", "Abb"});
  const Graph& g = f.graph;
  // Df swaps a and a-, so these never meet.
  CHECK(classify_turn(f, g.oriented_index("b"), g.oriented_index("a-")) == TurnStatus::Legal);
  auto h = rose({"ab", "aB"});
  CHECK(classify_turn(h, h.graph.oriented_index("a"), h.graph.oriented_index("b")) == TurnStatus::Illegal);
  CHECK(classify_turn(f, g.oriented_index("b"), g.oriented_index("b-")) == TurnStatus::Legal);
  CHECK(fixed_directions(f, 0) == std::vector<int>{g.oriented_index("b-")});
}

TEST_CASE("interior fixed points match a rational brute force") {
  for (auto imgs : std::vector<std::vector<std::string>>{{"A", "Abb"}, {"ab", "Bab"}, {"aa"}, {"aaa"}, {"Ab", "ba"}, {"bA", "aB"}}) {
    auto f = rose(imgs);
    auto ours = detect_interior_fixed_points(f);
    auto brute = brute_interior(imgs);
    REQUIRE(ours.size() == brute.size());
    std::set<std::pair<std::string, std::string>> a, b;
    for (auto& p : ours) a.insert({f.graph.edges[p.edge].name, p.t.str()});
    for (auto& p : brute) b.insert({p.first, p.second.str()});
    CHECK(a == b);
  }
  auto ex4 = detect_interior_fixed_points(rose({"A", "Abb"}));
  REQUIRE(ex4.size() == 2);
  CHECK(ex4[0].t == Rational(1, 2));
  CHECK(ex4[1].t == Rational(1, 2));
  CHECK_THROWS_AS(detect_interior_fixed_points(rose({"a", "b"})), StructureError);
}

TEST_CASE("normalize leaves every fixed point at a vertex") {
  auto n = normalize(rose({"A", "Abb"}));
  CHECK(n.map.graph.vertices == std::vector<std::string>{"v", "a@1/2", "b@1/2"});
  CHECK(detect_interior_fixed_points(n.map).empty());
  CHECK(fixed_vertices(n.map).size() == 3);
  CHECK_NOTHROW(n.map.validate());
  // The subdivided map is homotopic rel the base to the original one.
  Pi1Data pi = pi1_data(n.map.graph, 0);
  auto phi = induced_endo(n.map, pi, EdgePath{0, {}});
  CHECK(trace(abelianization(phi)) == 1);
}

TEST_CASE("rose maps, pi1 data and induced endomorphisms") {
  auto phi = endo({"aab", "bA"});
  auto f = rose_map(phi);
  CHECK(f.graph.euler_characteristic() == -1);
  Pi1Data pi = pi1_data(f.graph, 0);
  CHECK(induced_endo(f, pi, EdgePath{0, {}}) == phi);
  EdgePath loop = word_path(pi, f.graph, w("abA"));
  CHECK(str(path_word(pi, loop)) == "abA");
  CHECK(str(path_word(pi, map_path(f, loop))) == str(image_of(phi, w("abA"))));
}

TEST_CASE("circle degree") {
  for (int k : {-3, -1, 1, 2, 5}) {
    std::string img;
    for (int i = 0; i < std::abs(k); ++i) img += k > 0 ? "a" : "A";
    auto f = rose({img});
    CHECK(circle_degree(f, {0}) == k);
  }
}

TEST_CASE("validation rejects broken maps") {
  CHECK_THROWS_AS(testing_support::graph_from(R"({"vertices":["u","v"],"edges":[{"name":"e","from":"u","to":"v"}],
      "vertex_map":{"u":"u","v":"v"},"edge_map":{"e":["e","e"]}})"),
                  InputError);
  CHECK_THROWS_AS(testing_support::graph_from(R"({"vertices":["u"],"edges":[{"name":"e","from":"u","to":"u"}],
      "vertex_map":{"u":"w"},"edge_map":{"e":["e"]}})"),
                  InputError);
}
