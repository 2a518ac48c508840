#include <doctest.h>

#include "nielsen/error.hpp"
#include "nielsen/invariants.hpp"
#include "nielsen/properties.hpp"
#include "support.hpp"

using namespace nielsen;
using testing_support::endo;
using testing_support::rose;
using testing_support::str;
using testing_support::w;

namespace {

std::set<std::set<std::string>> class_partition(const Analysis& an) {
  std::set<std::set<std::string>> out;
  for (const auto& c : an.classes) {
    std::set<std::string> s;
    for (int v : c.members) s.insert(an.map.graph.vertices[v]);
    out.insert(s);
  }
  return out;
}

std::multiset<std::tuple<int, int, int>> essential(const Analysis& an) {
  std::multiset<std::tuple<int, int, int>> out;
  for (const auto& c : an.classes)
    if (c.ind != 0) out.insert({c.ind, c.rk.value_or(-1), c.a.value_or(-1)});
  return out;
}

AnalysisOptions quick() {
  AnalysisOptions o;
  o.attracting = false;
  return o;
}

}  // namespace

TEST_CASE("base invariants") {
  CHECK(base_invariants_point() == std::vector<ClassTriple>{{1, 0, 0}});
  for (int k : {-3, -1, 2, 4}) {
    auto cs = base_invariants_circle(k);
    CHECK(cs.size() == static_cast<std::size_t>(std::abs(1 - k)));
    int sum = 0;
    for (auto& c : cs) sum += c.ind;
    CHECK(sum == 1 - k);
  }
  auto one = base_invariants_circle(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == ClassTriple{0, 1, 0});
}

TEST_CASE("rank one maps a -> a^k") {
  for (int k : {-3, -2, -1, 2, 3}) {
    std::string img;
    for (int i = 0; i < std::abs(k); ++i) img += k > 0 ? "a" : "A";
    Analysis an = analyze(rose({img}), quick());
    CHECK(an.classes.size() == static_cast<std::size_t>(std::abs(1 - k)));
    CHECK(an.lefschetz == 1 - k);
    for (const auto& c : an.classes) CHECK(c.ind == *c.ichr());
  }
  CHECK_THROWS_AS(analyze(rose({""})), StructureError);
}

TEST_CASE("worked examples") {
  SUBCASE("doubling rose") {
    Analysis an = analyze(rose({"aa", "bb"}));
    REQUIRE(an.classes.size() == 1);
    const auto& c = an.classes[0];
    CHECK(c.ind == -3);
    CHECK(*c.rk == 0);
    CHECK(*c.a == 4);
    CHECK(c.delta == 4);
  }
  SUBCASE("two classes") {
    Analysis an = analyze(rose({"a", "Bab"}));
    CHECK(an.lefschetz == 0);
    REQUIRE(an.classes.size() == 2);
    CHECK(an.classes[0].ind == -1);
    CHECK(*an.classes[0].rk == 1);
    CHECK(*an.classes[0].a == 1);
    REQUIRE(an.classes[0].fix_generators.size() == 1);
    CHECK(str(an.classes[0].fix_generators[0]) == "a");
    CHECK(an.classes[1].ind == 1);
    CHECK(doubled_sum_bound(an) == 1);
    REQUIRE(an.classes[0].attracting.size() == 1);
    CHECK(str(an.classes[0].attracting[0].word.prefix(7)) == "BAbABab");
  }
  SUBCASE("derived filtration") {
    Analysis an = analyze(rose({"a", "ba"}));
    REQUIRE(an.classes.size() == 1);
    CHECK(an.classes[0].ind == -1);
    CHECK(*an.classes[0].rk == 2);
    CHECK(*an.classes[0].a == 0);
    CHECK(an.classes[0].generators_verified);
  }
  for (const auto& [k, v] : analyze(rose({"A", "Abb"})).verdicts) CHECK_MESSAGE(v.status != "fail", k);
}

TEST_CASE("Nielsen classes match the brute-force partition") {
  for (auto imgs : std::vector<std::vector<std::string>>{{"A", "Abb"}, {"a", "Bab"}, {"a", "ba"}, {"b", "A"}, {"aa", "bb"}, {"aab", "b"}}) {
    Analysis an = analyze(rose(imgs), quick());
    auto expect = oracle::nielsen_partition(testing_support::to_oracle(an.map), 8);
    CHECK(class_partition(an) == std::set<std::set<std::string>>(expect.begin(), expect.end()));
  }
}

TEST_CASE("random maps: classes never split a brute-force block") {
  std::mt19937_64 rng(99);
  int analysed = 0;
  for (int i = 0; i < 60; ++i) {
    auto phi = random_injective_endo(rng, 2, 3);
    Analysis an;
    try {
      an = analyze(rose_map(phi), quick());
    } catch (const UnclassifiableError&) {
      continue;
    }
    ++analysed;
    auto ours = class_partition(an);
    for (const auto& block : oracle::nielsen_partition(testing_support::to_oracle(an.map), 6)) {
      bool inside = false;
      for (const auto& c : ours) inside |= std::includes(c.begin(), c.end(), block.begin(), block.end());
      CHECK_MESSAGE(inside, format_endo(phi));
    }
    std::int64_t sum = 0;
    for (const auto& c : an.classes) sum += c.ind;
    CHECK(sum == an.lefschetz);
  }
  CHECK(analysed > 5);
}

TEST_CASE("essential classes are invariant under conjugation") {
  std::mt19937_64 rng(4242);
  int compared = 0;
  for (int i = 0; i < 80 && compared < 12; ++i) {
    auto phi = random_injective_endo(rng, 2, 3);
    Word c = w(testing_support::random_word(rng, 2, 1 + i % 2));
    try {
      Analysis a = analyze(rose_map(phi), quick());
      Analysis b = analyze(rose_map(conjugate_by(c, phi)), quick());
      CHECK_MESSAGE(essential(a) == essential(b), format_endo(phi) << " by " << str(c));
      CHECK(a.lefschetz == b.lefschetz);
      ++compared;
    } catch (const UnclassifiableError&) {
    }
  }
  CHECK(compared >= 5);
}

TEST_CASE("route analysis") {
  Analysis an = analyze(rose({"b", "A"}));
  REQUIRE(an.classes.size() == 1);
  CHECK(an.classes[0].ind == 1);
  RouteAnalysis ra = analyze_route(an, w("a"), 0);
  CHECK(ra.empty_no_witness);
  CHECK(ra.rk == 1);
  CHECK(ra.a == 0);
  CHECK(ra.ichr() == 0);
  REQUIRE(ra.fix_generators.size() == 1);
  const Word& g = ra.fix_generators[0];
  CHECK(image_of(ra.endo, g) == g);
  CHECK((str(g) == "abAB" || str(g) == "baBA"));
  CHECK(ra.prop_empty_class.status == "pass");

  RouteAnalysis trivial = analyze_route(an, {}, 0);
  CHECK_FALSE(trivial.empty_no_witness);
  CHECK(trivial.equivalent_vertex == 0);
}
