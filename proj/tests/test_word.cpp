#include <doctest.h>

#include "nielsen/endo.hpp"
#include "nielsen/error.hpp"
#include "nielsen/folding.hpp"
#include "support.hpp"

using namespace nielsen;
using testing_support::str;
using testing_support::w;

TEST_CASE("reduce cancels adjacent inverse pairs") {
  auto b = Basis::standard(2);
  CHECK(reduce({1, -1, 2}) == Word{2});
  CHECK(reduce({}).empty());
  CHECK(reduce({-1, 2, 2, -2, -2, 1}).empty());
  CHECK_THROWS_AS(reduce({3}, b), InputError);
}

TEST_CASE("reduce agrees with the string oracle on random input") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(0, 3);
  for (int i = 0; i < 300; ++i) {
    std::string raw;
    for (int k = 0; k < 40; ++k) raw.push_back("aAbB"[d(rng)]);
    Word parsed;
    for (char c : raw) parsed.push_back(w(std::string(1, c))[0]);
    Word r = reduce(parsed);
    CHECK(str(r) == oracle::reduce(raw));
    CHECK(is_reduced(r));
    CHECK(reduce(r) == r);
  }
}

TEST_CASE("w w^-1 collapses for random words up to length 64") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Word x = w(testing_support::random_word(rng, 3, 64), 3);
    CHECK(multiply(x, inverse(x)).empty());
  }
}

TEST_CASE("common prefix") {
  auto b = Basis::standard(4);
  CHECK(format_word(common_prefix(parse_word("abc", b), parse_word("abd", b)), b) == "ab");
  CHECK(common_prefix(w("a"), w("A")).empty());
  CHECK(common_prefix(w("abAB"), w("abAB")) == w("abAB"));
}

TEST_CASE("parse and format round trip, compact and long names") {
  CHECK(str(w("abA")) == "abA");
  Basis long_names({"a1", "a2"});
  Word x = parse_word("a2-.a1.a2", long_names);
  CHECK(x == Word{-2, 1, 2});
  CHECK(format_word(x, long_names) == "a2-.a1.a2");
  CHECK_THROWS_AS(parse_word("c", Basis::standard(2)), InputError);
  CHECK_THROWS_AS(Basis({"a", "a"}), InputError);
}

TEST_CASE("cyclic reduction exposes the conjugator") {
  Word c;
  Word core = cyclic_reduce(w("abaBA"), &c);
  CHECK(str(core) == "a");
  CHECK(multiply(c, core, inverse(c)) == w("abaBA"));
}

TEST_CASE("reduced word enumeration matches the oracle in count and order") {
  std::vector<std::string> seen;
  for_each_reduced_word(2, 4, [&](const Word& x) {
    seen.push_back(str(x));
    return true;
  });
  auto expect = oracle::words(2, 4);
  CHECK(seen.size() == expect.size());
  CHECK(seen.size() == 1 + 4 + 12 + 36 + 108);
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1].size() <= seen[i].size());
  CHECK(seen[1] == "a");
  CHECK(seen[2] == "A");
  CHECK(seen[3] == "b");
}

TEST_CASE("folded graphs") {
  auto g = FoldedGraph::from_words({w("a"), w("bab")}, 2);
  CHECK(g.rank() == 2);
  CHECK(g.contains(w("abab")));
  CHECK_FALSE(g.contains(w("b")));
  CHECK(g.escapes_at(w("bb")).value() == 2);
  CHECK_FALSE(g.escapes_at(w("aB")).has_value());
  CHECK(FoldedGraph::from_words({w("ab"), w("abab")}, 2).rank() == 1);
  CHECK(FoldedGraph::from_words({}, 2).rank() == 0);
}
