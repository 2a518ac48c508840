#include <doctest.h>

#include "nielsen/endo.hpp"
#include "nielsen/error.hpp"
#include "support.hpp"

using namespace nielsen;
using testing_support::endo;
using testing_support::str;
using testing_support::w;

TEST_CASE("image_of on the worked examples") {
  auto phi = endo({"A", "Abb"});
  CHECK(str(image_of(phi, w("B"))) == "BBa");
  CHECK(str(apply_power(phi, w("B"), 2)) == "BBaBB");
  auto id = Endomorphism::identity(Basis::standard(2));
  CHECK(image_of(id, w("abAAB")) == w("abAAB"));
}

TEST_CASE("image_of matches the substitution oracle and is a homomorphism") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> len(1, 4);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> imgs{testing_support::random_word(rng, 2, len(rng)), testing_support::random_word(rng, 2, len(rng))};
    auto phi = endo(imgs);
    auto o = testing_support::to_oracle(imgs);
    std::string u = testing_support::random_word(rng, 2, 6), v = testing_support::random_word(rng, 2, 6);
    CHECK(str(image_of(phi, w(u))) == oracle::substitute(o, u));
    CHECK(image_of(phi, multiply(w(u), w(v))) == multiply(image_of(phi, w(u)), image_of(phi, w(v))));
  }
}

TEST_CASE("compose and inner twists") {
  auto phi = endo({"a", "Bab"});
  CHECK(inner_twist({}, phi) == phi);
  auto id = Endomorphism::identity(Basis::standard(2));
  CHECK(str(inner_twist(w("a"), id).image(1)) == "abA");
  // (i_a o phi) o i_c and i_{a phi(c)} o phi agree on generators.
  Word a = w("a"), c = w("a");
  auto lhs = compose(inner_twist(a, phi), inner_twist(c, id));
  auto rhs = inner_twist(multiply(a, image_of(phi, c)), phi);
  CHECK(lhs == rhs);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto psi = endo({testing_support::random_word(rng, 2, 3), testing_support::random_word(rng, 2, 2)});
    Word x = w(testing_support::random_word(rng, 2, 5));
    CHECK(image_of(compose(phi, psi), x) == image_of(phi, image_of(psi, x)));
    CHECK(abelianization(compose(phi, psi)) == matmul(abelianization(phi), abelianization(psi)));
  }
}

TEST_CASE("abelianization and trace") {
  CHECK(trace(abelianization(Endomorphism::identity(Basis::standard(3)))) == 3);
  CHECK(trace(abelianization(endo({"A", "Abb"}))) == 1);
  CHECK(trace(abelianization(endo({"b", "A"}))) == 0);
  auto m = abelianization(endo({"aab", "B"}));
  CHECK(m[0][0] == 2);
  CHECK(m[1][0] == 1);
  CHECK(m[1][1] == -1);
}

TEST_CASE("injectivity") {
  for (int k = -3; k <= 3; ++k) {
    std::string img;
    for (int i = 0; i < std::abs(k); ++i) img += k > 0 ? "a" : "A";
    CHECK(is_injective(endo({img})) == (k != 0));
  }
  CHECK(is_injective(endo({"a", "Bab"})));
  CHECK_FALSE(is_injective(endo({"a", "a"})));
}

TEST_CASE("injectivity agrees with the collision oracle on random rank-2 maps") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> len(0, 3);
  int non_injective = 0;
  for (int i = 0; i < 400; ++i) {
    std::vector<std::string> imgs{testing_support::random_word(rng, 2, len(rng)), testing_support::random_word(rng, 2, len(rng))};
    bool ours = is_injective(endo(imgs));
    bool brute = oracle::no_collision(testing_support::to_oracle(imgs), 2, 5);
    CHECK(ours == brute);
    non_injective += ours ? 0 : 1;
  }
  CHECK(non_injective > 0);
}

TEST_CASE("cancellation bound holds exhaustively at small length") {
  for (auto imgs : std::vector<std::vector<std::string>>{{"a", "Bab"}, {"A", "Abb"}, {"aab", "bA"}, {"ab", "b", "cA"}}) {
    auto phi = endo(imgs);
    const long B = static_cast<long>(cancellation_bound(phi));
    CHECK(B == static_cast<long>([&] { std::size_t s = 0; for (auto& x : imgs) s += x.size(); return s; }()));
    auto o = testing_support::to_oracle(imgs);
    const int rank = static_cast<int>(imgs.size());
    auto ws = oracle::words(rank, rank == 3 ? 4 : 6);
    for (const auto& a : ws)
      for (const auto& b : ws) {
        if (a.empty() || b.empty() || a.back() == oracle::inv(b.front())) continue;
        long lhs = static_cast<long>(oracle::substitute(o, a + b).size());
        long rhs = static_cast<long>(oracle::substitute(o, a).size() + oracle::substitute(o, b).size()) - 2 * B;
        REQUIRE(lhs >= rhs);
      }
    CHECK(tightened_cancellation_bound(phi, 5) <= cancellation_bound(phi));
  }
  CHECK_THROWS_AS(cancellation_bound(endo({"a", "a"})), NotInjectiveError);
  CHECK(observed_cancellation(Endomorphism::identity(Basis::standard(2)), 6) == 0);
  CHECK(observed_cancellation(endo({"aa"}), 6) == 0);
}

TEST_CASE("route equivalence search") {
  auto id = Endomorphism::identity(Basis::standard(2));
  auto same = route_equivalent(w("ab"), w("ab"), endo({"b", "A"}), 3);
  CHECK(same.equivalent);
  CHECK(same.witness.empty());
  auto conj = route_equivalent(w("a"), w("baB"), id, 3);
  CHECK(conj.equivalent);
  CHECK(str(conj.witness) == "b");
  auto ex3 = route_equivalent(w("a"), Word{}, endo({"b", "A"}), 8);
  CHECK_FALSE(ex3.equivalent);
  CHECK_THROWS_AS(route_equivalent(w("a"), w("a"), id, -1), InputError);
}
