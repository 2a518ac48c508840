#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/word.hpp"

namespace nielsen {

struct Endomorphism {
  Basis basis;
  std::vector<Word> images;

  Endomorphism() = default;
  Endomorphism(Basis b, std::vector<Word> imgs);

  static Endomorphism identity(const Basis& b);

  std::size_t rank() const { return basis.rank(); }
  const Word& image(int gen) const { return images.at(gen); }
  std::size_t max_image_length() const;

  bool operator==(const Endomorphism&) const = default;
};

Word image_of(const Endomorphism& phi, const Word& w);
Word apply_power(const Endomorphism& phi, const Word& w, int k);

// (phi o psi)(g) = phi(psi(g)).
Endomorphism compose(const Endomorphism& phi, const Endomorphism& psi);
// i_c o phi: g -> c phi(g) c^-1.
Endomorphism inner_twist(const Word& c, const Endomorphism& phi);
// i_c o phi o i_c^-1, a member of the similarity class of phi.
Endomorphism conjugate_by(const Word& c, const Endomorphism& phi);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// M[j][i] = exponent sum of generator j in phi(g_i).
IntMatrix abelianization(const Endomorphism& phi);
std::int64_t trace(const IntMatrix& m);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

bool is_injective(const Endomorphism& phi);

// Sum of image lengths. Throws NotInjectiveError when phi is not injective.
std::size_t cancellation_bound(const Endomorphism& phi);

// Smallest B that survives exhaustive falsification over cancellation-free
// products W.V with |W|, |V| <= max_len. Never exceeds cancellation_bound.
std::size_t tightened_cancellation_bound(const Endomorphism& phi, std::size_t max_len);

// Largest observed value of (|phi(W)| + |phi(V)| - |phi(WV)|) / 2 over the
// same search space; used by tests and the tightening pass.
std::size_t observed_cancellation(const Endomorphism& phi, std::size_t max_len);

struct RouteSearch {
  bool equivalent = false;
  Word witness;          // u with w' = u w phi(u)^-1
  std::size_t depth = 0; // search depth used
};

// Length-lex search over u with |u| <= depth.
RouteSearch route_equivalent(const Word& w, const Word& w2, const Endomorphism& phi, int depth);

std::string format_endo(const Endomorphism& phi);

}  // namespace nielsen
