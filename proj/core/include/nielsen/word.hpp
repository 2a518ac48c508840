#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace nielsen {

// A letter is a nonzero int: +(i+1) is generator i, -(i+1) its inverse.
using Letter = int;
using Word = std::vector<Letter>;

inline int gen_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline Letter gen_letter(int gen, bool inverted = false) {
  return inverted ? -(gen + 1) : gen + 1;
}

class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<std::string> letters);

  // a, b, c, ... (rank <= 26).
  static Basis standard(std::size_t rank);

  std::size_t rank() const { return letters_.size(); }
  const std::vector<std::string>& letters() const { return letters_; }
  const std::string& name(int gen) const { return letters_.at(gen); }
  int index_of(std::string_view name) const;

  // True when every name is one lowercase ASCII letter, so the compact
  // "abA" syntax applies.
  bool compact() const;

  bool operator==(const Basis&) const = default;

 private:
  std::vector<std::string> letters_;
};

Word reduce(const std::vector<Letter>& raw);
// Also rejects letters outside the basis.
Word reduce(const std::vector<Letter>& raw, const Basis& basis);
bool is_reduced(const Word& w);

Word inverse(const Word& w);
Word multiply(const Word& u, const Word& v);
Word multiply(const Word& u, const Word& v, const Word& w);
Word common_prefix(const Word& w, const Word& v);
Word prefix_of(const Word& w, std::size_t m);

// w = c * core * c^-1 with core cyclically reduced.
Word cyclic_reduce(const Word& w, Word* conjugator = nullptr);

// Compact syntax: lowercase generator, uppercase inverse ("abA").
// Long names: tokens separated by '.', trailing '-' marks an inverse.
Word parse_word(std::string_view text, const Basis& basis);
std::string format_word(const Word& w, const Basis& basis);

// Ordering used by every enumeration: a < A < b < B < ...
inline int letter_rank(Letter l) { return 2 * gen_of(l) + (l < 0 ? 1 : 0); }

// Reduced words of length 0..max_len in length-lexicographic order. The
// visitor returns false to stop early.
void for_each_reduced_word(std::size_t rank, std::size_t max_len,
                           const std::function<bool(const Word&)>& visit);

}  // namespace nielsen
