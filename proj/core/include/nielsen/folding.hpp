#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "nielsen/word.hpp"

namespace nielsen {

// Stallings core graph of a finitely generated subgroup, folded so that no
// state has two outgoing transitions with the same signed letter.
class FoldedGraph {
 public:
  static FoldedGraph from_words(const std::vector<Word>& generators, std::size_t basis_rank);

  std::size_t basis_rank() const { return basis_rank_; }
  std::size_t state_count() const { return out_.size(); }
  std::size_t edge_count() const;
  int base() const { return 0; }
  // Rank of the represented subgroup.
  int rank() const;

  // 1-based index of the first letter with no transition, or nullopt.
  std::optional<std::size_t> escapes_at(const Word& w) const;
  bool contains(const Word& w) const;
  std::optional<int> step(int state, Letter l) const;

  // Free basis read off a BFS spanning tree, in deterministic order.
  std::vector<Word> basis() const;

 private:
  std::size_t basis_rank_ = 0;
  std::vector<std::map<Letter, int>> out_;
};

}  // namespace nielsen
