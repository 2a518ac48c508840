#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/endo.hpp"
#include "nielsen/folding.hpp"

namespace nielsen {

// A point of the boundary of the free group: an infinite reduced word.
class InfiniteWord {
 public:
  enum class Kind { EvPeriodic, Morphic };

  // prefix . period . period ... ; stored in normal form (shortest prefix,
  // primitive cyclically reduced period).
  static InfiniteWord periodic(const Word& prefix, const Word& period);
  // left . lim phi^k(seed). The limit is generated lazily.
  static InfiniteWord morphic(const Word& seed, const Endomorphism& phi, const Word& left = {});

  Kind kind() const { return kind_; }
  const Word& periodic_prefix() const { return prefix_; }
  const Word& period() const { return period_; }
  const Word& seed() const { return seed_; }
  const Word& left_factor() const { return left_; }
  const Endomorphism& endo() const { return *endo_; }
  std::size_t rank() const { return rank_; }

  // First m letters. Throws StructureError for a stationary or
  // non-converging morphic ray.
  Word prefix(std::size_t m) const;

  InfiniteWord left_multiply(const Word& u) const;

  // Exact for two eventually periodic words.
  bool same_periodic(const InfiniteWord& other) const;

 private:
  Word morphic_prefix(std::size_t m) const;

  Kind kind_ = Kind::EvPeriodic;
  std::size_t rank_ = 0;
  Word prefix_, period_;
  Word seed_, left_;
  std::shared_ptr<const Endomorphism> endo_;
  // Generated frontier of the raw ray (without the left factor).
  mutable Word cache_;
  mutable std::size_t cache_valid_ = 0;
};

struct AgreeLength {
  std::size_t length = 0;
  bool at_cap = false;  // true means ">= cap"
};

AgreeLength agree_length(const InfiniteWord& w, const InfiniteWord& v, std::size_t cap);

struct AttractionVerdict {
  enum class Status { Attracting, FixedNotAttracting, NotFixed, Inconclusive };
  Status status = Status::Inconclusive;
  std::vector<std::pair<std::size_t, std::size_t>> evidence;  // (i, k(i))
  std::size_t burn_in = 0, window = 0, bound = 0;
  std::string detail;
};

std::string to_string(AttractionVerdict::Status s);

// burn_in / window of 0 select the defaults 4B + 8 and 4 * max image length.
// fix, when given, certifies a subgroup of fix(phi) for the
// fixed-not-attracting verdict.
AttractionVerdict attraction_check(const InfiniteWord& w, const Endomorphism& phi,
                                   std::size_t burn_in = 0, std::size_t window = 0,
                                   const FoldedGraph* fix = nullptr);

struct BoundedEquivalence {
  bool equivalent = false;
  Word witness;
};

// Search U in the ball of radius depth of <fix_gens> with U.W = V. Every
// generator must be fixed by phi.
BoundedEquivalence equivalent_under(const InfiniteWord& w, const InfiniteWord& v,
                                    const Endomorphism& phi, const std::vector<Word>& fix_gens,
                                    std::size_t depth);

struct BoundaryTrace {
  bool escapes = false;
  std::size_t at = 0;  // 1-based letter index when escapes
};

BoundaryTrace in_boundary_of_subgroup(const InfiniteWord& w, const FoldedGraph& h, std::size_t depth);

}  // namespace nielsen
