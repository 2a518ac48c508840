#include "nielsen/boundary.hpp"

#include <algorithm>
#include <numeric>

#include "nielsen/error.hpp"

namespace nielsen {

namespace {

Word rotate_left(const Word& w, std::size_t k) {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[(i + k) % w.size()];
  return out;
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return w;
}

Word periodic_expand(const Word& prefix, const Word& period, std::size_t m) {
  Word out = prefix_of(prefix, m);
  while (out.size() < m) out.push_back(period[(out.size() - prefix.size()) % period.size()]);
  return out;
}

}  // namespace

InfiniteWord InfiniteWord::periodic(const Word& prefix_in, const Word& period_in) {
  if (!is_reduced(prefix_in) || !is_reduced(period_in)) throw InputError("periodic word parts must be reduced");
  Word conj;
  Word q = cyclic_reduce(period_in, &conj);
  if (q.empty()) throw InputError("period reduces to the identity");
  Word p = multiply(prefix_in, conj);
  while (!p.empty() && p.back() == -q.front()) {
    p.pop_back();
    q = rotate_left(q, 1);
  }
  while (!p.empty() && p.back() == q.back()) {
    p.pop_back();
    q = rotate_left(q, q.size() - 1);
  }
  InfiniteWord w;
  w.kind_ = Kind::EvPeriodic;
  w.prefix_ = std::move(p);
  w.period_ = primitive_root(q);
  for (Letter l : w.prefix_) w.rank_ = std::max<std::size_t>(w.rank_, gen_of(l) + 1);
  for (Letter l : w.period_) w.rank_ = std::max<std::size_t>(w.rank_, gen_of(l) + 1);
  return w;
}

InfiniteWord InfiniteWord::morphic(const Word& seed, const Endomorphism& phi, const Word& left) {
  if (seed.empty() || !is_reduced(seed)) throw InputError("morphic seed must be a nonempty reduced word");
  InfiniteWord w;
  w.kind_ = Kind::Morphic;
  w.rank_ = phi.rank();
  w.seed_ = seed;
  w.left_ = left;
  w.endo_ = std::make_shared<const Endomorphism>(phi);
  return w;
}

Word InfiniteWord::morphic_prefix(std::size_t m) const {
  if (m <= cache_valid_) return prefix_of(cache_, m);
  const Endomorphism& phi = *endo_;
  if (image_of(phi, seed_) == seed_) throw StructureError("stationary morphic word: phi fixes the seed");
  std::size_t bound = 0;
  for (const auto& g : phi.images) bound += g.size();
  const std::size_t keep = 2 * m + 4 * bound + 32;
  Word w = seed_;
  int stable = 0;
  for (int iter = 0; iter < 400; ++iter) {
    Word next = prefix_of(image_of(phi, w), keep);
    bool long_enough = next.size() >= m + 2 * bound && w.size() >= m + 2 * bound;
    if (long_enough && prefix_of(next, m + bound) == prefix_of(w, m + bound))
      ++stable;
    else
      stable = 0;
    w = std::move(next);
    if (stable >= 3) {
      cache_ = w;
      cache_valid_ = std::min(w.size(), m + bound);
      return prefix_of(w, m);
    }
  }
  throw StructureError("morphic word does not converge");
}

Word InfiniteWord::prefix(std::size_t m) const {
  if (kind_ == Kind::EvPeriodic) return periodic_expand(prefix_, period_, m);
  if (left_.empty()) return morphic_prefix(m);
  // Cancellation against the left factor eats at most |left| letters.
  Word raw = morphic_prefix(m + left_.size());
  return prefix_of(multiply(left_, raw), m);
}

InfiniteWord InfiniteWord::left_multiply(const Word& u) const {
  if (kind_ == Kind::EvPeriodic) return periodic(multiply(u, prefix_), period_);
  InfiniteWord w = *this;
  w.left_ = multiply(u, left_);
  return w;
}

bool InfiniteWord::same_periodic(const InfiniteWord& other) const {
  return kind_ == Kind::EvPeriodic && other.kind_ == Kind::EvPeriodic && prefix_ == other.prefix_ &&
         period_ == other.period_;
}

AgreeLength agree_length(const InfiniteWord& w, const InfiniteWord& v, std::size_t cap) {
  if (cap == 0) throw InputError("cap must be >= 1");
  if (w.kind() == InfiniteWord::Kind::EvPeriodic && v.kind() == InfiniteWord::Kind::EvPeriodic) {
    if (w.same_periodic(v)) return {cap, true};
    // Distinct eventually periodic words differ within this many letters.
    std::size_t horizon = std::max(w.periodic_prefix().size(), v.periodic_prefix().size()) +
                          w.period().size() + v.period().size();
    std::size_t k = common_prefix(w.prefix(horizon), v.prefix(horizon)).size();
    if (k >= cap) return {cap, true};
    return {k, false};
  }
  std::size_t k = common_prefix(w.prefix(cap), v.prefix(cap)).size();
  if (k >= cap) return {cap, true};
  return {k, false};
}

std::string to_string(AttractionVerdict::Status s) {
  switch (s) {
    case AttractionVerdict::Status::Attracting: return "attracting";
    case AttractionVerdict::Status::FixedNotAttracting: return "fixed-not-attracting";
    case AttractionVerdict::Status::NotFixed: return "not-fixed";
    case AttractionVerdict::Status::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

AttractionVerdict attraction_check(const InfiniteWord& w, const Endomorphism& phi, std::size_t burn_in,
                                   std::size_t window, const FoldedGraph* fix) {
  using S = AttractionVerdict::Status;
  AttractionVerdict v;
  v.bound = cancellation_bound(phi);
  v.burn_in = burn_in ? burn_in : 4 * v.bound + 8;
  v.window = window ? window : std::max<std::size_t>(4, 4 * phi.max_image_length());
  const std::size_t n = v.burn_in + v.window;
  const Word big = w.prefix(n * std::max<std::size_t>(1, phi.max_image_length()) + 1);

  std::vector<long long> offset(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    Word img = image_of(phi, prefix_of(big, i));
    std::size_t k = common_prefix(big, img).size();
    v.evidence.emplace_back(i, k);
    offset[i] = static_cast<long long>(k) - static_cast<long long>(i);
    if (img.size() > v.bound && k < img.size() - v.bound) {
      v.status = S::NotFixed;
      v.detail = "k(" + std::to_string(i) + ")=" + std::to_string(k) + " < |phi(W_i)|-B=" +
                 std::to_string(img.size() - v.bound);
      return v;
    }
  }

  const std::size_t s = std::max<std::size_t>(1, v.window / 4);
  const std::size_t start = v.burn_in;
  auto block_min = [&](std::size_t lo) {
    long long m = offset[lo];
    for (std::size_t i = lo; i < std::min(n + 1, lo + s); ++i) m = std::min(m, offset[i]);
    return m;
  };
  bool growing = offset[start] > static_cast<long long>(v.bound);
  long long prev = block_min(start);
  for (std::size_t lo = start + s; growing && lo + s <= n + 1; lo += s) {
    long long cur = block_min(lo);
    growing = cur >= prev + 1;
    prev = cur;
  }
  if (growing) {
    v.status = S::Attracting;
    v.detail = "offset k(i)-i grows from " + std::to_string(offset[start]) + " to " + std::to_string(offset[n]);
    return v;
  }
  bool constant = true;
  for (std::size_t i = start; i <= n; ++i) constant = constant && offset[i] == offset[start];
  if (constant && fix) {
    BoundaryTrace t = in_boundary_of_subgroup(w, *fix, n);
    if (!t.escapes) {
      v.status = S::FixedNotAttracting;
      v.detail = "constant offset " + std::to_string(offset[start]) + "; word stays in the fixed subgroup graph";
      return v;
    }
  }
  v.status = S::Inconclusive;
  v.detail = constant ? "constant offset without fixed-subgroup certificate" : "offset not monotone over window";
  return v;
}

BoundedEquivalence equivalent_under(const InfiniteWord& w, const InfiniteWord& v, const Endomorphism& phi,
                                    const std::vector<Word>& fix_gens, std::size_t depth) {
  for (const auto& g : fix_gens)
    if (image_of(phi, g) != g) throw StructureError("certificate invalid: generator not fixed");
  BoundedEquivalence out;
  const std::size_t cap = 128;
  auto test = [&](const Word& u) {
    InfiniteWord uw = w.left_multiply(u);
    return agree_length(uw, v, cap).at_cap;
  };
  if (fix_gens.empty()) {
    out.equivalent = test({});
    return out;
  }
  for_each_reduced_word(fix_gens.size(), depth, [&](const Word& abstract) {
    Word u;
    for (Letter l : abstract) u = multiply(u, l > 0 ? fix_gens[gen_of(l)] : inverse(fix_gens[gen_of(l)]));
    if (test(u)) {
      out.equivalent = true;
      out.witness = u;
      return false;
    }
    return true;
  });
  return out;
}

BoundaryTrace in_boundary_of_subgroup(const InfiniteWord& w, const FoldedGraph& h, std::size_t depth) {
  auto at = h.escapes_at(w.prefix(depth));
  if (at) return {true, *at};
  return {false, 0};
}

}  // namespace nielsen
