#include "nielsen/endo.hpp"

#include <algorithm>

#include "nielsen/error.hpp"
#include "nielsen/folding.hpp"

namespace nielsen {

Endomorphism::Endomorphism(Basis b, std::vector<Word> imgs) : basis(std::move(b)), images(std::move(imgs)) {
  if (images.size() != basis.rank()) throw InputError("endomorphism needs one image per generator");
  for (auto& w : images) w = reduce(w, basis);
}

Endomorphism Endomorphism::identity(const Basis& b) {
  std::vector<Word> imgs;
  for (std::size_t i = 0; i < b.rank(); ++i) imgs.push_back({gen_letter(static_cast<int>(i))});
  return Endomorphism(b, std::move(imgs));
}

std::size_t Endomorphism::max_image_length() const {
  std::size_t m = 0;
  for (const auto& w : images) m = std::max(m, w.size());
  return m;
}

Word image_of(const Endomorphism& phi, const Word& w) {
  std::vector<Letter> raw;
  for (Letter l : w) {
    const Word& img = phi.images.at(gen_of(l));
    if (l > 0)
      raw.insert(raw.end(), img.begin(), img.end());
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it) raw.push_back(-*it);
  }
  return reduce(raw);
}

Word apply_power(const Endomorphism& phi, const Word& w, int k) {
  Word out = w;
  for (int i = 0; i < k; ++i) out = image_of(phi, out);
  return out;
}

Endomorphism compose(const Endomorphism& phi, const Endomorphism& psi) {
  if (!(phi.basis == psi.basis)) throw InputError("basis mismatch");
  std::vector<Word> imgs;
  for (const auto& w : psi.images) imgs.push_back(image_of(phi, w));
  return Endomorphism(phi.basis, std::move(imgs));
}

Endomorphism inner_twist(const Word& c, const Endomorphism& phi) {
  Word ci = inverse(c);
  std::vector<Word> imgs;
  for (const auto& w : phi.images) imgs.push_back(multiply(c, w, ci));
  return Endomorphism(phi.basis, std::move(imgs));
}

Endomorphism conjugate_by(const Word& c, const Endomorphism& phi) {
  // i_c phi i_c^-1 (g) = c phi(c^-1 g c) c^-1 = (c phi(c)^-1) phi(g) (phi(c) c^-1)
  return inner_twist(multiply(c, inverse(image_of(phi, c))), phi);
}

IntMatrix abelianization(const Endomorphism& phi) {
  const std::size_t n = phi.rank();
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (Letter l : phi.images[i]) m[gen_of(l)][i] += l > 0 ? 1 : -1;
  return m;
}

std::int64_t trace(const IntMatrix& m) {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, std::vector<std::int64_t>(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < p; ++l) c[i][l] += a[i][j] * b[j][l];
  return c;
}

bool is_injective(const Endomorphism& phi) {
  return FoldedGraph::from_words(phi.images, phi.rank()).rank() == static_cast<int>(phi.rank());
}

std::size_t cancellation_bound(const Endomorphism& phi) {
  if (!is_injective(phi)) throw NotInjectiveError();
  std::size_t b = 0;
  for (const auto& w : phi.images) b += w.size();
  return b;
}

std::size_t observed_cancellation(const Endomorphism& phi, std::size_t max_len) {
  // Cancellation in phi(W)phi(V) is the common prefix of phi(W)^-1 and
  // phi(V). One trie of images per first letter of V answers every W at once.
  const std::size_t alphabet = 2 * phi.rank();
  struct Trie {
    std::vector<int> child;
    std::size_t width;
    explicit Trie(std::size_t w) : child(w, -1), width(w) {}
    void insert(const Word& w) {
      std::size_t node = 0;
      for (Letter l : w) {
        std::size_t slot = node * width + static_cast<std::size_t>(letter_rank(l));
        if (child[slot] < 0) {
          child[slot] = static_cast<int>(child.size() / width);
          child.resize(child.size() + width, -1);
        }
        node = static_cast<std::size_t>(child[slot]);
      }
    }
    std::size_t walk(const Word& w) const {
      std::size_t node = 0, depth = 0;
      for (Letter l : w) {
        int next = child[node * width + static_cast<std::size_t>(letter_rank(l))];
        if (next < 0) break;
        node = static_cast<std::size_t>(next);
        ++depth;
      }
      return depth;
    }
  };
  std::vector<Trie> by_first(alphabet, Trie(alphabet));
  std::vector<std::pair<Letter, Word>> inv_images;
  for_each_reduced_word(phi.rank(), max_len, [&](const Word& w) {
    if (w.empty()) return true;
    Word img = image_of(phi, w);
    by_first[static_cast<std::size_t>(letter_rank(w.front()))].insert(img);
    inv_images.emplace_back(w.back(), inverse(img));
    return true;
  });
  std::size_t worst = 0;
  for (const auto& [last, inv] : inv_images)
    for (std::size_t r = 0; r < alphabet; ++r) {
      Letter first = (r % 2 == 0) ? static_cast<Letter>(r / 2 + 1) : -static_cast<Letter>(r / 2 + 1);
      if (first == -last) continue;
      worst = std::max(worst, by_first[r].walk(inv));
    }
  return worst;
}

std::size_t tightened_cancellation_bound(const Endomorphism& phi, std::size_t max_len) {
  std::size_t b = cancellation_bound(phi);
  return std::min(b, observed_cancellation(phi, max_len));
}

RouteSearch route_equivalent(const Word& w, const Word& w2, const Endomorphism& phi, int depth) {
  if (depth < 0) throw InputError("depth must be >= 0");
  RouteSearch out;
  out.depth = static_cast<std::size_t>(depth);
  for_each_reduced_word(phi.rank(), out.depth, [&](const Word& u) {
    if (multiply(u, w, inverse(image_of(phi, u))) == w2) {
      out.equivalent = true;
      out.witness = u;
      return false;
    }
    return true;
  });
  return out;
}

std::string format_endo(const Endomorphism& phi) {
  std::string s;
  for (std::size_t i = 0; i < phi.rank(); ++i) {
    if (i) s += ", ";
    s += phi.basis.name(static_cast<int>(i)) + "->" + format_word(phi.images[i], phi.basis);
    if (phi.images[i].empty()) s += "1";
  }
  return s;
}

}  // namespace nielsen
