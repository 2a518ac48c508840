#include "nielsen/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "nielsen/error.hpp"

namespace nielsen {

Basis::Basis(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw InputError("basis must have rank >= 1");
  std::set<std::string> seen;
  for (const auto& n : letters_) {
    if (n.empty()) throw InputError("empty generator name");
    if (!seen.insert(n).second) throw InputError("duplicate generator name '" + n + "'");
  }
}

Basis Basis::standard(std::size_t rank) {
  if (rank == 0 || rank > 26) throw InputError("standard basis needs 1 <= rank <= 26");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  return Basis(std::move(names));
}

int Basis::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == name) return static_cast<int>(i);
  return -1;
}

bool Basis::compact() const {
  return std::all_of(letters_.begin(), letters_.end(), [](const std::string& n) {
    return n.size() == 1 && std::islower(static_cast<unsigned char>(n[0]));
  });
}

Word reduce(const std::vector<Letter>& raw) {
  Word out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw InputError("zero letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word reduce(const std::vector<Letter>& raw, const Basis& basis) {
  for (Letter l : raw)
    if (l == 0 || gen_of(l) >= static_cast<int>(basis.rank()))
      throw InputError("unknown generator index " + std::to_string(l));
  return reduce(raw);
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == -w[i + 1]) return false;
  return std::find(w.begin(), w.end(), 0) == w.end();
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

Word multiply(const Word& u, const Word& v) {
  std::size_t k = 0;
  while (k < u.size() && k < v.size() && u[u.size() - 1 - k] == -v[k]) ++k;
  Word out(u.begin(), u.end() - static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return out;
}

Word multiply(const Word& u, const Word& v, const Word& w) {
  return multiply(multiply(u, v), w);
}

Word common_prefix(const Word& w, const Word& v) {
  std::size_t k = 0;
  while (k < w.size() && k < v.size() && w[k] == v[k]) ++k;
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
}

Word prefix_of(const Word& w, std::size_t m) {
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(m, w.size())));
}

Word cyclic_reduce(const Word& w, Word* conjugator) {
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  if (conjugator) *conjugator = Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
  return Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
}

Word parse_word(std::string_view text, const Basis& basis) {
  std::vector<Letter> raw;
  if (basis.compact()) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c == '1' && text.size() == 1) break;  // "1" denotes the identity
      char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      int g = basis.index_of(std::string(1, lower));
      if (g < 0 || !std::isalpha(static_cast<unsigned char>(c)))
        throw InputError(std::string("unknown generator '") + c + "'");
      raw.push_back(gen_letter(g, std::isupper(static_cast<unsigned char>(c)) != 0));
    }
    return reduce(raw);
  }
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    bool inv = token.back() == '-';
    if (inv) token.pop_back();
    int g = basis.index_of(token);
    if (g < 0) throw InputError("unknown generator '" + token + "'");
    raw.push_back(gen_letter(g, inv));
    token.clear();
  };
  for (char c : text) {
    if (c == '.' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      token.push_back(c);
  }
  flush();
  return reduce(raw);
}

std::string format_word(const Word& w, const Basis& basis) {
  std::string out;
  if (basis.compact()) {
    for (Letter l : w) {
      char c = basis.name(gen_of(l))[0];
      out.push_back(l < 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
    }
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back('.');
    out += basis.name(gen_of(w[i]));
    if (w[i] < 0) out.push_back('-');
  }
  return out;
}

void for_each_reduced_word(std::size_t rank, std::size_t max_len,
                           const std::function<bool(const Word&)>& visit) {
  Word w;
  if (!visit(w)) return;
  const int alphabet = static_cast<int>(2 * rank);
  auto letter_at = [](int r) { return r % 2 == 0 ? r / 2 + 1 : -(r / 2 + 1); };
  // Depth-first over each fixed length yields lexicographic order.
  std::function<bool(std::size_t)> extend = [&](std::size_t len) {
    if (w.size() == len) return visit(w);
    for (int r = 0; r < alphabet; ++r) {
      Letter l = letter_at(r);
      if (!w.empty() && w.back() == -l) continue;
      w.push_back(l);
      bool go_on = extend(len);
      w.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  for (std::size_t len = 1; len <= max_len; ++len)
    if (!extend(len)) return;
}

}  // namespace nielsen
