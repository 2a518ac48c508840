#include "nielsen/folding.hpp"

#include <deque>
#include <numeric>
#include <utility>

namespace nielsen {

namespace {

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

}  // namespace

FoldedGraph FoldedGraph::from_words(const std::vector<Word>& generators, std::size_t basis_rank) {
  UnionFind uf;
  std::vector<std::map<Letter, int>> adj;
  auto new_state = [&] {
    adj.emplace_back();
    return uf.add();
  };
  new_state();

  // Pending identifications; processed after all petals are in place.
  std::deque<std::pair<int, int>> merges;
  auto link = [&](int from, Letter l, int to) {
    auto add_half = [&](int s, Letter x, int t) {
      auto [it, fresh] = adj[s].emplace(x, t);
      if (!fresh) merges.emplace_back(it->second, t);
    };
    add_half(from, l, to);
    add_half(to, -l, from);
  };

  for (const Word& g : generators) {
    if (g.empty()) continue;
    int cur = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      int next = (i + 1 == g.size()) ? 0 : new_state();
      link(cur, g[i], next);
      cur = next;
    }
  }

  while (!merges.empty()) {
    auto [x, y] = merges.front();
    merges.pop_front();
    x = uf.find(x);
    y = uf.find(y);
    if (x == y) continue;
    if (y < x) std::swap(x, y);
    uf.parent[y] = x;
    for (auto [l, t] : adj[y]) {
      auto [it, fresh] = adj[x].emplace(l, t);
      if (!fresh) merges.emplace_back(it->second, t);
    }
    adj[y].clear();
  }

  // Compact the surviving states, keeping the base at index 0.
  std::vector<int> index(adj.size(), -1);
  FoldedGraph g;
  g.basis_rank_ = basis_rank;
  for (std::size_t s = 0; s < adj.size(); ++s)
    if (uf.find(static_cast<int>(s)) == static_cast<int>(s)) {
      index[s] = static_cast<int>(g.out_.size());
      g.out_.emplace_back();
    }
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (index[s] < 0) continue;
    for (auto [l, t] : adj[s]) g.out_[index[s]][l] = index[uf.find(t)];
  }
  return g;
}

std::size_t FoldedGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& m : out_)
    for (const auto& kv : m)
      if (kv.first > 0) ++e;
  return e;
}

int FoldedGraph::rank() const {
  if (edge_count() == 0) return 0;
  return static_cast<int>(edge_count()) - static_cast<int>(out_.size()) + 1;
}

std::optional<int> FoldedGraph::step(int state, Letter l) const {
  auto it = out_[state].find(l);
  if (it == out_[state].end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FoldedGraph::escapes_at(const Word& w) const {
  int s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto n = step(s, w[i]);
    if (!n) return i + 1;
    s = *n;
  }
  return std::nullopt;
}

bool FoldedGraph::contains(const Word& w) const {
  int s = 0;
  for (Letter l : w) {
    auto n = step(s, l);
    if (!n) return false;
    s = *n;
  }
  return s == 0;
}

std::vector<Word> FoldedGraph::basis() const {
  const std::size_t n = out_.size();
  std::vector<Word> path(n);
  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  // Tree edges recorded as (state, letter) with letter > 0 normalised.
  std::vector<std::map<Letter, bool>> tree(n);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (auto [l, t] : out_[s]) {
      if (seen[t]) continue;
      seen[t] = true;
      tree[s][l] = true;
      tree[t][-l] = true;
      path[t] = path[s];
      path[t].push_back(l);
      queue.push_back(t);
    }
  }
  std::vector<Word> gens;
  for (std::size_t s = 0; s < n; ++s)
    for (auto [l, t] : out_[s]) {
      if (l < 0 || tree[s].count(l)) continue;
      Word w = path[s];
      w.push_back(l);
      Word back = path[t];
      gens.push_back(multiply(w, inverse(back)));
    }
  return gens;
}

}  // namespace nielsen
