#include "nielsen/rtt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "nielsen/error.hpp"

namespace nielsen {

namespace {

std::vector<std::string> edge_names(const Graph& g, const std::vector<int>& edges) {
  std::vector<std::string> out;
  for (int e : edges) out.push_back(g.edges[e].name);
  return out;
}

// Tarjan's algorithm over the crossing digraph e -> edges in f(e).
std::vector<std::vector<int>> strongly_connected(const std::vector<std::set<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on(n, false);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(comp);
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comps;
}

std::vector<std::set<int>> crossing_digraph(const GraphMap& f) {
  std::vector<std::set<int>> adj(f.graph.edges.size());
  for (std::size_t e = 0; e < adj.size(); ++e)
    for (int oe : f.edge_images[e].edges) adj[e].insert(geom(oe));
  return adj;
}

}  // namespace

Filtration derive_filtration(const GraphMap& f) {
  auto adj = crossing_digraph(f);
  auto comps = strongly_connected(adj);
  std::vector<int> comp_of(adj.size());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int e : comps[c]) comp_of[e] = static_cast<int>(c);
  // Place a component once everything its edges cross is placed; among the
  // ready ones take the smallest edge id.
  std::vector<bool> placed(comps.size(), false);
  Filtration filt;
  for (std::size_t round = 0; round < comps.size(); ++round) {
    int best = -1;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (placed[c]) continue;
      bool ready = true;
      for (int e : comps[c])
        for (int x : adj[e])
          if (comp_of[x] != static_cast<int>(c) && !placed[comp_of[x]]) ready = false;
      if (ready && (best < 0 || comps[c].front() < comps[best].front())) best = static_cast<int>(c);
    }
    placed[best] = true;
    filt.strata.push_back(comps[best]);
  }
  return filt;
}

void validate_filtration(const GraphMap& f, const Filtration& filt) {
  const std::size_t ne = f.graph.edges.size();
  std::vector<int> level(ne, -1);
  for (std::size_t l = 0; l < filt.strata.size(); ++l) {
    if (filt.strata[l].empty()) throw InputError("empty stratum in filtration");
    for (int e : filt.strata[l]) {
      if (e < 0 || e >= static_cast<int>(ne)) throw InputError("filtration names an unknown edge");
      if (level[e] >= 0) throw InputError("edge " + f.graph.edges[e].name + " appears in two strata");
      level[e] = static_cast<int>(l);
    }
  }
  for (std::size_t e = 0; e < ne; ++e) {
    if (level[e] < 0) throw InputError("filtration omits edge " + f.graph.edges[e].name);
    for (int oe : f.edge_images[e].edges)
      if (level[geom(oe)] > level[e])
        throw InputError("filtration level " + std::to_string(level[e] + 1) + " is not invariant: image of " +
                         f.graph.edges[e].name + " crosses " + f.graph.edges[geom(oe)].name);
  }
}

bool irreducible(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return false;
  std::vector<std::set<int>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] > 0) adj[i].insert(static_cast<int>(j));
  auto comps = strongly_connected(adj);
  if (comps.size() != 1) return false;
  if (n == 1) return m[0][0] > 0;
  return true;
}

PFResult pf_metric(const IntMatrix& t, double tol) {
  if (!irreducible(t)) throw StructureError("transition matrix is reducible");
  const std::size_t n = t.size();
  PFResult r;
  if (n == 1) {
    r.lambda = static_cast<double>(t[0][0]);
    r.L = {1.0};
    r.exact = true;
  } else if (n == 2) {
    const double a = static_cast<double>(t[0][0]), b = static_cast<double>(t[0][1]);
    const double c = static_cast<double>(t[1][0]), d = static_cast<double>(t[1][1]);
    const double tr = a + d, det = a * d - b * c;
    r.lambda = (tr + std::sqrt(tr * tr - 4 * det)) / 2;
    // (a - lambda) x + b y = 0 with b > 0 by irreducibility.
    r.L = {b, r.lambda - a};
    r.exact = true;
  } else {
    // Power iteration on T + I: same eigenvector, no periodicity issues.
    std::vector<double> x(n, 1.0), y(n);
    for (int it = 0; it < 200000; ++it) {
      double mx = 0;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i];
        for (std::size_t j = 0; j < n; ++j) y[i] += static_cast<double>(t[i][j]) * x[j];
        mx = std::max(mx, y[i]);
      }
      double diff = 0;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] /= mx;
        diff = std::max(diff, std::abs(y[i] - x[i]));
      }
      x.swap(y);
      if (diff < tol * 1e-3) break;
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double tx = 0;
      for (std::size_t j = 0; j < n; ++j) tx += static_cast<double>(t[i][j]) * x[j];
      num += tx * x[i];
      den += x[i] * x[i];
    }
    r.lambda = num / den;
    r.L = x;
  }
  double mn = *std::min_element(r.L.begin(), r.L.end());
  if (mn <= 0) throw StructureError("PF eigenvector is not positive");
  for (auto& v : r.L) v /= mn;
  for (std::size_t i = 0; i < n; ++i) {
    double tx = 0;
    for (std::size_t j = 0; j < n; ++j) tx += static_cast<double>(t[i][j]) * r.L[j];
    r.residual = std::max(r.residual, std::abs(tx - r.lambda * r.L[i]));
  }
  if (r.lambda <= 1 + tol) throw StructureError("spectral radius <= 1: not an expanding stratum");
  return r;
}

std::string to_string(StratumKind k) {
  switch (k) {
    case StratumKind::Type1: return "Type1";
    case StratumKind::Type2: return "Type2";
    case StratumKind::Type3: return "Type3";
    case StratumKind::Linear: return "Linear";
  }
  return "Type1";
}

std::string to_string(InpResult::Status s) {
  switch (s) {
    case InpResult::Status::Found: return "found";
    case InpResult::Status::CertifiedNone: return "certified-none";
    case InpResult::Status::NoneWithinBound: return "none-within-bound";
  }
  return "none-within-bound";
}

bool verify_nielsen_path(const GraphMap& f, const EdgePath& p) {
  if (f.vertex_map[p.start] != p.start || f.vertex_map[p.end(f.graph)] != p.end(f.graph))
    throw InputError("Nielsen path endpoints must be fixed");
  return !p.trivial() && map_path(f, p) == p;
}

bool is_indivisible_nielsen(const GraphMap& f, const EdgePath& p) {
  if (!verify_nielsen_path(f, p)) return false;
  EdgePath pre{p.start, {}};
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
    pre.edges.push_back(p.edges[i]);
    int v = pre.end(f.graph);
    if (f.vertex_map[v] == v && map_path(f, pre) == pre) return false;
  }
  return true;
}

double path_length(const EdgePath& p, const std::vector<double>& edge_length) {
  double s = 0;
  for (int oe : p.edges) s += edge_length[geom(oe)];
  return s;
}

std::optional<NielsenPathInfo> split_legs(const GraphMap& f, const EdgePath& p) {
  const Graph& g = f.graph;
  for (std::size_t j = 1; j < p.edges.size(); ++j) {
    EdgePath p1{p.start, std::vector<int>(p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(j))};
    EdgePath rest{p1.end(g), std::vector<int>(p.edges.begin() + static_cast<std::ptrdiff_t>(j), p.edges.end())};
    EdgePath p2 = reverse_path(rest, g);
    EdgePath f1 = map_path(f, p1), f2 = map_path(f, p2);
    auto tail_of = [&](const EdgePath& leg, const EdgePath& img) -> std::optional<EdgePath> {
      if (img.edges.size() < leg.edges.size() ||
          !std::equal(leg.edges.begin(), leg.edges.end(), img.edges.begin()))
        return std::nullopt;
      return EdgePath{leg.end(g), std::vector<int>(img.edges.begin() + static_cast<std::ptrdiff_t>(leg.size()),
                                                   img.edges.end())};
    };
    auto t1 = tail_of(p1, f1), t2 = tail_of(p2, f2);
    if (t1 && t2 && *t1 == *t2 && !t1->trivial()) {
      NielsenPathInfo info;
      info.path = p;
      info.has_legs = true;
      info.p1 = p1;
      info.p2 = p2;
      info.tail = *t1;
      return info;
    }
  }
  return std::nullopt;
}

std::vector<EdgePath> brute_nielsen_paths(const GraphMap& f, std::size_t max_len, bool indivisible_only,
                                          const std::vector<int>& must_cross) {
  const Graph& g = f.graph;
  std::set<int> cross(must_cross.begin(), must_cross.end());
  std::vector<EdgePath> out;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> dirs(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) dirs[v] = g.directions_at(static_cast<int>(v));
  EdgePath cur;
  std::function<void()> extend = [&] {
    int at = cur.end(g);
    if (!cur.trivial() && f.vertex_map[at] == at) {
      bool crosses = cross.empty() ||
                     std::any_of(cur.edges.begin(), cur.edges.end(), [&](int oe) { return cross.count(geom(oe)) > 0; });
      if (crosses && map_path(f, cur) == cur && (!indivisible_only || is_indivisible_nielsen(f, cur))) {
        EdgePath r = reverse_path(cur, g);
        if (!seen.count(r.edges) && seen.insert(cur.edges).second) out.push_back(cur);
      }
    }
    if (cur.size() == max_len) return;
    for (int d : dirs[at]) {
      if (!cur.trivial() && d == rev(cur.edges.back())) continue;
      cur.edges.push_back(d);
      extend();
      cur.edges.pop_back();
    }
  };
  for (int v : fixed_vertices(f)) {
    cur = EdgePath{v, {}};
    extend();
  }
  return out;
}

EdgePath ray_prefix(const GraphMap& f, int d, std::size_t n) {
  const std::size_t keep = 2 * n + 4 * f.total_image_length() + 16;
  EdgePath p{f.graph.origin(d), {d}};
  int stable = 0;
  for (int it = 0; it < 400; ++it) {
    EdgePath q = map_path(f, p);
    if (q.edges.size() > keep) q.edges.resize(keep);
    const std::size_t m = std::min(n, q.edges.size());
    bool same = q.edges.size() >= p.edges.size() && p.edges.size() >= m &&
                std::equal(q.edges.begin(), q.edges.begin() + static_cast<std::ptrdiff_t>(m), p.edges.begin());
    stable = same ? stable + 1 : 0;
    bool grown = q.edges.size() >= n + 2 * f.total_image_length() || q == p;
    p = std::move(q);
    if (stable >= 3 && grown) {
      if (p.edges.size() > n) p.edges.resize(n);
      return p;
    }
  }
  throw StructureError("ray from " + f.graph.oriented_name(d) + " does not converge");
}

namespace {

InpResult find_inp_type3(const GraphMap& f, const StratumInfo& s, const std::vector<double>& len,
                         const RttOptions& opt) {
  const Graph& g = f.graph;
  InpResult r;
  const double lambda = s.pf->lambda;
  double bl = 0;
  for (int e : s.edges) bl += path_length(f.edge_images[e], len);
  r.l_bound = bl * lambda / (lambda - 1);
  r.note = "leg bound L <= B_L*lambda/(lambda-1) assumed from bounded cancellation";

  struct Leg {
    int dir;
    EdgePath path;
    EdgePath tail;
  };
  std::vector<Leg> legs;
  bool exhausted = true;
  for (int d : s.fixed_directions) {
    std::size_t n = 16;
    EdgePath ray;
    for (;;) {
      ray = ray_prefix(f, d, n);
      if (path_length(ray, len) > r.l_bound) break;
      if (ray.size() < n || n >= opt.ray_cap) {
        exhausted = false;
        break;
      }
      n = std::min(opt.ray_cap, 2 * n);
    }
    r.search_len = std::max(r.search_len, ray.size());
    EdgePath pre{ray.start, {}};
    for (int oe : ray.edges) {
      pre.edges.push_back(oe);
      if (path_length(pre, len) > r.l_bound + opt.tol) break;
      EdgePath img = map_path(f, pre);
      if (img.size() < pre.size() || !std::equal(pre.edges.begin(), pre.edges.end(), img.edges.begin())) continue;
      EdgePath tail{pre.end(g), std::vector<int>(img.edges.begin() + static_cast<std::ptrdiff_t>(pre.size()),
                                                 img.edges.end())};
      legs.push_back({d, pre, tail});
    }
  }

  std::set<std::vector<int>> found_keys;
  for (std::size_t i = 0; i < legs.size(); ++i)
    for (std::size_t j = i + 1; j < legs.size(); ++j) {
      const Leg &a = legs[i], &b = legs[j];
      if (a.dir == b.dir || !(a.tail == b.tail)) continue;
      int la = a.path.edges.back(), lb = b.path.edges.back();
      if (la == lb) continue;
      if (derivative(f, rev(la)) != derivative(f, rev(lb))) continue;  // one-step illegal turn
      EdgePath p = concat(g, a.path, reverse_path(b.path, g));
      if (p.size() != a.path.size() + b.path.size()) continue;
      if (!is_indivisible_nielsen(f, p)) continue;
      EdgePath pr = reverse_path(p, g);
      if (found_keys.count(pr.edges) || !found_keys.insert(p.edges).second) continue;
      NielsenPathInfo info;
      info.path = p;
      info.has_legs = true;
      info.p1 = a.path;
      info.p2 = b.path;
      info.tail = a.tail;
      info.leg_length_1 = path_length(a.path, len);
      info.leg_length_2 = path_length(b.path, len);
      if (std::abs(info.leg_length_1 - info.leg_length_2) > 1e-6 * std::max(1.0, info.leg_length_1))
        throw UnclassifiableError("structure violation: iNp legs have different L-lengths", edge_names(f.graph, s.edges));
      r.paths.push_back(info);
    }
  if (r.paths.size() > 1)
    throw UnclassifiableError("structure violation: two indivisible Nielsen paths cross the stratum",
                              edge_names(f.graph, s.edges));
  if (!r.paths.empty())
    r.status = InpResult::Status::Found;
  else
    r.status = exhausted ? InpResult::Status::CertifiedNone : InpResult::Status::NoneWithinBound;
  return r;
}

}  // namespace

StratumInfo classify_stratum(const GraphMap& f, const Filtration& filt, int level, const RttOptions& opt) {
  const Graph& g = f.graph;
  StratumInfo s;
  s.level = level;
  s.edges = filt.strata.at(static_cast<std::size_t>(level - 1));
  const std::size_t k = s.edges.size();
  std::map<int, int> pos;
  for (std::size_t i = 0; i < k; ++i) pos[s.edges[i]] = static_cast<int>(i);
  std::set<int> lower;
  for (int l = 0; l + 1 < level; ++l)
    for (int e : filt.strata[static_cast<std::size_t>(l)]) lower.insert(e);
  auto in_stratum = [&](int oe) { return pos.count(geom(oe)) > 0; };

  s.transition.assign(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (int oe : f.edge_images[s.edges[i]].edges)
      if (in_stratum(oe)) ++s.transition[i][pos[geom(oe)]];

  for (int e : s.edges)
    for (int oe : {2 * e, 2 * e + 1}) {
      int v = g.origin(oe);
      if (f.vertex_map[v] == v && derivative(f, oe) == oe) s.fixed_directions.push_back(oe);
    }
  for (int e : s.edges)
    for (int oe : {2 * e, 2 * e + 1})
      for (int other : g.directions_at(g.origin(oe)))
        if (other > oe && in_stratum(other) && classify_turn(f, oe, other) == TurnStatus::Illegal)
          s.illegal_turns.emplace_back(oe, other);

  auto unclassifiable = [&](const std::string& why) { throw UnclassifiableError(why, edge_names(g, s.edges)); };

  bool zero = true, perm = true;
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t row = 0;
    for (auto x : s.transition[i]) {
      row += x;
      zero = zero && x == 0;
    }
    perm = perm && row == 1;
  }
  for (std::size_t j = 0; j < k && perm; ++j) {
    std::int64_t col = 0;
    for (std::size_t i = 0; i < k; ++i) col += s.transition[i][j];
    perm = col == 1;
  }

  if (zero) {
    s.kind = StratumKind::Type1;
    s.inp.status = InpResult::Status::CertifiedNone;
    s.inp.note = "stratum maps into the lower level";
  } else if (perm && std::all_of(s.edges.begin(), s.edges.end(), [&](int e) { return f.edge_images[e].size() == 1; })) {
    if (!irreducible(s.transition)) unclassifiable("permutation is not a single cycle");
    s.kind = StratumKind::Type2;
    if (k == 1 && pointwise_fixed(f, s.edges[0])) {
      s.pointwise = true;
      // Only the tip at the origin counts as initially expanded.
      s.fixed_directions = {2 * s.edges[0]};
      NielsenPathInfo info;
      info.path = EdgePath{g.edges[s.edges[0]].from, {2 * s.edges[0]}};
      s.inp.paths.push_back(info);
      s.inp.status = InpResult::Status::Found;
      s.inp.note = "edge fixed pointwise";
    } else {
      s.inp.status = InpResult::Status::CertifiedNone;
      s.inp.note = "edges permuted without fixed tips";
    }
  } else if (k == 1 && s.transition[0][0] == 1) {
    s.kind = StratumKind::Linear;
    s.inp.search_len = opt.linear_search_len;
    std::vector<EdgePath> paths;
    for (auto& p : brute_nielsen_paths(f, opt.linear_search_len, true, s.edges))
      if (std::all_of(p.edges.begin(), p.edges.end(), [&](int oe) { return in_stratum(oe) || lower.count(geom(oe)) > 0; }))
        paths.push_back(std::move(p));
    for (const auto& p : paths) {
      NielsenPathInfo info;
      if (auto legs = split_legs(f, p)) info = *legs;
      info.path = p;
      s.inp.paths.push_back(info);
    }
    s.inp.status = paths.empty() ? InpResult::Status::NoneWithinBound : InpResult::Status::Found;
    s.inp.note = "brute-force search over tight paths";
  } else {
    if (perm) unclassifiable("permuted edges with nontrivial lower images");
    if (!irreducible(s.transition)) unclassifiable("reducible transition matrix");
    s.pf = pf_metric(s.transition, opt.tol);
    s.kind = StratumKind::Type3;
    for (int e : s.edges)
      for (int oe : {2 * e, 2 * e + 1})
        if (int d = derivative(f, oe); d < 0 || !in_stratum(d)) unclassifiable("derivative leaves the stratum at " + g.oriented_name(oe));
    std::vector<double> len(g.edges.size(), 0.0);
    for (std::size_t i = 0; i < k; ++i) len[s.edges[i]] = s.pf->L[i];
    for (int e : s.edges) {
      const auto& img = f.edge_images[e].edges;
      std::size_t prev = img.size();
      for (std::size_t i = 0; i < img.size(); ++i) {
        if (!in_stratum(img[i])) continue;
        if (prev < img.size()) {
          if (prev + 1 == i) {
            if (classify_turn(f, rev(img[prev]), img[i]) == TurnStatus::Illegal)
              unclassifiable("illegal turn inside the image of " + g.edges[e].name);
          } else {
            EdgePath sigma{g.terminus(img[prev]),
                           std::vector<int>(img.begin() + static_cast<std::ptrdiff_t>(prev) + 1,
                                            img.begin() + static_cast<std::ptrdiff_t>(i))};
            if (map_path(f, sigma).trivial())
              unclassifiable("connecting path inside the image of " + g.edges[e].name + " collapses");
          }
        }
        prev = i;
      }
    }
    for (int e : s.edges) {
      EdgePath it{g.edges[e].from, {2 * e}};
      double expect = len[e];
      for (int step = 1; step <= 3; ++step) {
        it = map_path(f, it);
        expect *= s.pf->lambda;
        if (std::abs(path_length(it, len) - expect) > 1e-6 * expect)
          unclassifiable("iterate " + std::to_string(step) + " of " + g.edges[e].name + " is not L-expanded by lambda");
      }
    }
    s.inp = find_inp_type3(f, s, len, opt);
  }

  if (level == 1) {
    std::map<int, int> val;
    for (int e : s.edges) {
      ++val[g.edges[e].from];
      ++val[g.edges[e].to];
    }
    bool circle = std::all_of(val.begin(), val.end(), [](auto kv) { return kv.second == 2; });
    if (circle) {
      try {
        s.circle_degree = circle_degree(f, s.edges);
      } catch (const InputError&) {
        s.circle_degree.reset();
      }
    }
  }
  return s;
}

std::vector<StratumInfo> classify_all(const GraphMap& f, const Filtration& filt, const RttOptions& opt) {
  validate_filtration(f, filt);
  std::vector<StratumInfo> out;
  for (std::size_t l = 1; l <= filt.strata.size(); ++l)
    out.push_back(classify_stratum(f, filt, static_cast<int>(l), opt));
  return out;
}

}  // namespace nielsen
