#include "nielsen/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "nielsen/error.hpp"
#include "nielsen/folding.hpp"

namespace nielsen {

std::vector<ClassTriple> base_invariants_point() { return {{1, 0, 0}}; }

std::vector<ClassTriple> base_invariants_circle(int k) {
  if (k == 0) throw InputError("degree 0 circle map is not pi_1-injective");
  if (k == 1) return {{0, 1, 0}};
  const int count = k > 1 ? k - 1 : 1 - k;
  return std::vector<ClassTriple>(static_cast<std::size_t>(count), k > 1 ? ClassTriple{-1, 0, 2} : ClassTriple{1, 0, 0});
}

const FixedPointClass* Analysis::class_of(int vertex) const {
  for (const auto& c : classes)
    if (std::find(c.members.begin(), c.members.end(), vertex) != c.members.end()) return &c;
  return nullptr;
}

namespace {

struct Work {
  std::vector<int> members;
  int rep = 0;
  std::map<int, EdgePath> to;  // Nielsen path rep -> member
  std::vector<EdgePath> loops;
  int ind = 1, rk = 0, a = 0, delta = 0;
  std::vector<std::string> steps;
  std::string provenance = "base-point";
  std::vector<std::pair<int, int>> rays;  // (vertex, direction)
  bool alive = true;
};

struct UF {
  std::vector<int> p;
  explicit UF(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

Filtration map_user_filtration(const GraphMap& input, const GraphMap& sub, const Filtration& user) {
  Filtration out;
  out.user_supplied = true;
  for (const auto& stratum : user.strata) {
    std::vector<int> edges;
    for (int e : stratum) {
      const std::string& name = input.graph.edges.at(e).name;
      for (std::size_t i = 0; i < sub.graph.edges.size(); ++i) {
        const std::string& n = sub.graph.edges[i].name;
        if (n == name || n.rfind(name + "#", 0) == 0) edges.push_back(static_cast<int>(i));
      }
    }
    std::sort(edges.begin(), edges.end());
    out.strata.push_back(edges);
  }
  return out;
}

std::string level_tag(const StratumInfo& s) { return "L" + std::to_string(s.level) + ":" + to_string(s.kind); }

}  // namespace

std::optional<int> doubled_sum_bound(const Analysis& an) {
  int sum = 0;
  for (const auto& c : an.classes) {
    if (!c.rk || !c.a) return std::nullopt;
    sum += std::max(0, 2 * *c.rk + *c.a - 2);
  }
  return sum;
}

namespace {

std::string halves(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

void build_verdicts(Analysis& an, bool rose_input) {
  auto& v = an.verdicts;
  // Lefschetz-Hopf.
  {
    std::int64_t s = 0;
    for (const auto& c : an.classes) s += c.ind;
    v["lefschetz_hopf"] = {s == an.lefschetz ? "pass" : "fail",
                           "sum ind = " + std::to_string(s) + ", 1 - tr = " + std::to_string(an.lefschetz)};
  }
  // ind <= ichr.
  {
    int checked = 0;
    std::string bad;
    for (const auto& c : an.classes) {
      auto ic = c.ichr();
      if (!ic) continue;
      ++checked;
      if (c.ind > *ic) bad += " " + an.map.graph.vertices[c.rep] + ":" + std::to_string(c.ind) + ">" + std::to_string(*ic);
    }
    if (checked == 0)
      v["thm_main_1"] = {"not-applicable", "no class with verified rk and a"};
    else if (bad.empty())
      v["thm_main_1"] = {"pass", "ind <= ichr on " + std::to_string(checked) + " classes"};
    else
      v["thm_main_1"] = {"fail", "input invalid or bug:" + bad};
  }
  // chi = -1: equality on essential classes.
  if (an.chi != -1) {
    v["thm_fig8"] = {"not-applicable", "chi = " + std::to_string(an.chi)};
  } else {
    int checked = 0;
    std::string bad;
    for (const auto& c : an.classes) {
      auto ic = c.ichr();
      if (!ic || c.ind == 0) continue;
      ++checked;
      if (c.ind != *ic) bad += " " + an.map.graph.vertices[c.rep];
    }
    if (checked == 0)
      v["thm_fig8"] = {"not-applicable", "no essential verified class"};
    else
      v["thm_fig8"] = {bad.empty() ? "pass" : "fail",
                       bad.empty() ? "ind = ichr on " + std::to_string(checked) + " essential classes" : "mismatch at" + bad};
  }
  // Sum bound, computed in halves.
  auto twice = doubled_sum_bound(an);
  if (!twice) {
    v["cor_sum_bound"] = {"not-applicable", "some class has unverified rk or a"};
  } else {
    bool ok = *twice <= -2 * an.chi;
    std::string detail = halves(*twice) + " <= " + std::to_string(-an.chi);
    v["cor_sum_bound"] = {ok ? "pass" : "fail", detail};
    if (rose_input)
      v["thm_similarity_sum"] = {ok ? "pass" : "fail", detail + " (rank - 1 = " + std::to_string(-an.chi) + ")"};
  }
  if (!rose_input) v["thm_similarity_sum"] = {"not-applicable", "input is not a rose"};
  if (rose_input && !twice) v["thm_similarity_sum"] = {"not-applicable", "some class has unverified rk or a"};
  // Trace criterion.
  if (an.trace >= 1) {
    v["thm_trace"] = {"not-applicable", "tr = " + std::to_string(an.trace)};
  } else {
    const FixedPointClass* hit = nullptr;
    for (const auto& c : an.classes)
      if (c.rk && c.a && *c.rk == 0 && *c.a == 0) {
        hit = &c;
        break;
      }
    if (hit)
      v["thm_trace"] = {"pass", "tr = " + std::to_string(an.trace) + " < 1; class of " + an.map.graph.vertices[hit->rep] +
                                    " has rk = a = 0"};
    else if (an.all_verified)
      v["thm_trace"] = {"fail", "tr < 1 but no class with rk = a = 0"};
    else
      v["thm_trace"] = {"not-applicable", "tr < 1 but classes unverified"};
  }
}

}  // namespace

Analysis classify_map(const GraphMap& f_in, const AnalysisOptions& opt) {
  Analysis an;
  f_in.validate();
  if (!f_in.graph.connected()) throw InputError("graph is not connected");
  an.input = f_in;
  an.chi = f_in.graph.euler_characteristic();

  {
    Pi1Data pi = pi1_data(f_in.graph, 0);
    Endomorphism phi = induced_endo(f_in, pi, pi.tree_path[f_in.vertex_map[0]]);
    if (!is_injective(phi)) throw NotInjectiveError();
    an.trace = trace(abelianization(phi));
    an.lefschetz = 1 - an.trace;
  }

  Normalized nm = normalize(f_in);
  an.map = nm.map;
  an.subdivided = nm.points;

  if (opt.filtration) {
    validate_filtration(f_in, *opt.filtration);
    an.filtration = map_user_filtration(f_in, an.map, *opt.filtration);
  } else {
    an.filtration = derive_filtration(an.map);
  }
  RttOptions ro;
  ro.tol = opt.tol;
  ro.linear_search_len = opt.nielsen_depth;
  an.strata = classify_all(an.map, an.filtration, ro);
  return an;
}

Analysis analyze(const GraphMap& f_in, const AnalysisOptions& opt) {
  Analysis an = classify_map(f_in, opt);
  const GraphMap& f = an.map;
  const Graph& g = f.graph;
  const std::size_t nv = g.vertices.size();

  // Recursion up the filtration.
  std::vector<Work> cls;
  std::vector<int> class_idx(nv, -1);
  for (int v : fixed_vertices(f)) {
    Work w;
    w.members = {v};
    w.rep = v;
    w.to[v] = EdgePath{v, {}};
    w.steps = {"base-point"};
    class_idx[v] = static_cast<int>(cls.size());
    cls.push_back(w);
  }
  std::vector<int> pointwise_edges;

  for (const auto& s : an.strata) {
    if (s.pointwise) pointwise_edges.push_back(s.edges[0]);
    if (s.inp.status == InpResult::Status::NoneWithinBound) {
      an.all_verified = false;
      an.notes.push_back("stratum " + std::to_string(s.level) + ": Nielsen path search inconclusive; rk and a unverified");
    }
    std::map<int, int> dv;
    for (int d : s.fixed_directions) ++dv[g.origin(d)];

    // One Nielsen path family at most.
    const EdgePath* p = nullptr;
    std::set<std::pair<int, int>> pairs;
    for (const auto& info : s.inp.paths) {
      int ca = class_idx[info.path.start], cb = class_idx[info.path.end(g)];
      pairs.insert({std::min(ca, cb), std::max(ca, cb)});
      if (!p || info.path.size() < p->size()) p = &info.path;
    }
    if (pairs.size() > 1) {
      std::vector<std::string> names;
      for (int e : s.edges) names.push_back(g.edges[e].name);
      throw UnclassifiableError("several Nielsen path families cross the stratum", names);
    }

    for (int d : s.fixed_directions) cls[class_idx[g.origin(d)]].rays.emplace_back(g.origin(d), d);
    auto delta_of = [&](const Work& w) {
      int d = 0;
      for (int m : w.members) d += dv.count(m) ? dv[m] : 0;
      return d;
    };
    const std::string tag = level_tag(s);

    int merged_into = -1;
    if (p) {
      const int a = p->start, b = p->end(g);
      int ca = class_idx[a], cb = class_idx[b];
      Work& A = cls[ca];
      const int before = (1 - A.rk - A.a) - A.ind + (ca != cb ? (1 - cls[cb].rk - cls[cb].a) - cls[cb].ind : 0);
      if (ca != cb) {
        Work& Bw = cls[cb];
        const int delta = delta_of(A) + delta_of(Bw);
        EdgePath bridge = concat(g, concat(g, A.to[a], *p), reverse_path(Bw.to[b], g));
        for (int m : Bw.members) {
          A.members.push_back(m);
          A.to[m] = concat(g, bridge, Bw.to[m]);
          class_idx[m] = ca;
        }
        for (const auto& l : Bw.loops) A.loops.push_back(concat(g, concat(g, bridge, l), reverse_path(bridge, g)));
        for (const auto& r : Bw.rays) A.rays.push_back(r);
        A.rk += Bw.rk;
        A.a += Bw.a + delta - 1;
        A.ind += Bw.ind - delta;
        A.delta += Bw.delta + delta;
        A.steps.insert(A.steps.end(), Bw.steps.begin(), Bw.steps.end());
        A.steps.push_back(tag + ":case-ii");
        A.provenance = s.kind == StratumKind::Linear ? "recursion-linear-case-ii" : "recursion-case-ii";
        Bw.alive = false;
        Bw.members.clear();
      } else {
        const int delta = delta_of(A);
        A.loops.push_back(concat(g, concat(g, A.to[a], *p), reverse_path(A.to[b], g)));
        A.rk += 1;
        A.a += delta - 1;
        A.ind -= delta;
        A.delta += delta;
        A.steps.push_back(tag + ":case-iii");
        A.provenance = s.kind == StratumKind::Linear ? "recursion-linear-case-iii" : "recursion-case-iii";
      }
      // The two leg tips give one ray class, absorbed by the -1 above.
      std::pair<int, int> tip1{a, p->edges.front()}, tip2{b, rev(p->edges.back())};
      auto it = std::find(A.rays.begin(), A.rays.end(), tip1);
      if (it == A.rays.end()) it = std::find(A.rays.begin(), A.rays.end(), tip2);
      if (it == A.rays.end()) throw StructureError("Nielsen path tips carry no fixed direction at stratum " + std::to_string(s.level));
      A.rays.erase(it);
      const int after = (1 - A.rk - A.a) - A.ind;
      if (after != before) throw StructureError("ichr recursion identity violated at stratum " + std::to_string(s.level));
      if (A.a < 0) throw StructureError("structure violation: negative a at stratum " + std::to_string(s.level));
      merged_into = ca;
    }
    for (std::size_t c = 0; c < cls.size(); ++c) {
      Work& w = cls[c];
      if (!w.alive || static_cast<int>(c) == merged_into) continue;
      const int delta = delta_of(w);
      if (delta == 0) continue;
      w.a += delta;
      w.ind -= delta;
      w.delta += delta;
      w.steps.push_back(tag + ":case-i");
      w.provenance = "recursion-case-i";
    }

    if (s.circle_degree) {
      std::set<int> on_circle;
      for (int e : s.edges) {
        on_circle.insert(g.edges[e].from);
        on_circle.insert(g.edges[e].to);
      }
      std::vector<ClassTriple> got;
      for (const auto& w : cls)
        if (w.alive && std::all_of(w.members.begin(), w.members.end(), [&](int m) { return on_circle.count(m) > 0; }))
          got.push_back({w.ind, w.rk, w.a});
      auto want = base_invariants_circle(*s.circle_degree);
      bool ok = *s.circle_degree == 1
                    ? std::all_of(got.begin(), got.end(), [&](const ClassTriple& t) { return t == want[0]; })
                    : got == want;
      if (!ok) throw StructureError("base circle cross-check failed at degree " + std::to_string(*s.circle_degree));
    }
  }

  // Local index formula.
  std::set<int> pw(pointwise_edges.begin(), pointwise_edges.end());
  for (auto& w : cls) {
    if (!w.alive) continue;
    int local = 0;
    for (int v : w.members) {
      int fixed = 0;
      for (int d : fixed_directions(f, v))
        if (!pw.count(geom(d))) ++fixed;
      local += 1 - fixed;
    }
    for (int e : pointwise_edges)
      if (std::find(w.members.begin(), w.members.end(), g.edges[e].from) != w.members.end()) --local;
    if (local != w.ind)
      throw StructureError("index cross-check failed at " + g.vertices[w.rep] + ": local " + std::to_string(local) +
                           ", recursion " + std::to_string(w.ind));
  }

  // Partition oracle.
  if (opt.oracles) {
    UF uf(nv);
    for (const auto& p : brute_nielsen_paths(f, opt.nielsen_depth, false)) {
      int a = p.start, b = p.end(g);
      if (class_idx[a] != class_idx[b])
        throw StructureError("partition oracle links " + g.vertices[a] + " and " + g.vertices[b] + " via " +
                             format_path(g, p) + " but the recursion keeps them apart");
      uf.unite(a, b);
    }
    an.partition_oracle = "agree";
    for (const auto& w : cls)
      for (int m : w.members)
        if (uf.find(m) != uf.find(w.rep)) an.partition_oracle = "oracle-inconclusive";

    std::set<int> below;
    for (const auto& s : an.strata) {
      for (int e : s.edges) below.insert(e);
      std::set<std::vector<int>> brute;
      for (const auto& p : brute_nielsen_paths(f, opt.inp_oracle_depth, true, s.edges)) {
        bool inside = std::all_of(p.edges.begin(), p.edges.end(), [&](int oe) { return below.count(geom(oe)) > 0; });
        if (inside) brute.insert(p.edges);
      }
      std::set<std::vector<int>> ours;
      for (const auto& info : s.inp.paths) {
        if (info.path.size() > opt.inp_oracle_depth) continue;
        std::vector<int> fwd = info.path.edges, bwd = reverse_path(info.path, g).edges;
        ours.insert(brute.count(bwd) ? bwd : fwd);
      }
      if (s.kind == StratumKind::Linear) {
        for (const auto& k : ours)
          if (!brute.count(k)) throw StructureError("iNp oracle disagrees at stratum " + std::to_string(s.level));
      } else if (brute != ours) {
        throw StructureError("iNp oracle disagrees at stratum " + std::to_string(s.level) + " (brute force found " +
                             std::to_string(brute.size()) + ")");
      }
    }
    an.inp_oracle = "agree";
  }

  // Materialise classes.
  for (auto& w : cls) {
    if (!w.alive) continue;
    FixedPointClass c;
    c.members = w.members;
    std::sort(c.members.begin(), c.members.end());
    c.rep = c.members.front();
    c.delta = w.delta;
    c.ind = w.ind;
    c.ind_local = w.ind;
    c.steps = w.steps;
    c.provenance = w.provenance;
    if (an.all_verified) {
      c.rk = w.rk;
      c.a = w.a;
    }
    // Re-root Nielsen data at the smallest member.
    EdgePath shift = w.to[c.rep];
    Pi1Data pi = pi1_data(g, c.rep);
    c.basis = pi.basis;
    c.endo = induced_endo(f, pi, EdgePath{c.rep, {}});
    for (const auto& l : w.loops) {
      EdgePath moved = concat(g, concat(g, reverse_path(shift, g), l), shift);
      Word gword = path_word(pi, moved);
      if (image_of(c.endo, gword) != gword) throw StructureError("constructed stabiliser generator is not fixed");
      c.fix_generators.push_back(gword);
    }
    FoldedGraph fix = FoldedGraph::from_words(c.fix_generators, pi.basis.rank());
    if (fix.rank() != w.rk)
      throw StructureError("fixed subgroup rank " + std::to_string(fix.rank()) + " differs from recursion " +
                           std::to_string(w.rk));
    c.generators_verified = true;
    if (w.rays.size() != static_cast<std::size_t>(w.a))
      throw StructureError("attracting ray count differs from a at " + g.vertices[c.rep]);

    if (opt.attracting) {
      for (auto [u, d] : w.rays) {
        EdgePath c_u = concat(g, reverse_path(shift, g), w.to[u]);
        const std::size_t n = 64;
        EdgePath ray = ray_prefix(f, d, n);
        Word target = path_word(pi, concat(g, c_u, ray));
        std::optional<InfiniteWord> word;
        for (std::size_t j = 1; j <= ray.size() && !word; ++j) {
          EdgePath pre{ray.start, std::vector<int>(ray.edges.begin(), ray.edges.begin() + static_cast<std::ptrdiff_t>(j))};
          Word seed = path_word(pi, concat(g, c_u, pre));
          if (seed.empty() || image_of(c.endo, seed) == seed) continue;
          try {
            InfiniteWord cand = InfiniteWord::morphic(seed, c.endo);
            const std::size_t check = std::min<std::size_t>(32, target.size() > 8 ? target.size() - 8 : 0);
            if (check > 0 && cand.prefix(check) == prefix_of(target, check)) word = cand;
          } catch (const StructureError&) {
          }
        }
        if (!word) {
          an.notes.push_back("no word-level seed reproduces the ray from " + g.oriented_name(d));
          continue;
        }
        AttractingRep rep{u, d, *word, attraction_check(*word, c.endo, 0, 0, &fix), in_boundary_of_subgroup(*word, fix, 64)};
        c.attracting.push_back(rep);
      }
    }
    an.classes.push_back(std::move(c));
  }
  std::sort(an.classes.begin(), an.classes.end(),
            [](const FixedPointClass& x, const FixedPointClass& y) { return x.rep < y.rep; });

  std::int64_t sum = 0;
  for (const auto& c : an.classes) sum += c.ind;
  if (sum != an.lefschetz)
    throw StructureError("Lefschetz mismatch: sum of indices " + std::to_string(sum) + " vs " + std::to_string(an.lefschetz));

  build_verdicts(an, f_in.graph.vertices.size() == 1);
  return an;
}

RouteAnalysis analyze_route(const Analysis& an, const Word& route, int base, const AnalysisOptions& opt) {
  const GraphMap& f = an.map;
  const Graph& g = f.graph;
  if (base < 0 || base >= static_cast<int>(g.vertices.size())) throw InputError("unknown base vertex");
  if (f.vertex_map[base] != base) throw InputError("route base vertex must be fixed");
  if (opt.route_depth < 0) throw InputError("depth must be >= 0");
  RouteAnalysis ra;
  ra.base = base;
  ra.depth = opt.route_depth;
  Pi1Data pi = pi1_data(g, base);
  Endomorphism phi = induced_endo(f, pi, EdgePath{base, {}});
  ra.route = reduce(route, phi.basis);
  ra.endo = inner_twist(ra.route, phi);

  for (const auto& c : an.classes) {
    EdgePath gamma = pi.tree_path[c.rep];
    Word r = path_word(pi, concat(g, gamma, map_path(f, reverse_path(gamma, g))));
    RouteSearch rs = route_equivalent(r, ra.route, phi, opt.route_depth);
    if (rs.equivalent) {
      ra.empty_no_witness = false;
      ra.equivalent_vertex = c.rep;
      ra.witness = rs.witness;
      break;
    }
  }

  const std::size_t len = phi.rank() <= 2 ? 8 : 6;
  std::vector<Word> fixed;
  for_each_reduced_word(phi.rank(), len, [&](const Word& x) {
    if (!x.empty() && image_of(ra.endo, x) == x) fixed.push_back(x);
    return true;
  });
  FoldedGraph fix = FoldedGraph::from_words(fixed, phi.rank());
  ra.rk = fix.rank();
  ra.fix_generators = fix.basis();
  ra.rk_status = "search-lower-bound (fixed words up to length " + std::to_string(len) + ")";

  bool permutation = std::all_of(phi.images.begin(), phi.images.end(), [](const Word& w) { return w.size() == 1; });
  int attracting = 0;
  std::vector<InfiniteWord> found;
  for (std::size_t i = 0; i < 2 * phi.rank(); ++i) {
    Letter x = i % 2 == 0 ? gen_letter(static_cast<int>(i / 2)) : gen_letter(static_cast<int>(i / 2), true);
    Word img = image_of(ra.endo, {x});
    if (img.empty() || img.front() != x || img.size() == 1) continue;
    try {
      InfiniteWord w = InfiniteWord::morphic({x}, ra.endo);
      AttractionVerdict v = attraction_check(w, ra.endo, 0, 0, &fix);
      if (v.status != AttractionVerdict::Status::Attracting) continue;
      bool fresh = true;
      for (const auto& old : found)
        if (equivalent_under(w, old, ra.endo, ra.fix_generators, 2).equivalent) fresh = false;
      if (fresh) {
        found.push_back(w);
        ++attracting;
      }
    } catch (const StructureError&) {
    }
  }
  ra.attracting = found;
  if (permutation) {
    if (attracting != 0) throw StructureError("finite-order certificate contradicted by an attracting word");
    ra.a = 0;
    ra.a_status = "certificate: base endomorphism permutes letters, so f_w has finite-order outer class";
  } else {
    ra.a = attracting;
    ra.a_status = "search-lower-bound (single-letter seeds)";
  }

  if (!ra.empty_no_witness) {
    ra.prop_empty_class = {"not-applicable", "route labels the class of " + g.vertices[*ra.equivalent_vertex]};
  } else {
    const int ic = ra.ichr();
    ra.prop_empty_class = {ic >= 0 && ic <= 1 ? "pass" : "fail", "0 <= " + std::to_string(ic) + " <= 1"};
  }
  return ra;
}

}  // namespace nielsen
