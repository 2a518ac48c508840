#include "nielsen/corpus.hpp"

#include <fstream>

#include "nielsen/error.hpp"

namespace nielsen {

namespace {

ordered_json rose(const std::vector<std::string>& edges, const std::vector<std::vector<std::string>>& images) {
  ordered_json e = ordered_json::array(), em = ordered_json::object();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    e.push_back({{"name", edges[i]}, {"from", "*"}, {"to", "*"}});
    em[edges[i]] = images[i];
  }
  return ordered_json{{"vertices", {"*"}}, {"edges", e}, {"vertex_map", {{"*", "*"}}}, {"edge_map", em}};
}

ordered_json cls(std::vector<std::string> members, int ind, int rk, int a) {
  return ordered_json{{"members", members}, {"ind", ind}, {"rk", rk}, {"a", a}};
}

int sgn(int x) { return (x > 0) - (x < 0); }

}  // namespace

std::vector<std::pair<std::string, ordered_json>> corpus_files() {
  std::vector<std::pair<std::string, ordered_json>> out;

  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> imgs;
    ordered_json prefixes = ordered_json::array();
    for (int i = 1; i <= n; ++i) {
      std::string a = "a" + std::to_string(i);
      names.push_back(a);
      imgs.push_back({a, a});
      prefixes.push_back(a + "." + a + "." + a + "." + a);
      prefixes.push_back(a + "-." + a + "-." + a + "-." + a + "-");
    }
    ordered_json j = rose(names, imgs);
    ordered_json c = cls({"*"}, 1 - 2 * n, 0, 2 * n);
    c["delta"] = 2 * n;
    c["attracting_prefixes"] = prefixes;
    j["expect"] = {{"lefschetz", 1 - 2 * n}, {"classes", {c}}};
    out.emplace_back("ex6_1_n" + std::to_string(n), j);
  }

  {
    ordered_json j = rose({"a1", "a2"}, {{"a1"}, {"a2-", "a1", "a2"}});
    ordered_json star = cls({"*"}, -1, 1, 1);
    star["attracting_prefixes"] = {"a2-.a1-.a2.a1-.a2-.a1.a2"};
    // The interior fixed point is forced: 1 - tr = 0 while the class of * has index -1.
    j["expect"] = {{"lefschetz", 0}, {"classes", {star, cls({"a2@1/4"}, 1, 0, 0)}}};
    out.emplace_back("ex6_2", j);
  }
  {
    ordered_json j = rose({"a", "b"}, {{"b"}, {"a-"}});
    j["routes"] = {"a"};
    j["expect"] = {{"lefschetz", 1},
                   {"classes", {cls({"*"}, 1, 0, 0)}},
                   {"routes", {{"a", {{"empty", true}, {"rk", 1}, {"a", 0}, {"ichr", 0}, {"fix_generators", {"abAB"}}}}}}};
    out.emplace_back("ex6_3", j);
  }
  {
    ordered_json j = rose({"a", "b"}, {{"a-"}, {"a-", "b", "b"}});
    ordered_json star = cls({"*"}, 0, 0, 1);
    star["attracting_prefixes"] = {"BBaBBBBaBBa"};
    ordered_json other{{"members", {"a@1/2", "b@1/2"}}, {"ind", 0}};
    j["expect"] = {{"lefschetz", 0}, {"classes", {star, other}}};
    out.emplace_back("ex6_4", j);
  }
  {
    ordered_json j = rose({"a", "b"}, {{"a"}, {"b", "a"}});
    j["filtration"] = {{"a"}, {"b"}};
    ordered_json c = cls({"*"}, -1, 2, 0);
    c["fix_generators_span"] = {"a", "bAB"};
    j["expect"] = {{"lefschetz", -1}, {"classes", {c}}};
    out.emplace_back("derived_ba", j);
  }

  for (int k = -5; k <= 5; ++k) {
    ordered_json img = ordered_json::array();
    for (int i = 0; i < std::abs(k); ++i) img.push_back(k > 0 ? "e" : "e-");
    ordered_json j{{"vertices", {"v"}},
                   {"edges", {{{"name", "e"}, {"from", "v"}, {"to", "v"}}}},
                   {"vertex_map", {{"v", "v"}}},
                   {"edge_map", {{"e", img}}}};
    if (k == 0) {
      j["edge_map"]["e"] = {{"path", ordered_json::array()}, {"at", "v"}};
      j["expect"] = {{"error", "not injective"}};
    } else if (k == 1) {
      j["expect"] = {{"lefschetz", 0}, {"class_count", 1}, {"all_classes", {{"ind", 0}, {"rk", 1}, {"a", 0}}}};
    } else {
      j["expect"] = {{"lefschetz", 1 - k},
                     {"class_count", std::abs(1 - k)},
                     {"all_classes", {{"ind", sgn(1 - k)}, {"rk", 0}, {"a", k > 1 ? 2 : 0}}}};
    }
    out.emplace_back("circle_k" + std::to_string(k), j);
  }

  for (int k = -3; k <= 3; ++k) {
    std::string img;
    for (int i = 0; i < std::abs(k); ++i) img += k > 0 ? "a" : "A";
    ordered_json j{{"rank", 1}, {"letters", {"a"}}, {"images", {{"a", img}}}};
    if (k == 0)
      j["expect"] = {{"error", "not injective"}};
    else if (k == 1)
      j["expect"] = {{"class_count", 1}, {"all_classes", {{"rk", 1}, {"a", 0}}}};
    else
      j["expect"] = {{"class_count", std::abs(1 - k)}, {"all_classes", {{"rk", 0}, {"a", k > 1 ? 2 : 0}}}};
    out.emplace_back("rank1_k" + std::to_string(k), j);
  }
  return out;
}

std::vector<std::filesystem::path> emit_corpus(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& [name, j] : corpus_files()) {
    auto path = dir / (name + ".json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw InputError("write failed for " + path.string());
    written.push_back(path);
  }
  return written;
}

namespace {

std::vector<std::string> member_names(const Analysis& an, const FixedPointClass& c) {
  std::vector<std::string> out;
  for (int m : c.members) out.push_back(an.map.graph.vertices[m]);
  std::sort(out.begin(), out.end());
  return out;
}

void compare_int(std::vector<std::string>& fails, const std::string& what, const json& want, const std::optional<int>& got) {
  if (want.is_null()) {
    if (got) fails.push_back(what + ": expected unverified, got " + std::to_string(*got));
  } else if (!got || *got != want.get<int>()) {
    fails.push_back(what + ": expected " + want.dump() + ", got " + (got ? std::to_string(*got) : "unverified"));
  }
}

void check_class(std::vector<std::string>& fails, const Analysis& an, const FixedPointClass& c, const json& want,
                 const std::string& label) {
  if (want.contains("ind")) compare_int(fails, label + " ind", want["ind"], c.ind);
  if (want.contains("rk")) compare_int(fails, label + " rk", want["rk"], c.rk);
  if (want.contains("a")) compare_int(fails, label + " a", want["a"], c.a);
  if (want.contains("delta")) compare_int(fails, label + " delta", want["delta"], c.delta);
  if (want.contains("attracting_prefixes")) {
    for (const auto& p : want["attracting_prefixes"]) {
      Word w = parse_word(p.get<std::string>(), c.basis);
      bool hit = false;
      for (const auto& r : c.attracting)
        if (r.verdict.status == AttractionVerdict::Status::Attracting && r.word.prefix(w.size()) == w) hit = true;
      if (!hit) fails.push_back(label + ": no attracting word with prefix " + p.get<std::string>());
    }
  }
  if (want.contains("fix_generators_span")) {
    std::vector<Word> gens;
    for (const auto& s : want["fix_generators_span"]) gens.push_back(parse_word(s.get<std::string>(), c.basis));
    FoldedGraph ours = FoldedGraph::from_words(c.fix_generators, c.basis.rank());
    FoldedGraph theirs = FoldedGraph::from_words(gens, c.basis.rank());
    for (const auto& g : gens)
      if (!ours.contains(g)) fails.push_back(label + ": fixed subgroup misses " + format_word(g, c.basis));
    for (const auto& g : c.fix_generators)
      if (!theirs.contains(g)) fails.push_back(label + ": fixed subgroup has extra " + format_word(g, c.basis));
  }
  (void)an;
}

}  // namespace

InstanceResult verify_instance(const Instance& in, const AnalysisOptions& base_opt) {
  InstanceResult res;
  res.name = in.name;
  const json& ex = in.expect;
  AnalysisOptions opt = base_opt;
  opt.filtration = in.filtration;
  try {
    Analysis an = analyze(in.map, opt);
    res.report = invariants_report(an);
    if (ex.contains("error")) res.failures.push_back("expected error \"" + ex["error"].get<std::string>() + "\"");
    for (const auto& [k, v] : an.verdicts)
      if (v.status == "fail") res.failures.push_back("verdict " + k + " failed: " + v.detail);
    if (ex.contains("lefschetz") && ex["lefschetz"].get<std::int64_t>() != an.lefschetz)
      res.failures.push_back("lefschetz: expected " + ex["lefschetz"].dump() + ", got " + std::to_string(an.lefschetz));
    if (ex.contains("class_count") && ex["class_count"].get<std::size_t>() != an.classes.size())
      res.failures.push_back("class count: expected " + ex["class_count"].dump() + ", got " + std::to_string(an.classes.size()));
    if (ex.contains("all_classes"))
      for (const auto& c : an.classes) check_class(res.failures, an, c, ex["all_classes"], "class " + an.map.graph.vertices[c.rep]);
    if (ex.contains("classes")) {
      if (ex["classes"].size() != an.classes.size())
        res.failures.push_back("class count: expected " + std::to_string(ex["classes"].size()) + ", got " +
                               std::to_string(an.classes.size()));
      for (const auto& want : ex["classes"]) {
        auto names = want["members"].get<std::vector<std::string>>();
        std::sort(names.begin(), names.end());
        const FixedPointClass* found = nullptr;
        for (const auto& c : an.classes)
          if (member_names(an, c) == names) found = &c;
        if (!found) {
          res.failures.push_back("no class with members " + want["members"].dump());
          continue;
        }
        check_class(res.failures, an, *found, want, "class " + want["members"].dump());
      }
    }
    if (!in.routes.empty()) {
      ordered_json routes = ordered_json::object();
      const int base = an.map.vertex_map[0] == 0 ? 0 : -1;
      if (base < 0) throw InputError("routes need vertex " + an.map.graph.vertices[0] + " to be fixed");
      for (const auto& r : in.routes) {
        Pi1Data pi = pi1_data(an.map.graph, base);
        RouteAnalysis ra = analyze_route(an, parse_word(r, pi.basis), base, opt);
        routes[r] = route_report(an, ra);
        if (ra.prop_empty_class.status == "fail") res.failures.push_back("route " + r + ": " + ra.prop_empty_class.detail);
        if (ex.contains("routes") && ex["routes"].contains(r)) {
          const json& w = ex["routes"][r];
          if (w.contains("empty") && w["empty"].get<bool>() != ra.empty_no_witness)
            res.failures.push_back("route " + r + ": emptiness differs");
          if (w.contains("rk")) compare_int(res.failures, "route " + r + " rk", w["rk"], ra.rk);
          if (w.contains("a")) compare_int(res.failures, "route " + r + " a", w["a"], ra.a);
          if (w.contains("ichr")) compare_int(res.failures, "route " + r + " ichr", w["ichr"], ra.ichr());
          if (w.contains("fix_generators")) {
            std::vector<Word> gens;
            for (const auto& s : w["fix_generators"]) gens.push_back(parse_word(s.get<std::string>(), ra.endo.basis));
            FoldedGraph ours = FoldedGraph::from_words(ra.fix_generators, ra.endo.basis.rank());
            for (const auto& g : gens)
              if (!ours.contains(g) || image_of(ra.endo, g) != g)
                res.failures.push_back("route " + r + ": generator " + format_word(g, ra.endo.basis) + " not verified");
          }
        }
      }
      res.report["routes"] = routes;
    }
    res.exit_code = res.failures.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    const bool expected = ex.contains("error") && std::string(e.what()).find(ex["error"].get<std::string>()) != std::string::npos;
    res.report = ordered_json{{"error", e.what()}};
    if (expected) {
      res.exit_code = 0;
    } else {
      res.failures.push_back(e.what());
      res.exit_code = 2;
    }
  }
  return res;
}

}  // namespace nielsen
