#include "nielsen/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nielsen/error.hpp"

namespace nielsen {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string word_str(const Word& w, const Basis& b) { return format_word(w, b); }

int vertex_of(const Graph& g, const std::string& name) {
  int v = g.vertex_index(name);
  if (v < 0) throw InputError("unknown vertex \"" + name + "\"");
  return v;
}

// Best small-denominator rational for an exactly rational double.
std::optional<Rational> as_rational(double x) {
  for (std::int64_t den = 1; den <= 1000; ++den) {
    double num = std::round(x * static_cast<double>(den));
    if (std::abs(num / static_cast<double>(den) - x) < 1e-12) return Rational(static_cast<std::int64_t>(num), den);
  }
  return std::nullopt;
}

ordered_json path_names(const Graph& g, const EdgePath& p) {
  ordered_json out = ordered_json::array();
  for (int oe : p.edges) out.push_back(g.oriented_name(oe));
  return out;
}

ordered_json verdict_json(const Verdict& v) { return ordered_json{{"status", v.status}, {"detail", v.detail}}; }

ordered_json words_json(const std::vector<Word>& ws, const Basis& b) {
  ordered_json out = ordered_json::array();
  for (const auto& w : ws) out.push_back(word_str(w, b));
  return out;
}

ordered_json optional_int(const std::optional<int>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Endomorphism endo_from_json(const json& j) {
  const json& letters = field(j, "letters");
  std::vector<std::string> names = letters.get<std::vector<std::string>>();
  if (j.contains("rank") && j.at("rank").get<std::size_t>() != names.size())
    throw InputError("rank does not match the number of letters");
  Basis basis(names);
  const json& images = field(j, "images");
  std::vector<Word> imgs;
  for (const auto& n : names) {
    if (!images.contains(n)) throw InputError("no image for letter \"" + n + "\"");
    imgs.push_back(parse_word(images.at(n).get<std::string>(), basis));
  }
  return Endomorphism(basis, imgs);
}

ordered_json endo_to_json(const Endomorphism& phi) {
  ordered_json images = ordered_json::object();
  for (std::size_t i = 0; i < phi.rank(); ++i) images[phi.basis.name(static_cast<int>(i))] = word_str(phi.images[i], phi.basis);
  return ordered_json{{"rank", phi.rank()}, {"letters", phi.basis.letters()}, {"images", images}};
}

GraphMap graph_map_from_json(const json& j, std::optional<Filtration>* filtration) {
  GraphMap f;
  Graph& g = f.graph;
  g.vertices = field(j, "vertices").get<std::vector<std::string>>();
  for (const auto& e : field(j, "edges")) {
    Graph::Edge edge;
    edge.name = field(e, "name").get<std::string>();
    if (edge.name.empty() || edge.name.back() == '-') throw InputError("edge names must be nonempty and not end in '-'");
    edge.from = vertex_of(g, field(e, "from").get<std::string>());
    edge.to = vertex_of(g, field(e, "to").get<std::string>());
    for (const auto& other : g.edges)
      if (other.name == edge.name) throw InputError("duplicate edge \"" + edge.name + "\"");
    g.edges.push_back(edge);
  }
  const json& vm = field(j, "vertex_map");
  for (const auto& v : g.vertices) {
    if (!vm.contains(v)) throw InputError("vertex_map lacks \"" + v + "\"");
    f.vertex_map.push_back(vertex_of(g, vm.at(v).get<std::string>()));
  }
  const json& em = field(j, "edge_map");
  const json top_at = j.contains("at") ? j.at("at") : json::object();
  for (const auto& e : g.edges) {
    if (!em.contains(e.name)) throw InputError("edge_map lacks \"" + e.name + "\"");
    const json& img = em.at(e.name);
    const json& list = img.is_object() ? field(img, "path") : img;
    EdgePath p;
    for (const auto& tok : list) {
      int oe = g.oriented_index(tok.get<std::string>());
      if (oe < 0) throw InputError("unknown edge \"" + tok.get<std::string>() + "\" in image of " + e.name);
      p.edges.push_back(oe);
    }
    if (!p.edges.empty()) {
      p.start = g.origin(p.edges.front());
    } else if (img.is_object() && img.contains("at")) {
      p.start = vertex_of(g, img.at("at").get<std::string>());
    } else if (top_at.contains(e.name)) {
      p.start = vertex_of(g, top_at.at(e.name).get<std::string>());
    } else {
      p.start = f.vertex_map[e.from];
    }
    f.edge_images.push_back(p);
  }
  f.validate();
  if (filtration && j.contains("filtration")) {
    Filtration filt;
    filt.user_supplied = true;
    for (const auto& stratum : j.at("filtration")) {
      std::vector<int> edges;
      for (const auto& name : stratum) {
        int oe = g.oriented_index(name.get<std::string>());
        if (oe < 0 || is_reversed(oe)) throw InputError("filtration names unknown edge \"" + name.get<std::string>() + "\"");
        edges.push_back(geom(oe));
      }
      filt.strata.push_back(edges);
    }
    *filtration = filt;
  }
  return f;
}

ordered_json graph_map_to_json(const GraphMap& f, const Filtration* filtration) {
  const Graph& g = f.graph;
  ordered_json edges = ordered_json::array();
  for (const auto& e : g.edges) edges.push_back({{"name", e.name}, {"from", g.vertices[e.from]}, {"to", g.vertices[e.to]}});
  ordered_json vm = ordered_json::object();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) vm[g.vertices[v]] = g.vertices[f.vertex_map[v]];
  ordered_json em = ordered_json::object();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const EdgePath& p = f.edge_images[e];
    if (p.edges.empty())
      em[g.edges[e].name] = {{"path", ordered_json::array()}, {"at", g.vertices[p.start]}};
    else
      em[g.edges[e].name] = path_names(g, p);
  }
  ordered_json out{{"vertices", g.vertices}, {"edges", edges}, {"vertex_map", vm}, {"edge_map", em}};
  if (filtration) {
    ordered_json strata = ordered_json::array();
    for (const auto& s : filtration->strata) {
      ordered_json names = ordered_json::array();
      for (int e : s) names.push_back(g.edges[e].name);
      strata.push_back(names);
    }
    out["filtration"] = strata;
  }
  return out;
}

Instance instance_from_json(const json& j, const std::string& name) {
  Instance in;
  in.name = name;
  try {
    if (!j.is_object()) throw InputError("top level must be an object");
    if (j.contains("images")) {
      in.endo = endo_from_json(j);
      in.map = rose_map(*in.endo);
      if (j.contains("filtration")) {
        json copy = graph_map_to_json(in.map);
        copy["filtration"] = j.at("filtration");
        graph_map_from_json(copy, &in.filtration);
      }
    } else {
      in.map = graph_map_from_json(j, &in.filtration);
    }
    if (j.contains("routes")) in.routes = j.at("routes").get<std::vector<std::string>>();
    if (j.contains("expect")) in.expect = j.at("expect");
  } catch (const json::exception& e) {
    throw InputError(name + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
  return in;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return instance_from_json(j, path.stem().string());
}

ordered_json infinite_word_to_json(const InfiniteWord& w, const Basis& basis, std::size_t preview) {
  ordered_json out;
  if (w.kind() == InfiniteWord::Kind::EvPeriodic) {
    out["type"] = "evperiodic";
    out["prefix"] = word_str(w.periodic_prefix(), basis);
    out["period"] = word_str(w.period(), basis);
  } else {
    out["type"] = "morphic";
    out["seed"] = word_str(w.seed(), basis);
    out["endo"] = endo_to_json(w.endo());
    if (!w.left_factor().empty()) out["left"] = word_str(w.left_factor(), basis);
  }
  try {
    out["preview"] = word_str(w.prefix(preview), basis);
  } catch (const StructureError& e) {
    out["preview_error"] = e.what();
  }
  return out;
}

ordered_json attraction_to_json(const AttractionVerdict& v) {
  return ordered_json{{"status", to_string(v.status)}, {"burn_in", v.burn_in}, {"window", v.window},
                      {"bound", v.bound}, {"detail", v.detail}};
}

ordered_json classification_report(const Analysis& an) {
  const Graph& g = an.map.graph;
  ordered_json strata = ordered_json::array();
  for (const auto& s : an.strata) {
    ordered_json o;
    o["level"] = s.level;
    o["kind"] = to_string(s.kind);
    ordered_json edges = ordered_json::array();
    for (int e : s.edges) edges.push_back(g.edges[e].name);
    o["edges"] = edges;
    o["transition"] = s.transition;
    if (s.pf) {
      o["lambda"] = round12(s.pf->lambda);
      ordered_json L = ordered_json::array();
      bool rational = s.pf->exact;
      std::vector<Rational> rs;
      for (double x : s.pf->L) {
        auto r = as_rational(x);
        if (!r) rational = false;
        else rs.push_back(*r);
      }
      for (std::size_t i = 0; i < s.pf->L.size(); ++i)
        L.push_back(rational ? ordered_json(rs[i].str()) : ordered_json(round12(s.pf->L[i])));
      o["L"] = L;
      o["residual"] = s.pf->residual;
      o["exact"] = s.pf->exact;
    }
    if (s.pointwise) o["pointwise_fixed"] = true;
    if (s.circle_degree) o["circle_degree"] = *s.circle_degree;
    ordered_json turns = ordered_json::array();
    for (auto [d1, d2] : s.illegal_turns) turns.push_back({g.oriented_name(d1), g.oriented_name(d2)});
    o["illegal_turns"] = turns;
    ordered_json dirs = ordered_json::array();
    for (int d : s.fixed_directions) dirs.push_back(g.oriented_name(d));
    o["fixed_directions"] = dirs;
    ordered_json inp;
    inp["status"] = to_string(s.inp.status);
    ordered_json paths = ordered_json::array();
    for (const auto& p : s.inp.paths) {
      ordered_json po{{"from", g.vertices[p.path.start]}, {"to", g.vertices[p.path.end(g)]}, {"path", path_names(g, p.path)}};
      if (p.has_legs) {
        po["leg1"] = path_names(g, p.p1);
        po["leg2"] = path_names(g, p.p2);
        po["tail"] = path_names(g, p.tail);
      }
      paths.push_back(po);
    }
    inp["paths"] = paths;
    if (s.inp.l_bound > 0) inp["length_bound"] = round12(s.inp.l_bound);
    if (s.inp.search_len > 0) inp["search_length"] = s.inp.search_len;
    if (!s.inp.note.empty()) inp["note"] = s.inp.note;
    o["inp"] = inp;
    strata.push_back(o);
  }
  ordered_json sub = ordered_json::array();
  for (const auto& p : an.subdivided) sub.push_back(an.input.graph.edges[p.edge].name + "@" + p.t.str());
  return ordered_json{{"subdivided", sub},
                      {"user_filtration", an.filtration.user_supplied},
                      {"strata", strata},
                      {"map", graph_map_to_json(an.map)}};
}

namespace {

ordered_json class_json(const Analysis& an, const FixedPointClass& c) {
  const Graph& g = an.map.graph;
  ordered_json members = ordered_json::array();
  for (int m : c.members) members.push_back(g.vertices[m]);
  ordered_json o;
  o["members"] = members;
  o["rep"] = g.vertices[c.rep];
  o["ind"] = c.ind;
  o["rk"] = optional_int(c.rk);
  o["a"] = optional_int(c.a);
  o["ichr"] = optional_int(c.ichr());
  o["delta"] = c.delta;
  o["verified"] = c.rk.has_value();
  o["provenance"] = c.provenance;
  o["steps"] = c.steps;
  o["basis"] = c.basis.letters();
  o["fix_generators"] = words_json(c.fix_generators, c.basis);
  o["generators_verified"] = c.generators_verified;
  return o;
}

ordered_json verdicts_json(const Analysis& an) {
  ordered_json v = ordered_json::object();
  for (const char* k : {"thm_main_1", "thm_fig8", "cor_sum_bound", "thm_similarity_sum", "thm_trace", "lefschetz_hopf"}) {
    auto it = an.verdicts.find(k);
    if (it != an.verdicts.end()) v[k] = verdict_json(it->second);
  }
  return v;
}

ordered_json attracting_json(const Analysis& an, const FixedPointClass& c) {
  const Graph& g = an.map.graph;
  ordered_json out = ordered_json::array();
  for (const auto& r : c.attracting) {
    ordered_json o{{"vertex", g.vertices[r.vertex]}, {"direction", g.oriented_name(r.direction)}};
    o["word"] = infinite_word_to_json(r.word, c.basis, 16);
    o["verdict"] = attraction_to_json(r.verdict);
    o["escapes_fixed_subgroup"] = r.escape.escapes;
    if (r.escape.escapes) o["escape_at"] = r.escape.at;
    out.push_back(o);
  }
  return out;
}

}  // namespace

ordered_json invariants_report(const Analysis& an) {
  ordered_json classes = ordered_json::array();
  for (const auto& c : an.classes) {
    ordered_json o = class_json(an, c);
    o["attracting"] = attracting_json(an, c);
    classes.push_back(o);
  }
  ordered_json out;
  out["classes"] = classes;
  out["lefschetz"] = an.lefschetz;
  out["trace"] = an.trace;
  out["chi"] = an.chi;
  out["all_verified"] = an.all_verified;
  auto twice = doubled_sum_bound(an);
  if (twice)
    out["sum_bound"] = *twice % 2 == 0 ? std::to_string(*twice / 2) : std::to_string(*twice) + "/2";
  else
    out["sum_bound"] = nullptr;
  out["oracles"] = {{"partition", an.partition_oracle}, {"inp", an.inp_oracle}};
  out["verdicts"] = verdicts_json(an);
  ordered_json sub = ordered_json::array();
  for (const auto& p : an.subdivided) sub.push_back(an.input.graph.edges[p.edge].name + "@" + p.t.str());
  out["subdivided"] = sub;
  out["notes"] = an.notes;
  return out;
}

ordered_json attracting_report(const Analysis& an) {
  ordered_json classes = ordered_json::array();
  for (const auto& c : an.classes) {
    ordered_json members = ordered_json::array();
    for (int m : c.members) members.push_back(an.map.graph.vertices[m]);
    classes.push_back({{"members", members}, {"a", optional_int(c.a)}, {"attracting", attracting_json(an, c)}});
  }
  return ordered_json{{"classes", classes}, {"notes", an.notes}};
}

ordered_json lefschetz_report(const Analysis& an) {
  std::int64_t sum = 0;
  ordered_json ind = ordered_json::array();
  for (const auto& c : an.classes) {
    sum += c.ind;
    ind.push_back(c.ind);
  }
  return ordered_json{{"trace", an.trace}, {"lefschetz", an.lefschetz}, {"indices", ind}, {"sum_ind", sum},
                      {"verdict", verdict_json(an.verdicts.at("lefschetz_hopf"))}};
}

ordered_json route_report(const Analysis& an, const RouteAnalysis& ra) {
  const Basis& b = ra.endo.basis;
  ordered_json o;
  o["route"] = word_str(ra.route, b);
  o["base"] = an.map.graph.vertices[ra.base];
  o["twisted_endo"] = endo_to_json(ra.endo);
  o["empty"] = ra.empty_no_witness;
  if (ra.empty_no_witness) {
    o["emptiness"] = "no constant-route witness to depth " + std::to_string(ra.depth);
  } else {
    o["equivalent_vertex"] = an.map.graph.vertices[*ra.equivalent_vertex];
    o["witness"] = word_str(ra.witness, b);
  }
  o["rk"] = ra.rk;
  o["rk_status"] = ra.rk_status;
  o["fix_generators"] = words_json(ra.fix_generators, b);
  o["a"] = ra.a;
  o["a_status"] = ra.a_status;
  ordered_json att = ordered_json::array();
  for (const auto& w : ra.attracting) att.push_back(infinite_word_to_json(w, b, 16));
  o["attracting"] = att;
  o["ichr"] = ra.ichr();
  o["prop_empty_class"] = verdict_json(ra.prop_empty_class);
  return o;
}

}  // namespace nielsen
