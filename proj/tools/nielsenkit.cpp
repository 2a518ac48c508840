#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nielsen/corpus.hpp"
#include "nielsen/error.hpp"
#include "nielsen/json_io.hpp"
#include "nielsen/properties.hpp"

namespace fs = std::filesystem;
using namespace nielsen;

namespace {

struct Common {
  std::string out;
  std::size_t nielsen_depth = 8;
  std::size_t inp_depth = 6;
  double tol = 1e-9;
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("NIELSENKIT_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 20240601ULL;
}

int emit(const Common& c, const ordered_json& j) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + c.out);
    f << text;
  }
  return 0;
}

AnalysisOptions options(const Common& c, const Instance& in) {
  AnalysisOptions o;
  o.nielsen_depth = c.nielsen_depth;
  o.inp_oracle_depth = c.inp_depth;
  o.tol = c.tol;
  o.filtration = in.filtration;
  return o;
}

bool any_fail(const Analysis& an) {
  for (const auto& [k, v] : an.verdicts)
    if (v.status == "fail") return true;
  return false;
}

ordered_json header(const std::string& cmd, const Instance& in) { return ordered_json{{"command", cmd}, {"input", in.name}}; }

int error_exit(const Common& c, const std::exception& e) {
  ordered_json j{{"error", e.what()}};
  if (auto* u = dynamic_cast<const UnclassifiableError*>(&e)) j["stratum_edges"] = u->edges();
  std::cerr << "nielsenkit: " << e.what() << "\n";
  try {
    emit(c, j);
  } catch (...) {
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nielsen fixed point invariants of graph selfmaps and free group endomorphisms"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", c.out, "Write the JSON report here instead of stdout");
    sub->add_option("--nielsen-depth", c.nielsen_depth, "Brute-force Nielsen path length")->check(CLI::NonNegativeNumber);
    sub->add_option("--inp-depth", c.inp_depth, "iNp oracle path length")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", c.tol, "Perron-Frobenius tolerance")->check(CLI::PositiveNumber);
  };

  std::string input;
  auto* validate = app.add_subcommand("validate", "Parse and check an input file");
  auto* classify = app.add_subcommand("classify", "Subdivide, filter and classify strata");
  auto* invariants = app.add_subcommand("invariants", "Fixed point classes and their invariants");
  auto* attracting = app.add_subcommand("attracting", "Attracting fixed words per class");
  auto* lefschetz = app.add_subcommand("lefschetz", "Lefschetz number against the index sum");
  for (auto* sub : {validate, classify, invariants, attracting, lefschetz}) {
    sub->add_option("input", input, "Instance JSON")->required()->check(CLI::ExistingFile);
    add_common(sub);
  }

  auto* route = app.add_subcommand("route", "Analyse the fixed point class of an f-route");
  std::string word, base_name;
  int depth = 8;
  route->add_option("input", input, "Instance JSON")->required()->check(CLI::ExistingFile);
  route->add_option("--word,-w", word, "Route word at the base vertex")->required();
  route->add_option("--depth", depth, "Route equivalence search depth")->check(CLI::NonNegativeNumber);
  route->add_option("--base", base_name, "Fixed base vertex (default: first vertex)");
  add_common(route);

  auto* verify = app.add_subcommand("verify", "Check verdicts and expectations");
  std::string suite;
  bool props = false;
  std::size_t count = 500;
  verify->add_option("input", input, "Instance JSON")->check(CLI::ExistingFile);
  verify->add_option("--suite", suite, "Verify every *.json in a directory")->check(CLI::ExistingDirectory);
  verify->add_flag("--props", props, "Run the seeded random property suite");
  verify->add_option("--count", count, "Property suite size");
  add_common(verify);

  auto* corpus = app.add_subcommand("emit-corpus", "Write the shipped corpus");
  std::string dir;
  corpus->add_option("dir", dir, "Target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every usage error is an input error.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*corpus) {
      ordered_json files = ordered_json::array();
      for (const auto& p : emit_corpus(dir)) files.push_back(p.filename().string());
      std::cout << ordered_json{{"command", "emit-corpus"}, {"files", files}}.dump(2) << "\n";
      return 0;
    }

    if (*verify) {
      if (props) {
        AnalysisOptions o;
        o.attracting = false;
        const std::uint64_t seed = seed_from_env();
        PropertyReport r = run_property_suite(count, seed, 4, o);
        ordered_json j{{"command", "verify"}, {"suite", "properties"}, {"seed", seed},
                       {"instances", r.instances}, {"analysed", r.analysed}, {"skipped", r.skipped},
                       {"skip_rate", round12(r.skip_rate())}, {"skip_reasons", r.skip_reasons},
                       {"verified_classes", r.verified_classes}, {"violations", r.violations},
                       {"details", r.details}};
        emit(c, j);
        return r.violations == 0 && r.skip_rate() < 0.5 ? 0 : 1;
      }
      std::vector<fs::path> files;
      if (!suite.empty()) {
        for (const auto& e : fs::directory_iterator(suite))
          if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
      } else if (!input.empty()) {
        files.push_back(input);
      } else {
        throw InputError("verify needs an input file, --suite DIR or --props");
      }
      ordered_json results = ordered_json::array();
      int worst = 0;
      for (const auto& f : files) {
        InstanceResult r;
        try {
          Instance in = load_instance(f);
          AnalysisOptions o;
          o.nielsen_depth = c.nielsen_depth;
          o.inp_oracle_depth = c.inp_depth;
          o.tol = c.tol;
          r = verify_instance(in, o);
        } catch (const InputError& e) {
          r.name = f.stem().string();
          r.exit_code = 2;
          r.failures.push_back(e.what());
        }
        worst = std::max(worst, r.exit_code);
        ordered_json item{{"instance", r.name}, {"status", r.exit_code == 0 ? "pass" : r.exit_code == 1 ? "fail" : "error"},
                          {"failures", r.failures}};
        if (files.size() == 1) item["report"] = r.report;
        results.push_back(item);
      }
      emit(c, ordered_json{{"command", "verify"}, {"instances", results.size()}, {"results", results}});
      return worst;
    }

    Instance in = load_instance(input);
    AnalysisOptions o = options(c, in);

    if (*validate) {
      ordered_json j = header("validate", in);
      j["kind"] = in.endo ? "endomorphism" : "graph-map";
      j["vertices"] = in.map.graph.vertices.size();
      j["edges"] = in.map.graph.edges.size();
      Analysis an = classify_map(in.map, o);
      j["injective"] = true;
      j["chi"] = an.chi;
      j["subdivided"] = classification_report(an)["subdivided"];
      emit(c, j);
      return 0;
    }
    if (*classify) {
      ordered_json j = header("classify", in);
      j.update(classification_report(classify_map(in.map, o)));
      return emit(c, j);
    }
    if (*lefschetz) {
      o.attracting = false;
      Analysis an = analyze(in.map, o);
      ordered_json j = header("lefschetz", in);
      j.update(lefschetz_report(an));
      emit(c, j);
      return an.verdicts.at("lefschetz_hopf").status == "fail" ? 1 : 0;
    }
    if (*route) {
      o.route_depth = depth;
      Analysis an = analyze(in.map, o);
      int base = 0;
      if (!base_name.empty()) {
        base = an.map.graph.vertex_index(base_name);
        if (base < 0) throw InputError("unknown base vertex \"" + base_name + "\"");
      }
      Pi1Data pi = pi1_data(an.map.graph, base);
      RouteAnalysis ra = analyze_route(an, parse_word(word, pi.basis), base, o);
      ordered_json j = header("route", in);
      j.update(route_report(an, ra));
      emit(c, j);
      return ra.prop_empty_class.status == "fail" ? 1 : 0;
    }
    Analysis an = analyze(in.map, o);
    ordered_json j = header(*attracting ? "attracting" : "invariants", in);
    j.update(*attracting ? attracting_report(an) : invariants_report(an));
    emit(c, j);
    return any_fail(an) ? 1 : 0;
  } catch (const std::exception& e) {
    return error_exit(c, e);
  }
}
