#include <doctest.h>

#include <fstream>
#include <sstream>

#include "nielsen/corpus.hpp"
#include "nielsen/error.hpp"
#include "support.hpp"

using namespace nielsen;
using testing_support::endo;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("endomorphism JSON round trip") {
  auto phi = endo({"aab", "Ba"});
  CHECK(endo_from_json(endo_to_json(phi)) == phi);
  Endomorphism named(Basis({"a1", "a2"}), {{-2, 1, 2}, {2}});
  auto j = endo_to_json(named);
  CHECK(j["images"]["a1"] == "a2-.a1.a2");
  CHECK(endo_from_json(j) == named);
  CHECK_THROWS_AS(endo_from_json(json::parse(R"({"rank":2,"images":{"a":"a"}})")), InputError);
  CHECK_THROWS_AS(endo_from_json(json::parse(R"({"rank":1,"images":{"a":"q"}})")), InputError);
}

TEST_CASE("graph map JSON round trip with filtration") {
  auto f = testing_support::rose({"A", "Abb"});
  auto j = graph_map_to_json(f);
  auto g = graph_map_from_json(j);
  CHECK(g.graph.vertices == f.graph.vertices);
  CHECK(g.edge_images == f.edge_images);
  CHECK(g.vertex_map == f.vertex_map);

  std::optional<Filtration> filt;
  auto h = graph_map_from_json(json::parse(R"({"vertices":["*"],
      "edges":[{"name":"a","from":"*","to":"*"},{"name":"b","from":"*","to":"*"}],
      "vertex_map":{"*":"*"},"edge_map":{"a":["a"],"b":["b","a"]},
      "filtration":[["a"],["b"]]})"),
                               &filt);
  REQUIRE(filt.has_value());
  CHECK(filt->strata.size() == 2);
  CHECK(filt->user_supplied);
  Filtration copy = *filt;
  CHECK(graph_map_from_json(graph_map_to_json(h, &copy)).edge_images == h.edge_images);
}

TEST_CASE("empty edge images need an anchor vertex") {
  const char* text = R"({"vertices":["u","v"],"edges":[{"name":"e","from":"u","to":"v"},{"name":"l","from":"u","to":"u"}],
      "vertex_map":{"u":"u","v":"u"},"edge_map":{"e":{"path":[],"at":"u"},"l":["l","l"]}})";
  auto f = testing_support::graph_from(text);
  CHECK(f.edge_images[0].trivial());
  CHECK(f.edge_images[0].start == 0);
}

TEST_CASE("instance loading reports the file") {
  auto dir = fs::temp_directory_path() / "nielsen_io_test";
  fs::create_directories(dir);
  {
    std::ofstream(dir / "broken.json") << "{ \"rank\": 2, ";
  }
  try {
    load_instance(dir / "broken.json");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
  }
  CHECK_THROWS_AS(load_instance(dir / "missing.json"), InputError);
  fs::remove_all(dir);
}

TEST_CASE("shipped corpus is byte-stable and passes") {
  auto dir = fs::temp_directory_path() / "nielsen_corpus_test";
  fs::remove_all(dir);
  auto written = emit_corpus(dir);
  CHECK(written.size() == corpus_files().size());
  for (const auto& p : written) {
    const fs::path shipped = fs::path(NIELSEN_CORPUS_DIR) / p.filename();
    REQUIRE_MESSAGE(fs::exists(shipped), shipped.string());
    CHECK_MESSAGE(slurp(p) == slurp(shipped), p.filename().string());
  }
  for (const auto& [name, j] : corpus_files()) {
    InstanceResult r = verify_instance(instance_from_json(j, name));
    CHECK_MESSAGE(r.exit_code == 0, name);  // k = 0 instances expect their error
  }
  fs::remove_all(dir);
}

TEST_CASE("reports carry exact data") {
  Analysis an = analyze(testing_support::rose({"A", "Abb"}));
  auto c = classification_report(an);
  CHECK(c["subdivided"] == ordered_json::array({"a@1/2", "b@1/2"}));
  auto inv = invariants_report(an);
  CHECK(inv["classes"].size() == 2);
  auto l = lefschetz_report(an);
  CHECK(l["lefschetz"] == 0);
  CHECK(round12(0.1 + 0.2) == 0.3);
}
