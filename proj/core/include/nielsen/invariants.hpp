#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/boundary.hpp"
#include "nielsen/rtt.hpp"

namespace nielsen {

struct ClassTriple {
  int ind = 0, rk = 0, a = 0;
  bool operator==(const ClassTriple&) const = default;
};

// Point component, or circle of degree k (k != 0).
std::vector<ClassTriple> base_invariants_point();
std::vector<ClassTriple> base_invariants_circle(int k);

struct AttractingRep {
  int vertex = 0;     // fixed vertex carrying the direction
  int direction = 0;  // oriented edge with Df(d) = d
  InfiniteWord word;  // in the basis of pi_1 at the class representative
  AttractionVerdict verdict;
  BoundaryTrace escape;  // against the fixed subgroup graph
};

struct FixedPointClass {
  std::vector<int> members;
  int rep = 0;
  int delta = 0;  // total delta over all strata
  int ind = 0;
  int ind_local = 0;
  std::optional<int> rk, a;
  std::optional<int> ichr() const {
    if (rk && a) return 1 - *rk - *a;
    return std::nullopt;
  }
  std::vector<std::string> steps;  // provenance, one entry per contributing rule
  std::string provenance;          // rule deciding rk and a last
  Basis basis;                     // pi_1 at rep
  Endomorphism endo;               // f_* at rep, trivial route
  std::vector<Word> fix_generators;
  bool generators_verified = false;
  std::vector<AttractingRep> attracting;
};

struct Verdict {
  std::string status;  // pass | fail | not-applicable
  std::string detail;
};

struct AnalysisOptions {
  std::size_t nielsen_depth = 8;      // partition oracle path length
  std::size_t inp_oracle_depth = 6;   // iNp oracle path length
  int route_depth = 8;
  double tol = 1e-9;
  bool attracting = true;             // build and check attracting words
  bool oracles = true;
  std::optional<Filtration> filtration;  // in terms of the input's edges
};

struct Analysis {
  GraphMap input;
  GraphMap map;  // after subdivision
  std::vector<InteriorPoint> subdivided;
  Filtration filtration;
  std::vector<StratumInfo> strata;
  std::vector<FixedPointClass> classes;
  std::int64_t trace = 0;
  std::int64_t lefschetz = 0;
  int chi = 0;
  bool all_verified = true;
  std::string partition_oracle;  // agree | oracle-inconclusive
  std::string inp_oracle;        // agree
  std::map<std::string, Verdict> verdicts;
  std::vector<std::string> notes;

  const FixedPointClass* class_of(int vertex) const;
};

// Injectivity, Lefschetz number, subdivision, filtration and stratum
// classification only; classes stay empty.
Analysis classify_map(const GraphMap& f, const AnalysisOptions& opt = {});

// Full pipeline: subdivide, filter, classify, recurse, cross-check, verify.
// Throws InputError, NotInjectiveError, UnclassifiableError, StructureError.
Analysis analyze(const GraphMap& f, const AnalysisOptions& opt = {});

// Sum over classes of max(0, 2 rk + a - 2), i.e. twice the sum bound.
std::optional<int> doubled_sum_bound(const Analysis& an);

struct RouteAnalysis {
  Word route;
  int base = 0;
  Endomorphism endo;  // f_w = i_w o f_*
  bool empty_no_witness = true;
  std::optional<int> equivalent_vertex;  // fixed vertex whose class the route labels
  Word witness;
  int depth = 0;
  int rk = 0;
  std::vector<Word> fix_generators;
  std::string rk_status;  // search-lower-bound
  int a = 0;
  std::string a_status;   // certificate: finite-order | lower-bound
  std::vector<InfiniteWord> attracting;
  int ichr() const { return 1 - rk - a; }
  Verdict prop_empty_class;
};

RouteAnalysis analyze_route(const Analysis& an, const Word& route, int base, const AnalysisOptions& opt = {});

}  // namespace nielsen
