#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nielsen/graph.hpp"

namespace nielsen {

// Strata are lists of geometric edge ids, lowest first. Level 0 (the vertex
// set) is implicit.
struct Filtration {
  std::vector<std::vector<int>> strata;
  bool user_supplied = false;
};

Filtration derive_filtration(const GraphMap& f);
// Throws InputError unless the strata partition the edges and every level is
// invariant.
void validate_filtration(const GraphMap& f, const Filtration& filt);

struct PFResult {
  double lambda = 0;
  std::vector<double> L;
  double residual = 0;
  bool exact = false;  // closed form for 1x1 and 2x2
};

bool irreducible(const IntMatrix& m);
// T[i][j] = number of times the image of edge i crosses edge j; L solves
// T L = lambda L with min entry 1.
PFResult pf_metric(const IntMatrix& t, double tol = 1e-9);

enum class StratumKind { Type1, Type2, Type3, Linear };
std::string to_string(StratumKind k);

struct NielsenPathInfo {
  EdgePath path;
  bool has_legs = false;
  EdgePath p1, p2, tail;  // path = p1 . reverse(p2), f(p_i) = p_i . tail
  double leg_length_1 = 0, leg_length_2 = 0;
};

struct InpResult {
  enum class Status { Found, CertifiedNone, NoneWithinBound };
  Status status = Status::CertifiedNone;
  std::vector<NielsenPathInfo> paths;
  double l_bound = 0;
  std::size_t search_len = 0;
  std::string note;
};
std::string to_string(InpResult::Status s);

struct StratumInfo {
  int level = 0;  // 1-based
  StratumKind kind = StratumKind::Type1;
  std::vector<int> edges;
  IntMatrix transition;
  std::optional<PFResult> pf;
  bool pointwise = false;                       // single edge fixed pointwise
  std::optional<int> circle_degree;             // level-1 circle component
  std::vector<std::pair<int, int>> illegal_turns;  // within the stratum
  std::vector<int> fixed_directions;           // Delta: stratum directions fixed by Df at fixed vertices
  InpResult inp;
};

struct RttOptions {
  double tol = 1e-9;
  std::size_t linear_search_len = 8;  // brute-force bound for linear strata
  std::size_t ray_cap = 256;          // max edges generated per ray
};

StratumInfo classify_stratum(const GraphMap& f, const Filtration& filt, int level, const RttOptions& opt = {});
std::vector<StratumInfo> classify_all(const GraphMap& f, const Filtration& filt, const RttOptions& opt = {});

// Throws InputError if an endpoint is not fixed.
bool verify_nielsen_path(const GraphMap& f, const EdgePath& p);
bool is_indivisible_nielsen(const GraphMap& f, const EdgePath& p);

// Splits a Nielsen path as p1 . reverse(p2) with f(p_i) = p_i . t.
std::optional<NielsenPathInfo> split_legs(const GraphMap& f, const EdgePath& p);

// Every tight Nielsen path of length 1..max_len between fixed vertices,
// optionally only indivisible ones, optionally only those crossing the given
// geometric edges. One representative per reversal pair.
std::vector<EdgePath> brute_nielsen_paths(const GraphMap& f, std::size_t max_len, bool indivisible_only,
                                          const std::vector<int>& must_cross = {});

double path_length(const EdgePath& p, const std::vector<double>& edge_length);

// First n edges of the ray lim [f^k(d)] for a direction with Df(d) = d.
// Returns fewer edges if the iterates stop growing.
EdgePath ray_prefix(const GraphMap& f, int d, std::size_t n);

}  // namespace nielsen
