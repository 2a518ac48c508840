#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nielsen/invariants.hpp"

namespace nielsen {

// Each image uniform among nonempty reduced words of length <= max_len.
Endomorphism random_endo(std::mt19937_64& rng, std::size_t rank, std::size_t max_len);
// Draws until is_injective holds.
Endomorphism random_injective_endo(std::mt19937_64& rng, std::size_t rank, std::size_t max_len);

struct PropertyReport {
  std::size_t instances = 0;  // injective endomorphisms drawn
  std::size_t analysed = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> skip_reasons;
  std::size_t verified_classes = 0;
  std::size_t essential_verified = 0;
  std::size_t violations = 0;
  std::vector<std::string> details;
  double skip_rate() const { return instances ? static_cast<double>(skipped) / static_cast<double>(instances) : 0.0; }
};

// Rank-2 roses: ind <= ichr, equality when essential, Lefschetz sum, and the
// halved sum bound.
PropertyReport run_property_suite(std::size_t count, std::uint64_t seed, std::size_t max_len = 4,
                                  const AnalysisOptions& opt = {});

struct TraceBucket {
  std::size_t instances = 0;
  std::size_t verified = 0;  // every class verified
  std::size_t found = 0;     // among verified
  std::size_t unverified = 0;
  std::size_t skipped = 0;   // unclassifiable
  std::size_t errors = 0;    // cross-check failures
  std::vector<std::string> misses;
};

struct TraceReport {
  TraceBucket low;   // tr < 1: expect a class with rk = a = 0
  TraceBucket high;  // tr > 1: expect a class with rk + a > 1
};

TraceReport run_trace_suite(std::size_t count_each, std::uint64_t seed, std::size_t max_len = 4,
                            const AnalysisOptions& opt = {});

}  // namespace nielsen
