#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/json_io.hpp"

namespace nielsen {

// The shipped instances, with expectations, in file order.
std::vector<std::pair<std::string, ordered_json>> corpus_files();
// Writes <name>.json for every corpus instance; returns the paths written.
std::vector<std::filesystem::path> emit_corpus(const std::filesystem::path& dir);

struct InstanceResult {
  std::string name;
  int exit_code = 0;  // 0 pass, 1 verdict or expectation failure, 2 input/structure error
  std::vector<std::string> failures;
  ordered_json report;
};

InstanceResult verify_instance(const Instance& in, const AnalysisOptions& opt = {});

}  // namespace nielsen
