#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nielsen {

// Malformed or out-of-contract input (CLI exit status 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input parses but violates a structural requirement, or two independent
// computations disagree.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInjectiveError : public StructureError {
 public:
  NotInjectiveError() : StructureError("not injective") {}
};

class UnclassifiableError : public StructureError {
 public:
  UnclassifiableError(std::string reason, std::vector<std::string> edges)
      : StructureError("unclassifiable: refine filtration (" + reason + ")"),
        reason_(std::move(reason)),
        edges_(std::move(edges)) {}
  const std::string& reason() const { return reason_; }
  const std::vector<std::string>& edges() const { return edges_; }

 private:
  std::string reason_;
  std::vector<std::string> edges_;
};

}  // namespace nielsen
