#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jetvar {

/// Outcome of one identity group: worst error observed over all trials,
/// formatted into `detail`, and the pass flag against the group's pinned
/// tolerance.
struct GroupResult {
  std::string name;
  std::string detail;
  bool pass = false;
};

struct VerificationReport {
  std::vector<GroupResult> groups;
  bool all_pass = true;
};

/// Runs the full randomized identity suite.  Every group draws its own
/// deterministic generator from (seed, group index), so a fixed seed
/// reproduces the exact numbers.  max_k bounds the velocity orders used by
/// the order-parametric groups (clamped to [1, 3]).
VerificationReport run_verification(std::uint64_t seed, int max_k = 3);

}  // namespace jetvar
