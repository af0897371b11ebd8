#pragma once

#include <string>
#include <vector>

#include "grouplab/coset_table.hpp"

namespace grouplab {

enum class CheckStatus { pass, fail, inconclusive };

std::string check_status_name(CheckStatus s);

/// One verified claim: what was computed, what was expected, how it went.
struct PipelineCheck {
  std::string id;
  std::string claim;
  std::string computed;
  std::string expected;
  CheckStatus status = CheckStatus::inconclusive;

  bool operator==(const PipelineCheck&) const = default;
};

/// Deliberately broken inputs for negative-control runs.
enum class PipelineMutation { none, relator_power, subgroup_generator };

struct PipelineOptions {
  EnumLimits limits{};
  int ball_radius = 8;
  PipelineMutation mutation = PipelineMutation::none;
};

/// Ordered chain of checks plus claims carried as citations only.  The
/// verdict is "pass" only when every check passes, "fail" when any check
/// fails, and "incomplete" when limits left a check undecided.
struct PipelineReport {
  std::vector<PipelineCheck> checks;
  std::vector<std::string> narrative;
  std::string verdict;

  bool operator==(const PipelineReport&) const = default;
};

/// Runs the whole verification chain for the order-(2,4,8) question:
/// the free-product identity, the index-8 kernel and its rank, the mod-2
/// layer subgroup, the rewriting facts, the rank-17 subgroup, the
/// quotient presentation, the index-64 image, and the reflection-group
/// cross-check.
PipelineReport run_pipeline(const PipelineOptions& opts = {});

/// Fixed-format human-readable rendering, deterministic byte for byte.
std::string print_report(const PipelineReport& rep);

}  // namespace grouplab
