#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grouplab/coset_table.hpp"
#include "grouplab/p_series.hpp"
#include "grouplab/presentation.hpp"

namespace grouplab {

/// A computation that hit its resource limits before reaching a verdict.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One relator root^exponent adjoined along a branch.
struct AdjoinedRelator {
  Word root;
  std::int64_t exponent = 1;
  bool operator==(const AdjoinedRelator&) const = default;
};

/// Quotient under construction along one bit string, with its counters.
struct BranchState {
  Presentation quotient;
  std::vector<Word> subgroup_gens;
  std::int64_t r = 0;
  std::int64_t q = 0;
  std::vector<AdjoinedRelator> history;
};

/// One step of the branching plan: the element to make torsion and the
/// oracle integer m; s may be pinned explicitly.
struct ScheduleEntry {
  Word candidate;
  std::int64_t m = 1;
  std::optional<std::int64_t> s_override;
};

struct StepAudit {
  int bit = 0;
  Word root;
  std::int64_t exponent = 1;  // the adjoined relator is root^exponent
  std::int64_t s = 0;
  std::int64_t v = 0;
  std::int64_t r = 0;  // counters after the step
  std::int64_t q = 0;
  int proxy_level = 0;  // layer depth at which the candidate was seen alive
  bool operator==(const StepAudit&) const = default;
};

struct StepResult {
  BranchState state;
  StepAudit audit;
};

/// Adjoins candidate^(p^s) (bit 0) or candidate^(p^v) (bit 1), where
/// s = max(r+m, q) and v is the membership level of candidate^(p^s) in
/// the subgroup image.  Counters advance to r+m and v.  Throws
/// InputError on malformed schedules and LimitError when a verdict needs
/// more resources than the limits allow.
StepResult branch_step(const BranchState& st, int bit,
                       const ScheduleEntry& sched, std::int64_t prime,
                       const EnumLimits& limits = {});

struct DivergenceResult {
  std::int64_t v = 0;
  std::int64_t e0 = 0, e1 = 0;  // log_p layer orders at level v
  bool strict = false;          // e0 < e1
  bool conclusive = false;
  std::string note;  // why the check was inconclusive
};

/// Compares the subgroup-image ladders of two sibling branches at their
/// recorded level.  Truncation before that level makes the result
/// inconclusive, never a verdict.
DivergenceResult divergence_check(const BranchState& st0,
                                  const BranchState& st1, std::int64_t prime,
                                  const EnumLimits& limits = {});

BranchState initial_state(const Presentation& base,
                          std::vector<Word> subgroup_gens);

struct OmegaRun {
  std::vector<BranchState> states;  // states[0] is the base state
  std::vector<StepAudit> audits;    // one per bit
  PSeriesReport final_report;       // ladder of the final subgroup image
};

/// Folds branch_step along the bit string; schedule entries are consumed
/// in order and must cover every bit.
OmegaRun run_omega(const Presentation& base,
                   const std::vector<Word>& subgroup_gens, std::int64_t prime,
                   const std::string& bits,
                   const std::vector<ScheduleEntry>& schedule,
                   const EnumLimits& limits = {});

}  // namespace grouplab
