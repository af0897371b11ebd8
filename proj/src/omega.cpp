#include "grouplab/omega.hpp"

#include <algorithm>
#include <utility>

#include "grouplab/subgroup_presentation.hpp"

namespace grouplab {
namespace {

constexpr std::int64_t kMaxAdjoinedExponent = std::int64_t{1} << 20;

struct RelativeView {
  CosetTable table;
  SubgroupPresentation sp;
};

RelativeView relative_view(const Presentation& quotient,
                           const std::vector<Word>& gens,
                           const EnumLimits& limits) {
  EnumResult res = enumerate_cosets(quotient, gens, limits);
  if (res.status != EnumStatus::closed)
    throw LimitError("subgroup enumeration did not close within limits");
  SubgroupPresentation sp =
      tietze_simplify(subgroup_presentation(quotient, *res.table));
  return {std::move(*res.table), std::move(sp)};
}

std::int64_t checked_pow(std::int64_t p, std::int64_t s) {
  std::int64_t v = 1;
  for (std::int64_t i = 0; i < s; ++i) {
    if (__builtin_mul_overflow(v, p, &v) || v > kMaxAdjoinedExponent)
      throw LimitError("adjoined exponent too large to materialize");
  }
  return v;
}

}  // namespace

StepResult branch_step(const BranchState& st, int bit,
                       const ScheduleEntry& sched, std::int64_t prime,
                       const EnumLimits& limits) {
  if (bit != 0 && bit != 1) throw InputError("bit must be 0 or 1");
  if (sched.m < 1) throw InputError("schedule m must be >= 1");
  check_word(st.quotient.alphabet(), sched.candidate);
  const Word& g = sched.candidate;
  if (g.empty()) throw InputError("schedule candidate is the empty word");

  for (const AdjoinedRelator& h : st.history)
    if (h.root == g || h.root == g.inverse())
      throw InputError("candidate was already made torsion on this branch");

  RelativeView view = relative_view(st.quotient, st.subgroup_gens, limits);
  if (view.table.trace(1, g) != 1)
    throw InputError("schedule candidate lies outside the subgroup");

  Presentation pres_n = view.sp.presentation();
  MembershipResult alive =
      membership_level(pres_n, prime, view.sp.rewrite(g), limits);
  if (alive.kind == MembershipResult::Kind::trivial)
    throw InputError("schedule candidate is trivial in the current quotient");
  if (alive.kind == MembershipResult::Kind::undecided)
    throw LimitError("candidate level undecided within limits; step refused");

  std::int64_t s = sched.s_override.value_or(std::max(st.r + sched.m, st.q));
  if (s < st.q) throw InputError("pinned s is below the level counter q");
  std::int64_t n0 = checked_pow(prime, s);
  MembershipResult depth =
      membership_level(pres_n, prime, view.sp.rewrite(g.pow(n0)), limits);
  if (depth.kind == MembershipResult::Kind::trivial)
    throw InputError("candidate power is already trivial; nothing to adjoin");
  if (depth.kind == MembershipResult::Kind::undecided)
    throw LimitError("membership level undecided within limits; step refused");
  std::int64_t v = depth.level;
  if (v <= s) throw InputError("schedule does not advance the level counter");

  std::int64_t n = bit == 0 ? n0 : checked_pow(prime, v);
  std::vector<Word> rels = st.quotient.relators();
  rels.push_back(g.pow(n));

  BranchState out{Presentation(st.quotient.alphabet(), std::move(rels)),
                  st.subgroup_gens, st.r + sched.m, v, st.history};
  out.history.push_back({g, n});
  StepAudit audit{bit, g, n, s, v, out.r, out.q, alive.level};
  return {std::move(out), audit};
}

DivergenceResult divergence_check(const BranchState& st0,
                                  const BranchState& st1, std::int64_t prime,
                                  const EnumLimits& limits) {
  if (st0.q != st1.q || st0.history.size() != st1.history.size())
    throw InputError("divergence check expects sibling states");
  DivergenceResult out;
  out.v = st0.q;
  auto level_order = [&](const BranchState& st) -> std::optional<std::int64_t> {
    RelativeView view = relative_view(st.quotient, st.subgroup_gens, limits);
    PSeriesReport rep = delta_orders(view.sp.presentation(), prime,
                                     static_cast<int>(out.v), limits);
    if (static_cast<std::int64_t>(rep.levels.size()) <= out.v)
      return std::nullopt;
    return rep.levels[static_cast<std::size_t>(out.v)].e;
  };
  try {
    std::optional<std::int64_t> e0 = level_order(st0);
    std::optional<std::int64_t> e1 = level_order(st1);
    if (!e0 || !e1) {
      out.note = "ladder truncated before the recorded level";
      return out;
    }
    out.e0 = *e0;
    out.e1 = *e1;
  } catch (const LimitError& err) {
    out.note = err.what();
    return out;
  }
  out.conclusive = true;
  out.strict = out.e0 < out.e1;
  return out;
}

BranchState initial_state(const Presentation& base,
                          std::vector<Word> subgroup_gens) {
  for (const Word& w : subgroup_gens) check_word(base.alphabet(), w);
  return {base, std::move(subgroup_gens), 0, 0, {}};
}

OmegaRun run_omega(const Presentation& base,
                   const std::vector<Word>& subgroup_gens, std::int64_t prime,
                   const std::string& bits,
                   const std::vector<ScheduleEntry>& schedule,
                   const EnumLimits& limits) {
  for (char c : bits)
    if (c != '0' && c != '1') throw InputError("bit string must be over {0,1}");
  if (schedule.size() < bits.size())
    throw InputError("schedule is shorter than the bit string");

  OmegaRun run;
  run.states.push_back(initial_state(base, subgroup_gens));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    StepResult step = branch_step(run.states.back(), bits[i] - '0',
                                  schedule[i], prime, limits);
    run.states.push_back(std::move(step.state));
    run.audits.push_back(step.audit);
  }
  const BranchState& last = run.states.back();
  RelativeView view = relative_view(last.quotient, last.subgroup_gens, limits);
  run.final_report = delta_orders(view.sp.presentation(), prime,
                                  static_cast<int>(last.q), limits);
  return run;
}

}  // namespace grouplab
