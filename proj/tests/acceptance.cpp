#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grouplab/coset_table.hpp"
#include "grouplab/free_product.hpp"
#include "grouplab/hyperbolic.hpp"
#include "grouplab/omega.hpp"
#include "grouplab/p_series.hpp"
#include "grouplab/presentation.hpp"
#include "grouplab/subgroup_presentation.hpp"
#include "grouplab/wiegold.hpp"
#include "grouplab/words.hpp"

using namespace grouplab;

namespace {

bool check(bool cond, std::string& why, const std::string& msg) {
  if (!cond && why.empty()) why = msg;
  return cond;
}

Presentation amb() { return parse_presentation("gens: x,y\nrels: x^2, y^4"); }

std::vector<Word> kernel_gens(const Presentation& a) {
  return parse_word_list(a.alphabet(),
                         "x*y*x^-1*y^-1\nx*y^2*x^-1*y^-2\nx*y^3*x^-1*y^-3");
}

bool crit1(std::string& why) {
  bool ok = true;
  const Presentation a = amb();
  const Alphabet& al = a.alphabet();
  const std::vector<Word> b_gens = kernel_gens(a);
  const Word x = parse_word(al, "x");
  const Word y = parse_word(al, "y");
  const Word xy = x * y;

  FreeProductOfCyclics fp({2, 4});
  const Word rhs = commutator(x, y) * commutator(x, y.pow(2)).inverse() *
                   commutator(x, y.pow(3));
  ok &= check(fp.is_trivial(xy.pow(4) * rhs.inverse()), why,
              "product identity fails in normal form");

  const EnumResult eb = enumerate_cosets(a, b_gens, {});
  ok &= check(eb.table.has_value(), why, "kernel enumeration did not close");
  if (!eb.table) return false;
  ok &= check(eb.table->n_cosets() == 8, why, "first index is not 8");

  const SubgroupPresentation spb =
      tietze_simplify(subgroup_presentation(a, *eb.table), 100000);
  ok &= check(spb.n_generators() == 3 && spb.n_relators() == 0, why,
              "kernel is not free of rank 3");

  const Presentation pb = spb.presentation();
  const LayerMap lm = layer_map(pb, 2);
  ok &= check(lm.d == 3, why, "mod-2 layer rank of the kernel is not 3");
  const CosetTable tc = table_from_homomorphism(pb, 2, lm.d, lm.images, {});
  ok &= check(tc.n_cosets() == 8, why, "second index is not 8");

  const CosetTable composed = compose_tables(*eb.table, spb, tc);
  ok &= check(composed.n_cosets() == 64, why, "composed index is not 64");

  const SubgroupPresentation spc =
      tietze_simplify(subgroup_presentation(a, composed), 400000);
  ok &= check(spc.n_generators() == 17 && spc.n_relators() == 0, why,
              "second kernel is not free of rank 17");

  std::vector<Word> c_gens;
  for (int i = 0; i < spc.n_generators(); ++i)
    c_gens.push_back(spc.generator_ambient(i));

  std::vector<Word> xy_and_c = c_gens;
  xy_and_c.push_back(xy);
  const std::optional<std::int64_t> mixed = subgroup_index(a, xy_and_c, {});
  ok &= check(mixed.has_value() && *mixed == 8, why,
              "index of the cyclic extension is not 8");

  const Word u = xy.pow(4);
  ok &= check(eb.table->trace(1, u) == 1, why, "fourth power left the kernel");
  ok &= check(composed.trace(1, u) != 1, why,
              "fourth power fell into the second kernel");
  ok &= check(composed.trace(1, xy.pow(8)) == 1, why,
              "eighth power is not in the second kernel");

  const std::vector<std::int64_t> v4 =
      exponent_sums(pb.alphabet(), spb.rewrite(u));
  const std::vector<std::int64_t> v8 =
      exponent_sums(pb.alphabet(), spb.rewrite(xy.pow(8)));
  const auto odd = [](std::int64_t s) { return ((s % 2) + 2) % 2 == 1; };
  ok &= check(odd(v4[0]) && odd(v4[1]) && odd(v4[2]), why,
              "fourth power has the wrong mod-2 vector");
  ok &= check(!odd(v8[0]) && !odd(v8[1]) && !odd(v8[2]), why,
              "eighth power has the wrong mod-2 vector");

  const Presentation g =
      parse_presentation("gens: x,y\nrels: x^2, y^4, (x*y)^8");
  const std::optional<std::int64_t> img = subgroup_index(g, c_gens, {});
  ok &= check(img.has_value() && *img == 64, why,
              "image index in the quotient is not 64");
  return ok;
}

bool crit2(std::string& why) {
  bool ok = true;
  const Presentation f2 = parse_presentation("gens: a,b\nrels:");
  const PSeriesReport ladder = delta_orders(f2, 2, 2);
  ok &= check(!ladder.truncated && ladder.levels.size() == 3, why,
              "free ladder truncated");

  std::int64_t e = 0;
  std::int64_t r = 2;
  const std::int64_t want_orders[] = {1, 4, 128};
  for (int i = 0; i < 3; ++i) {
    ok &= check(ladder.levels[i].e == e, why,
                "level " + std::to_string(i) + " disagrees with the recursion");
    ok &= check((std::int64_t{1} << ladder.levels[i].e) == want_orders[i], why,
                "order at level " + std::to_string(i) + " is off");
    std::int64_t power = 1;
    for (std::int64_t j = 0; j < r; ++j) power *= 2;
    e += r;
    r = (r - 1) * power + 1;
  }
  ok &= check(ladder.levels[1].d.has_value() && *ladder.levels[1].d == 5, why,
              "first-level kernel rank is not 5");

  for (std::int64_t p : {std::int64_t{2}, std::int64_t{3}}) {
    for (int k = 1; k <= 3; ++k) {
      std::int64_t order = 1;
      for (int j = 0; j < k; ++j) order *= p;
      const Presentation cyc = parse_presentation(
          "gens: x\nrels: x^" + std::to_string(order));
      const PSeriesReport lad = delta_orders(cyc, p, k + 1);
      ok &= check(!lad.truncated, why, "cyclic ladder truncated");
      for (const PSeriesLevel& level : lad.levels)
        ok &= check(level.e == std::min<std::int64_t>(level.i, k), why,
                    "cyclic ladder disagrees with arithmetic at p=" +
                        std::to_string(p) + " k=" + std::to_string(k));
    }
  }
  return ok;
}

bool crit3(std::string& why) {
  bool ok = true;
  const Presentation f2 = parse_presentation("gens: a,b\nrels:");
  std::vector<Word> words;
  std::vector<Letter> stack;
  const Letter letters[] = {make_letter(0, 1), make_letter(0, -1),
                            make_letter(1, 1), make_letter(1, -1)};
  const auto gen = [&](auto&& self, int depth) -> void {
    if (depth == 8) return;
    for (Letter l : letters) {
      if (!stack.empty() && l == inverse_letter(stack.back())) continue;
      stack.push_back(l);
      words.emplace_back(stack);
      self(self, depth + 1);
      stack.pop_back();
    }
  };
  gen(gen, 0);
  ok &= check(words.size() == 13120, why, "word census is off");

  int deepest = 0;
  for (const Word& w : words) {
    const MembershipResult m = membership_level(f2, 2, w);
    if (m.kind != MembershipResult::Kind::found || m.level < 1) {
      ok &= check(false, why,
                  "undecided word " + print_word(f2.alphabet(), w));
      break;
    }
    deepest = std::max(deepest, m.level);
  }
  ok &= check(deepest == 4, why, "deepest separation level is not 4");
  return ok;
}

bool crit4(std::string& why) {
  bool ok = true;
  const EnumLimits lim{5000, 120.0};
  const Presentation f2 = parse_presentation("gens: a,b\nrels:");
  const Alphabet& al = f2.alphabet();
  const std::vector<Word> gens = {parse_word(al, "a"), parse_word(al, "b")};
  const std::vector<ScheduleEntry> sched = {{parse_word(al, "a"), 1, {}},
                                            {parse_word(al, "b"), 2, {}}};

  const BranchState base = initial_state(f2, gens);
  const StepResult s0 = branch_step(base, 0, sched[0], 2, lim);
  const StepResult s1 = branch_step(base, 1, sched[0], 2, lim);
  const DivergenceResult d1 = divergence_check(s0.state, s1.state, 2, lim);
  ok &= check(d1.conclusive && d1.strict, why,
              "first-step siblings do not diverge strictly: " + d1.note);
  ok &= check(d1.v == 2 && d1.e0 == 5 && d1.e1 == 7, why,
              "first-step divergence is not 5 < 7 at level 2");

  const StepResult s00 = branch_step(s0.state, 0, sched[1], 2, lim);
  const StepResult s01 = branch_step(s0.state, 1, sched[1], 2, lim);
  const DivergenceResult d2 = divergence_check(s00.state, s01.state, 2, lim);
  ok &= check(d2.conclusive && d2.strict, why,
              "second-step siblings do not diverge strictly: " + d2.note);
  ok &= check(d2.v == 4 && d2.e0 == 1572887 && d2.e1 == 2097175, why,
              "second-step divergence is not 1572887 < 2097175 at level 4");

  const OmegaRun r00 = run_omega(f2, gens, 2, "00", sched, lim);
  const OmegaRun r01 = run_omega(f2, gens, 2, "01", sched, lim);
  ok &= check(r00.audits.size() == 2 && r01.audits.size() == 2, why,
              "audit trail is incomplete");
  const auto fmt = [&](const StepAudit& a) {
    std::ostringstream os;
    os << a.bit << '|' << print_word(al, a.root) << '|' << a.exponent << '|'
       << a.s << '|' << a.v << '|' << a.r << '|' << a.q << '|' << a.proxy_level;
    return os.str();
  };
  ok &= check(r00.audits[0] == r01.audits[0] &&
                  fmt(r00.audits[0]) == fmt(r01.audits[0]),
              why, "identical prefixes produced different audits");
  ok &= check(r00.audits[0] == s0.audit && r00.audits[1] == s00.audit, why,
              "folded audits disagree with single steps");
  return ok;
}

bool crit5(std::string& why) {
  bool ok = true;
  const TriangleReflections t = build_reflections({2, 4, 8});
  ok &= check(form_residual(t.a.mat) <= 1e-9 && form_residual(t.b.mat) <= 1e-9 &&
                  form_residual(t.c.mat) <= 1e-9,
              why, "a reflection does not preserve the form");
  const auto power_residual = [](const Isometry& g, int n) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    for (int i = 0; i < n; ++i) m = m * g.mat;
    return identity_residual(m);
  };
  ok &= check(power_residual(compose(t.a, t.b), 2) <= 1e-9, why,
              "(ab)^2 relation residual too large");
  ok &= check(power_residual(compose(t.b, t.c), 4) <= 1e-9, why,
              "(bc)^4 relation residual too large");
  ok &= check(power_residual(compose(t.a, t.c), 8) <= 1e-9, why,
              "(ac)^8 relation residual too large");
  ok &= check(element_order(compose(t.a, t.b), 16, 1e-6) == 2, why,
              "ab order is not 2");
  ok &= check(element_order(compose(t.b, t.c), 16, 1e-6) == 4, why,
              "bc order is not 4");
  ok &= check(element_order(compose(t.a, t.c), 16, 1e-6) == 8, why,
              "ac order is not 8");

  const CayleyBall ball =
      cayley_ball({{"a", t.a}, {"b", t.b}, {"c", t.c}}, 8, 1e-6);
  std::set<int> seen;
  for (const BallVertex& v : ball.vertices) {
    const Isometry g{v.mat, v.tol};
    if (!g.orientation_preserving()) continue;
    const int order = element_order(g, 16, 1e-6);
    if (order == 0) continue;
    ok &= check(8 % order == 0, why,
                "orientation-preserving torsion of order " +
                    std::to_string(order));
    seen.insert(order);
  }
  ok &= check(seen == std::set<int>{1, 2, 4, 8}, why,
              "expected rotation orders 1, 2, 4, 8 in the ball");
  return ok;
}

bool crit6(std::string& why) {
  bool ok = true;
  const Presentation a = amb();
  const std::vector<Word> b_gens = kernel_gens(a);
  const EnumResult eb = enumerate_cosets(a, b_gens, {});
  if (!check(eb.table.has_value(), why, "kernel enumeration did not close"))
    return false;
  validate_table(a, b_gens, *eb.table);

  const SubgroupPresentation spb =
      tietze_simplify(subgroup_presentation(a, *eb.table), 100000);
  const Presentation pb = spb.presentation();
  const LayerMap lm = layer_map(pb, 2);
  const CosetTable tc = table_from_homomorphism(pb, 2, lm.d, lm.images, {});
  const CosetTable composed = compose_tables(*eb.table, spb, tc);
  ok &= check(eb.table->n_cosets() * tc.n_cosets() == composed.n_cosets(), why,
              "index is not multiplicative along the chain");

  for (const CosetTable* table : {&*eb.table, &composed}) {
    const std::vector<Word> transversal = schreier_transversal(*table);
    std::set<Word> members(transversal.begin(), transversal.end());
    for (const Word& w : transversal) {
      const std::vector<Letter>& ls = w.letters();
      for (std::size_t k = 0; k < ls.size(); ++k) {
        const Word prefix(std::vector<Letter>(ls.begin(), ls.begin() + k));
        ok &= check(members.count(prefix) == 1, why,
                    "transversal is not prefix-closed");
      }
    }
  }

  const Presentation f2 = parse_presentation("gens: a,b\nrels:");
  for (const PSeriesReport& lad :
       {delta_orders(f2, 2, 3), delta_orders(a, 2, 2)}) {
    for (std::size_t i = 1; i < lad.levels.size(); ++i) {
      ok &= check(lad.levels[i].e >= lad.levels[i - 1].e, why,
                  "ladder is not monotone");
      if (lad.levels[i - 1].d.has_value())
        ok &= check(lad.levels[i].e ==
                        lad.levels[i - 1].e + *lad.levels[i - 1].d,
                    why, "ladder increments disagree with kernel ranks");
    }
  }

  const TriangleReflections t = build_reflections({2, 4, 8});
  const CayleyBall rot = cayley_ball(
      {{"x", compose(t.a, t.b)}, {"y", compose(t.b, t.c)}}, 3, 1e-6);
  const Word yw = parse_word(rot.labels, "y");
  double prev_c = -1.0;
  for (int m = 1; m <= 4; ++m) {
    const QuasiFit fit = quasigeodesic_fit(rot, yw, m);
    ok &= check(fit.lambda == 1.0, why, "fit slope moved off 1");
    ok &= check(fit.c >= prev_c, why, "fit constants are not nested");
    prev_c = fit.c;
  }

  PipelineOptions mut1;
  mut1.mutation = PipelineMutation::relator_power;
  const PipelineReport rep1 = run_pipeline(mut1);
  bool step9_failed = false;
  for (const PipelineCheck& c : rep1.checks)
    if (c.id == "step-9") step9_failed = c.status == CheckStatus::fail;
  ok &= check(rep1.verdict == "fail" && step9_failed, why,
              "relator mutation did not fail its designated check");

  PipelineOptions mut2;
  mut2.mutation = PipelineMutation::subgroup_generator;
  const PipelineReport rep2 = run_pipeline(mut2);
  bool step2_failed = false;
  for (const PipelineCheck& c : rep2.checks)
    if (c.id == "step-2") step2_failed = c.status == CheckStatus::fail;
  ok &= check(rep2.verdict == "fail" && step2_failed, why,
              "generator mutation did not fail its designated check");
  return ok;
}

}  // namespace

int main() {
  struct Row {
    const char* name;
    double budget_ms;
    bool (*fn)(std::string&);
  };
  const Row rows[] = {
      {"1 chain exact values", 5000.0, crit1},
      {"2 layer-ladder oracle equivalence", 10000.0, crit2},
      {"3 short-word membership levels", 60000.0, crit3},
      {"4 sibling branch divergence", 120000.0, crit4},
      {"5 triangle geometry", 60000.0, crit5},
      {"6 invariant suites and negative controls", 60000.0, crit6},
  };
  bool all = true;
  for (const Row& row : rows) {
    std::string why;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = row.fn(why);
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    if (ms >= row.budget_ms) {
      ok = false;
      if (why.empty()) why = "over time budget";
    }
    std::printf("[%s] %s (%.0f ms, budget %.0f ms)%s%s\n", ok ? "PASS" : "FAIL",
                row.name, ms, row.budget_ms, why.empty() ? "" : " -- ",
                why.c_str());
    all = all && ok;
  }
  return all ? 0 : 1;
}
