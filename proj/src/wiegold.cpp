#include "grouplab/wiegold.hpp"

#include <optional>
#include <sstream>

#include "grouplab/free_product.hpp"
#include "grouplab/hyperbolic.hpp"
#include "grouplab/p_series.hpp"
#include "grouplab/presentation.hpp"
#include "grouplab/subgroup_presentation.hpp"

namespace grouplab {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

constexpr const char* kSkipped = "skipped: an earlier step hit its limits";

}  // namespace

std::string check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

PipelineReport run_pipeline(const PipelineOptions& opts) {
  if (opts.ball_radius < 2)
    throw InputError("run_pipeline: ball radius must be at least 2");

  PipelineReport rep;
  auto add = [&rep](const std::string& id, const std::string& claim,
                    const std::string& computed, const std::string& expected,
                    CheckStatus status) {
    rep.checks.push_back(PipelineCheck{id, claim, computed, expected, status});
  };

  const Presentation pres_a = parse_presentation("gens: x,y\nrels: x^2, y^4");
  const Alphabet& ab = pres_a.alphabet();
  const std::string g_rel =
      opts.mutation == PipelineMutation::relator_power ? "(x*y)^7" : "(x*y)^8";
  const Presentation pres_g =
      parse_presentation("gens: x,y\nrels: x^2, y^4, " + g_rel);

  const Word x = parse_word(ab, "x");
  const Word y = parse_word(ab, "y");
  const Word xy = parse_word(ab, "x*y");
  const Word xy4 = xy.pow(4);
  const Word xy8 = xy.pow(8);

  {
    FreeProductOfCyclics fp({2, 4});
    const Word rhs = commutator(x, y) * commutator(x, y.pow(2)).inverse() *
                     commutator(x, y.pow(3));
    const SyllableWord left = fp.normal_form(xy4);
    const SyllableWord right = fp.normal_form(rhs);
    add("step-1",
        "(x*y)^4 equals [x,y] * [x,y^2]^-1 * [x,y^3] in the free product "
        "Z2 * Z4",
        fp.print(ab, left), fp.print(ab, right),
        left == right ? CheckStatus::pass : CheckStatus::fail);
  }

  std::vector<std::string> b_texts{"x*y*x^-1*y^-1", "x*y^2*x^-1*y^-2",
                                   "x*y^3*x^-1*y^-3"};
  if (opts.mutation == PipelineMutation::subgroup_generator) b_texts[2] = "y^2";
  std::vector<Word> b_gens;
  for (const auto& t : b_texts) b_gens.push_back(parse_word(ab, t));

  bool kills = true;
  std::vector<std::string> images;
  for (const Word& w : b_gens) {
    const auto sums = exponent_sums(ab, w);
    const std::int64_t ix = ((sums[0] % 2) + 2) % 2;
    const std::int64_t iy = ((sums[1] % 4) + 4) % 4;
    if (ix != 0 || iy != 0) kills = false;
    images.push_back("(" + std::to_string(ix) + "," + std::to_string(iy) + ")");
  }

  const EnumResult enum_b = enumerate_cosets(pres_a, b_gens, opts.limits);
  const std::optional<CosetTable>& t_b = enum_b.table;
  const std::string claim2 =
      "the three chosen generators vanish in Z2 x Z4 and span a subgroup of "
      "index 8";
  if (!t_b) {
    add("step-2", claim2, "enumeration hit limits before closing",
        "index 8; images (0,0), (0,0), (0,0)", CheckStatus::inconclusive);
  } else {
    const std::int64_t idx = t_b->n_cosets();
    add("step-2", claim2,
        "index " + std::to_string(idx) + "; images " + join(images),
        "index 8; images (0,0), (0,0), (0,0)",
        idx == 8 && kills ? CheckStatus::pass : CheckStatus::fail);
  }

  std::optional<SubgroupPresentation> tz_b;
  const std::string claim3 = "that kernel is a free group of rank 3";
  if (!t_b) {
    add("step-3", claim3, kSkipped, "3 generators, 0 relators",
        CheckStatus::inconclusive);
  } else {
    tz_b = tietze_simplify(subgroup_presentation(pres_a, *t_b));
    add("step-3", claim3,
        std::to_string(tz_b->n_generators()) + " generators, " +
            std::to_string(tz_b->n_relators()) + " relators",
        "3 generators, 0 relators",
        tz_b->n_generators() == 3 && tz_b->n_relators() == 0
            ? CheckStatus::pass
            : CheckStatus::fail);
  }

  std::optional<CosetTable> t_c;
  std::optional<Presentation> pres_b;
  const std::string claim4 =
      "the mod-2 layer subgroup of the kernel has index 8 in it";
  if (!tz_b) {
    add("step-4", claim4, kSkipped, "index 8", CheckStatus::inconclusive);
  } else {
    pres_b = tz_b->presentation();
    const LayerMap lm = layer_map(*pres_b, 2);
    try {
      t_c = table_from_homomorphism(*pres_b, 2, lm.d, lm.images, opts.limits);
      add("step-4", claim4, "index " + std::to_string(t_c->n_cosets()),
          "index 8",
          t_c->n_cosets() == 8 ? CheckStatus::pass : CheckStatus::fail);
    } catch (const InputError&) {
      add("step-4", claim4, "table larger than max_cosets", "index 8",
          CheckStatus::inconclusive);
    }
  }

  const std::string claim5 =
      "(x*y)^4 lies in the kernel but outside the layer subgroup, and "
      "(x*y)^8 lies inside it";
  if (!tz_b) {
    add("step-5", claim5, kSkipped, "mod-2 vectors (1,1,1) and (0,0,0)",
        CheckStatus::inconclusive);
  } else {
    std::string computed;
    CheckStatus status = CheckStatus::fail;
    try {
      const Word r4 = tz_b->rewrite(xy4);
      const Word r8 = tz_b->rewrite(xy8);
      const Alphabet& ab_b = pres_b->alphabet();
      auto mod2 = [&ab_b](const Word& w) {
        std::vector<std::int64_t> v = exponent_sums(ab_b, w);
        std::string out = "(";
        bool zero = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
          const std::int64_t bit = ((v[i] % 2) + 2) % 2;
          if (bit != 0) zero = false;
          out += (i ? "," : "") + std::to_string(bit);
        }
        return std::pair(out + ")", zero);
      };
      const auto [v4, zero4] = mod2(r4);
      const auto [v8, zero8] = mod2(r8);
      computed = "mod-2 vectors " + v4 + " and " + v8;
      status = (!zero4 && zero8) ? CheckStatus::pass : CheckStatus::fail;
    } catch (const InputError&) {
      computed = "a power of x*y failed to rewrite over the kernel generators";
      status = CheckStatus::fail;
    }
    add("step-5", claim5, computed, "mod-2 vectors (1,1,1) and (0,0,0)",
        status);
  }

  std::optional<CosetTable> t_ca;
  std::optional<SubgroupPresentation> tz_ca;
  const std::string claim6 =
      "the layer subgroup is free of rank (3-1)*8+1 = 17 and has index 64 "
      "in the ambient group";
  if (!t_b || !tz_b || !t_c) {
    add("step-6", claim6, kSkipped, "index 64; 17 generators, 0 relators",
        CheckStatus::inconclusive);
  } else {
    t_ca = compose_tables(*t_b, *tz_b, *t_c);
    tz_ca = tietze_simplify(subgroup_presentation(pres_a, *t_ca));
    const std::int64_t idx = t_ca->n_cosets();
    add("step-6", claim6,
        "index " + std::to_string(idx) + "; " +
            std::to_string(tz_ca->n_generators()) + " generators, " +
            std::to_string(tz_ca->n_relators()) + " relators",
        "index 64; 17 generators, 0 relators",
        idx == 64 && tz_ca->n_generators() == 17 && tz_ca->n_relators() == 0
            ? CheckStatus::pass
            : CheckStatus::fail);
  }

  std::vector<Word> c_gens;
  if (tz_ca)
    for (int i = 0; i < tz_ca->n_generators(); ++i)
      c_gens.push_back(tz_ca->generator_ambient(i));

  std::optional<CosetTable> t_xyc;
  const std::string claim7 =
      "adjoining x*y to the layer subgroup leaves a subgroup of index 8";
  if (!tz_ca) {
    add("step-7", claim7, kSkipped, "index 8", CheckStatus::inconclusive);
  } else {
    std::vector<Word> xyc_gens{xy};
    xyc_gens.insert(xyc_gens.end(), c_gens.begin(), c_gens.end());
    const EnumResult enum_xyc = enumerate_cosets(pres_a, xyc_gens, opts.limits);
    if (!enum_xyc.table) {
      add("step-7", claim7, "enumeration hit limits before closing", "index 8",
          CheckStatus::inconclusive);
    } else {
      t_xyc = enum_xyc.table;
      add("step-7", claim7, "index " + std::to_string(t_xyc->n_cosets()),
          "index 8",
          t_xyc->n_cosets() == 8 ? CheckStatus::pass : CheckStatus::fail);
    }
  }

  const std::string claim8 =
      "killing the transversal conjugates of (x*y)^8 presents the quotient "
      "with 17 generators and at most 8 relators";
  if (!tz_ca || !t_xyc) {
    add("step-8", claim8, kSkipped, "17 generators, at most 8 relators",
        CheckStatus::inconclusive);
  } else {
    std::string computed;
    CheckStatus status = CheckStatus::fail;
    try {
      const std::vector<Word> transversal = schreier_transversal(*t_xyc);
      std::vector<Word> rels;
      for (const Word& u : transversal) {
        const Word r = tz_ca->rewrite(u * xy8 * u.inverse());
        const Word cyc = cyclically_reduce(r);
        if (cyc.empty()) continue;
        bool dup = false;
        for (const Word& have : rels) dup = dup || have == cyc;
        if (!dup) rels.push_back(cyc);
      }
      const Presentation quotient(tz_ca->presentation().alphabet(), rels);
      computed = std::to_string(quotient.n_generators()) + " generators, " +
                 std::to_string(quotient.relators().size()) + " relators from " +
                 std::to_string(transversal.size()) + " conjugates";
      status = quotient.n_generators() == 17 && rels.size() <= 8
                   ? CheckStatus::pass
                   : CheckStatus::fail;
    } catch (const InputError&) {
      computed = "a transversal conjugate failed to rewrite";
      status = CheckStatus::fail;
    }
    add("step-8", claim8, computed, "17 generators, at most 8 relators",
        status);
  }

  const std::string claim9 =
      "the image of the rank-17 subgroup keeps index 64 after imposing " +
      g_rel;
  if (!tz_ca) {
    add("step-9", claim9, kSkipped, "index 64", CheckStatus::inconclusive);
  } else {
    const EnumResult enum_cg = enumerate_cosets(pres_g, c_gens, opts.limits);
    if (!enum_cg.table) {
      add("step-9", claim9, "enumeration hit limits before closing",
          "index 64", CheckStatus::inconclusive);
    } else {
      add("step-9", claim9,
          "index " + std::to_string(enum_cg.table->n_cosets()), "index 64",
          enum_cg.table->n_cosets() == 64 ? CheckStatus::pass
                                          : CheckStatus::fail);
    }
  }

  {
    const TriangleReflections t = build_reflections({2, 4, 8});
    const int oab = element_order(compose(t.a, t.b));
    const int obc = element_order(compose(t.b, t.c));
    const int oac = element_order(compose(t.a, t.c));
    const CayleyBall ball = cayley_ball(
        {{"x", compose(t.a, t.b)}, {"y", compose(t.b, t.c)}}, opts.ball_radius);
    const TorsionProfile profile = torsion_profile(ball, 16);
    bool divides = true;
    std::vector<std::string> seen;
    for (const auto& [order, count] : profile.orders) {
      if (order == 0 || 8 % order != 0) divides = false;
      seen.push_back(std::to_string(order));
    }
    add("step-10",
        "the reflection model realizes orders 2, 4, 8 and every finite "
        "order in a radius-" +
            std::to_string(opts.ball_radius) + " ball divides 8",
        "orders " + std::to_string(oab) + ", " + std::to_string(obc) + ", " +
            std::to_string(oac) + "; ball orders {" + join(seen) + "}",
        "orders 2, 4, 8; ball orders dividing 8",
        oab == 2 && obc == 4 && oac == 8 && divides ? CheckStatus::pass
                                                    : CheckStatus::fail);
  }

  {
    const std::string claim =
        "index multiplicativity: |A:B| * |B:C| = |A:C| across the chain";
    if (!t_b || !t_c || !t_ca) {
      add("cross-check", claim, kSkipped, "8 * 8 = 64",
          CheckStatus::inconclusive);
    } else {
      const std::int64_t ib = t_b->n_cosets();
      const std::int64_t ic = t_c->n_cosets();
      const std::int64_t ica = t_ca->n_cosets();
      add("cross-check", claim,
          std::to_string(ib) + " * " + std::to_string(ic) + " = " +
              std::to_string(ib * ic) + ", composed table has " +
              std::to_string(ica),
          "equal products",
          ib * ic == ica ? CheckStatus::pass : CheckStatus::fail);
    }
  }

  rep.narrative = {
      "Cited without computation: the 17-generator quotient has a normal "
      "subgroup of every sufficiently large finite index.",
      "Cited without computation: intersecting the finitely many conjugates "
      "of such a subgroup gives a normal subgroup of the order-(2,4,8) group "
      "of the controlled index."};

  bool any_fail = false;
  bool any_open = false;
  for (const PipelineCheck& c : rep.checks) {
    any_fail = any_fail || c.status == CheckStatus::fail;
    any_open = any_open || c.status == CheckStatus::inconclusive;
  }
  rep.verdict = any_fail ? "fail" : (any_open ? "incomplete" : "pass");
  return rep;
}

std::string print_report(const PipelineReport& rep) {
  std::ostringstream out;
  for (const PipelineCheck& c : rep.checks) {
    out << "[" << c.id << "] " << check_status_name(c.status) << ": " << c.claim
        << "\n";
    out << "    computed: " << c.computed << "\n";
    out << "    expected: " << c.expected << "\n";
  }
  for (const std::string& line : rep.narrative) out << line << "\n";
  out << "verdict: " << rep.verdict << "\n";
  return out.str();
}

}  // namespace grouplab
