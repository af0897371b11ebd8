#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouplab/coset_table.hpp"
#include "grouplab/hyperbolic.hpp"
#include "grouplab/omega.hpp"
#include "grouplab/p_series.hpp"
#include "grouplab/presentation.hpp"
#include "grouplab/subgroup_presentation.hpp"
#include "grouplab/wiegold.hpp"

using nlohmann::ordered_json;
using namespace grouplab;

namespace {

constexpr const char* kToolVersion = "0.1.0";

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("GROUPLAB_LOG");
    if (env == nullptr) return 1;
    const std::string v(env);
    if (v == "error") return 0;
    if (v == "debug") return 2;
    return 1;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::fprintf(stderr, "%s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::fprintf(stderr, "%s\n", msg.c_str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Builds the self-describing envelope and writes it to the chosen sink.
class Reporter {
 public:
  Reporter(std::string command, std::string json_path)
      : command_(std::move(command)),
        json_path_(std::move(json_path)),
        start_(std::chrono::steady_clock::now()) {}

  ordered_json& config() { return config_; }
  void set_seed(std::uint64_t s) { seed_ = s; }

  int emit(const ordered_json& result, int code) {
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start_)
            .count();
    ordered_json rep;
    rep["meta"]["tool"] = "grouplab";
    rep["meta"]["version"] = kToolVersion;
    rep["meta"]["command"] = command_;
    rep["meta"]["config"] = config_;
    rep["meta"]["seed"] = seed_;
    rep["meta"]["wall_ms"] = wall_ms;
    rep["result"] = result;
    const std::string text = rep.dump(2) + "\n";
    log_debug("config: " + config_.dump());
    if (json_path_ == "-") {
      std::fputs(text.c_str(), stdout);
    } else {
      std::ofstream out(json_path_);
      if (!out) {
        std::fprintf(stderr, "error: cannot write report to %s\n", json_path_.c_str());
        return 64;
      }
      out << text;
      log_info("report written to " + json_path_);
    }
    return code;
  }

 private:
  std::string command_;
  std::string json_path_;
  ordered_json config_ = ordered_json::object();
  std::uint64_t seed_ = 0;
  std::chrono::steady_clock::time_point start_;
};

const char* enum_status_name(EnumStatus s) {
  switch (s) {
    case EnumStatus::closed:
      return "closed";
    case EnumStatus::out_of_cosets:
      return "out_of_cosets";
    case EnumStatus::out_of_time:
      return "out_of_time";
  }
  return "out_of_time";
}

ordered_json json_levels(const PSeriesReport& report) {
  ordered_json levels = ordered_json::array();
  for (const PSeriesLevel& l : report.levels) {
    ordered_json jl;
    jl["i"] = l.i;
    jl["e"] = l.e;
    if (l.d.has_value()) jl["d"] = *l.d;
    jl["engine"] = l.engine;
    levels.push_back(jl);
  }
  return levels;
}

ordered_json json_pseries(const PSeriesReport& report) {
  ordered_json out;
  out["p"] = report.p;
  out["levels"] = json_levels(report);
  out["truncated"] = report.truncated;
  out["reason"] = report.reason;
  return out;
}

struct CommonArgs {
  std::string presentation;
  std::string subgroup;
  std::string json = "-";
  std::int64_t max_cosets = 100000;
  double max_seconds = 120.0;
};

int run_coset_enum(const CommonArgs& a) {
  Reporter rep("coset-enum", a.json);
  rep.config() = {{"presentation", a.presentation},
                  {"subgroup", a.subgroup},
                  {"max_cosets", a.max_cosets},
                  {"max_seconds", a.max_seconds},
                  {"json", a.json}};
  const Presentation p = parse_presentation(read_file(a.presentation));
  const std::vector<Word> gens = parse_word_list(p.alphabet(), read_file(a.subgroup));
  const EnumResult res = enumerate_cosets(p, gens, {a.max_cosets, a.max_seconds});
  ordered_json out;
  if (res.table) {
    out["index"] = res.table->n_cosets();
    out["n_defined"] = res.stats.n_defined;
    out["n_coincidences"] = res.stats.n_coincidences;
    ordered_json tr = ordered_json::array();
    for (const Word& w : schreier_transversal(*res.table))
      tr.push_back(print_word(p.alphabet(), w));
    out["transversal"] = tr;
    out["status"] = "closed";
    return rep.emit(out, 0);
  }
  out["status"] = enum_status_name(res.status);
  out["n_defined"] = res.stats.n_defined;
  out["n_coincidences"] = res.stats.n_coincidences;
  return rep.emit(out, 2);
}

int run_subgroup_presentation(const CommonArgs& a, std::int64_t budget) {
  Reporter rep("subgroup-presentation", a.json);
  rep.config() = {{"presentation", a.presentation}, {"subgroup", a.subgroup},
                  {"simplify_budget", budget},      {"max_cosets", a.max_cosets},
                  {"max_seconds", a.max_seconds},   {"json", a.json}};
  const Presentation p = parse_presentation(read_file(a.presentation));
  const std::vector<Word> gens = parse_word_list(p.alphabet(), read_file(a.subgroup));
  const EnumResult res = enumerate_cosets(p, gens, {a.max_cosets, a.max_seconds});
  if (!res.table) {
    ordered_json out;
    out["status"] = enum_status_name(res.status);
    out["n_defined"] = res.stats.n_defined;
    out["n_coincidences"] = res.stats.n_coincidences;
    return rep.emit(out, 2);
  }
  const SubgroupPresentation sp =
      tietze_simplify(subgroup_presentation(p, *res.table), budget);
  const Presentation sub = sp.presentation();
  ordered_json lengths = ordered_json::array();
  for (const Word& r : sub.relators()) lengths.push_back(r.length());
  ordered_json out;
  out["index"] = res.table->n_cosets();
  out["n_generators"] = sp.n_generators();
  out["n_relators"] = sp.n_relators();
  out["relator_lengths"] = lengths;
  out["simplified"] = sp.simplified();
  return rep.emit(out, 0);
}

int run_p_series(const CommonArgs& a, std::int64_t prime, std::int64_t depth) {
  Reporter rep("p-series", a.json);
  rep.config() = {{"presentation", a.presentation}, {"prime", prime},
                  {"depth", depth},                 {"max_cosets", a.max_cosets},
                  {"max_seconds", a.max_seconds},   {"json", a.json}};
  const Presentation p = parse_presentation(read_file(a.presentation));
  const PSeriesReport report =
      delta_orders(p, prime, depth, {a.max_cosets, a.max_seconds});
  return rep.emit(json_pseries(report), report.truncated ? 2 : 0);
}

std::vector<ScheduleEntry> parse_schedule(const Alphabet& ab, const std::string& text) {
  std::vector<ScheduleEntry> out;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string word_text;
    if (!(fields >> word_text)) continue;
    ScheduleEntry entry;
    entry.candidate = parse_word(ab, word_text);
    if (!(fields >> entry.m))
      throw InputError("schedule line " + std::to_string(lineno) +
                       ": expected `candidate_word m [s_override]`");
    std::int64_t s = 0;
    if (fields >> s) entry.s_override = s;
    std::string extra;
    if (fields >> extra)
      throw InputError("schedule line " + std::to_string(lineno) +
                       ": trailing field '" + extra + "'");
    out.push_back(entry);
  }
  return out;
}

int run_omega(const CommonArgs& a, std::int64_t prime, const std::string& bits,
              const std::string& schedule_path) {
  Reporter rep("omega-run", a.json);
  rep.config() = {{"presentation", a.presentation},
                  {"subgroup", a.subgroup},
                  {"prime", prime},
                  {"bits", bits},
                  {"schedule", schedule_path},
                  {"max_cosets", a.max_cosets},
                  {"max_seconds", a.max_seconds},
                  {"json", a.json}};
  const Presentation base = parse_presentation(read_file(a.presentation));
  const std::vector<Word> gens =
      parse_word_list(base.alphabet(), read_file(a.subgroup));
  const std::vector<ScheduleEntry> schedule =
      parse_schedule(base.alphabet(), read_file(schedule_path));
  OmegaRun run;
  try {
    run = run_omega(base, gens, prime, bits, schedule,
                    {a.max_cosets, a.max_seconds});
  } catch (const LimitError& e) {
    return rep.emit({{"error", e.what()}}, 2);
  }
  ordered_json steps = ordered_json::array();
  for (const StepAudit& audit : run.audits) {
    ordered_json js;
    js["bit"] = audit.bit;
    js["relator"] =
        print_word(base.alphabet(), audit.root.pow(audit.exponent));
    js["s"] = audit.s;
    js["v"] = audit.v;
    js["r"] = audit.r;
    js["q"] = audit.q;
    steps.push_back(js);
  }
  ordered_json out;
  out["steps"] = steps;
  out["final"] = json_pseries(run.final_report);
  return rep.emit(out, run.final_report.truncated ? 2 : 0);
}

struct TriangleArgs {
  std::string spec = "2,4,8";
  int radius = 4;
  double tol = 1e-6;
  std::string json = "-";
  std::int64_t slimness_samples = -1;
  std::uint64_t seed = 0;
  std::string quasifit;
  int max_power = 4;
  std::string aperiodic;
  int lambda_nbhd = 1;
  int t = 2;
  int period_cap = 2;
};

int run_triangle_lab(const TriangleArgs& a) {
  Reporter rep("triangle-lab", a.json);
  rep.config() = {{"spec", a.spec},
                  {"radius", a.radius},
                  {"tol", a.tol},
                  {"slimness_samples", a.slimness_samples},
                  {"seed", a.seed},
                  {"quasifit", a.quasifit},
                  {"max_power", a.max_power},
                  {"aperiodic", a.aperiodic},
                  {"Lambda", a.lambda_nbhd},
                  {"t", a.t},
                  {"period_cap", a.period_cap},
                  {"json", a.json}};
  rep.set_seed(a.seed);

  TriangleGroupSpec spec;
  {
    std::istringstream in(a.spec);
    char c1 = 0, c2 = 0;
    if (!(in >> spec.p >> c1 >> spec.q >> c2 >> spec.r) || c1 != ',' || c2 != ',' ||
        !in.eof())
      throw InputError("--spec expects three comma-separated integers, e.g. 2,4,8");
  }
  const TriangleReflections t = build_reflections(spec);
  const int order_cap = std::max({16, spec.p, spec.q, spec.r});

  const auto power_residual = [](const Isometry& g, int n) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    for (int i = 0; i < n; ++i) m = m * g.mat;
    return identity_residual(m);
  };
  ordered_json out;
  out["spec"] = {{"p", spec.p}, {"q", spec.q}, {"r", spec.r}};
  out["residuals"] = {
      {"a", form_residual(t.a.mat)},
      {"b", form_residual(t.b.mat)},
      {"c", form_residual(t.c.mat)},
      {"ab_power", power_residual(compose(t.a, t.b), spec.p)},
      {"bc_power", power_residual(compose(t.b, t.c), spec.q)},
      {"ac_power", power_residual(compose(t.a, t.c), spec.r)}};
  out["orders"] = {{"ab", element_order(compose(t.a, t.b), order_cap, a.tol)},
                   {"bc", element_order(compose(t.b, t.c), order_cap, a.tol)},
                   {"ac", element_order(compose(t.a, t.c), order_cap, a.tol)}};

  int code = 0;
  try {
    const CayleyBall ball =
        cayley_ball({{"a", t.a}, {"b", t.b}, {"c", t.c}}, a.radius, a.tol);

    ordered_json vertices = ordered_json::array();
    for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
      ordered_json jv;
      jv["id"] = v;
      jv["word"] = print_word(ball.labels, ball.vertices[v].word);
      ordered_json edges = ordered_json::array();
      for (std::size_t slot = 0; slot < ball.step[v].size(); ++slot) {
        const int to = ball.step[v][slot];
        if (to < 0) continue;
        const Letter l = make_letter(static_cast<int>(slot) / 2,
                                     slot % 2 == 0 ? 1 : -1);
        edges.push_back({print_word(ball.labels, Word({l})), to});
      }
      jv["edges"] = edges;
      vertices.push_back(jv);
    }
    out["ball"] = {{"radius", ball.radius},
                   {"dedup_tol", ball.dedup_tol},
                   {"n_vertices", ball.vertices.size()},
                   {"vertices", vertices}};

    const TorsionProfile profile = torsion_profile(ball, 16, a.tol);
    ordered_json orders = ordered_json::object();
    for (const auto& [order, count] : profile.orders)
      orders[std::to_string(order)] = count;
    out["torsion"] = {{"orders", orders},
                      {"beyond", profile.beyond},
                      {"max_order", profile.max_order}};

    if (a.slimness_samples >= 0) {
      const SlimnessEstimate est = empirical_slimness(
          ball, static_cast<int>(a.slimness_samples), a.seed);
      out["slimness"] = {{"delta", est.delta},   {"samples", est.samples},
                         {"used", est.used},     {"skipped", est.skipped},
                         {"seed", est.seed}};
    }

    if (!a.quasifit.empty()) {
      const QuasiFit fit =
          quasigeodesic_fit(ball, parse_word(ball.labels, a.quasifit), a.max_power);
      out["quasifit"] = {{"lambda", fit.lambda},
                         {"c", fit.c},
                         {"effective_power", fit.effective_power},
                         {"witness", print_word(ball.labels, fit.witness)},
                         {"witness_span", fit.witness_span},
                         {"witness_distance", fit.witness_distance}};
    }

    if (!a.aperiodic.empty()) {
      const AperiodicityResult res =
          aperiodicity_scan(ball, parse_word(ball.labels, a.aperiodic),
                            a.lambda_nbhd, a.t, a.period_cap);
      out["aperiodicity"] = {
          {"undecided", res.undecided},
          {"witness_found", res.witness_found},
          {"period", print_word(ball.labels, res.period)},
          {"start", res.start},
          {"path_length", res.path_length},
          {"Lambda", res.lambda_nbhd},
          {"t", res.t},
          {"period_cap", res.period_cap}};
      if (res.undecided) code = 2;
    }
  } catch (const AmbiguityError& e) {
    return rep.emit({{"error", e.what()}}, 2);
  }
  return rep.emit(out, code);
}

int run_wiegold_verify(std::int64_t max_cosets, double max_seconds, int radius,
                       const std::string& json_path, const std::string& mutation) {
  Reporter rep("wiegold-verify", json_path);
  rep.config() = {{"max_cosets", max_cosets},
                  {"max_seconds", max_seconds},
                  {"radius", radius},
                  {"mutation", mutation},
                  {"json", json_path}};
  PipelineOptions opts;
  opts.limits = {max_cosets, max_seconds};
  opts.ball_radius = radius;
  if (mutation == "none")
    opts.mutation = PipelineMutation::none;
  else if (mutation == "relator-power")
    opts.mutation = PipelineMutation::relator_power;
  else if (mutation == "subgroup-generator")
    opts.mutation = PipelineMutation::subgroup_generator;
  else
    throw InputError("--mutation must be one of none, relator-power, "
                     "subgroup-generator");

  const PipelineReport report = run_pipeline(opts);
  const std::string text = print_report(report);
  if (json_path == "-")
    log_info(text);
  else
    std::fputs(text.c_str(), stdout);

  ordered_json checks = ordered_json::array();
  for (const PipelineCheck& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"claim", c.claim},
                      {"computed", c.computed},
                      {"expected", c.expected},
                      {"status", check_status_name(c.status)}});
  }
  ordered_json out;
  out["verdict"] = report.verdict;
  out["checks"] = checks;
  out["narrative"] = report.narrative;
  const int code = report.verdict == "pass" ? 0 : (report.verdict == "fail" ? 1 : 2);
  return rep.emit(out, code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finitely presented group laboratory"};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);

  CommonArgs coset;
  CLI::App* sc_coset = app.add_subcommand("coset-enum", "enumerate cosets of a subgroup");
  sc_coset->add_option("--presentation", coset.presentation, "presentation file")->required();
  sc_coset->add_option("--subgroup", coset.subgroup, "subgroup generator file")->required();
  sc_coset->add_option("--max-cosets", coset.max_cosets, "coset limit");
  sc_coset->add_option("--max-seconds", coset.max_seconds, "time limit");
  sc_coset->add_option("--json", coset.json, "report path, - for stdout");

  CommonArgs sub;
  std::int64_t budget = 100000;
  CLI::App* sc_sub =
      app.add_subcommand("subgroup-presentation", "present a finite-index subgroup");
  sc_sub->add_option("--presentation", sub.presentation, "presentation file")->required();
  sc_sub->add_option("--subgroup", sub.subgroup, "subgroup generator file")->required();
  sc_sub->add_option("--simplify-budget", budget, "rewriting budget");
  sc_sub->add_option("--max-cosets", sub.max_cosets, "coset limit");
  sc_sub->add_option("--max-seconds", sub.max_seconds, "time limit");
  sc_sub->add_option("--json", sub.json, "report path, - for stdout");

  CommonArgs ps;
  std::int64_t prime = 2;
  std::int64_t depth = 1;
  CLI::App* sc_ps = app.add_subcommand("p-series", "iterated mod-p layer orders");
  sc_ps->add_option("--presentation", ps.presentation, "presentation file")->required();
  sc_ps->add_option("--prime", prime, "prime p")->required();
  sc_ps->add_option("--depth", depth, "levels to compute")->required();
  sc_ps->add_option("--max-cosets", ps.max_cosets, "coset limit");
  sc_ps->add_option("--max-seconds", ps.max_seconds, "time limit");
  sc_ps->add_option("--json", ps.json, "report path, - for stdout");

  CommonArgs om;
  std::int64_t om_prime = 2;
  std::string bits;
  std::string schedule_path;
  CLI::App* sc_om = app.add_subcommand("omega-run", "binary branching construction");
  sc_om->add_option("--presentation", om.presentation, "presentation file")->required();
  sc_om->add_option("--subgroup", om.subgroup, "subgroup generator file")->required();
  sc_om->add_option("--prime", om_prime, "prime p")->required();
  sc_om->add_option("--bits", bits, "branch word over {0,1}")->required();
  sc_om->add_option("--schedule", schedule_path, "schedule file")->required();
  sc_om->add_option("--max-cosets", om.max_cosets, "coset limit");
  sc_om->add_option("--max-seconds", om.max_seconds, "time limit");
  sc_om->add_option("--json", om.json, "report path, - for stdout");

  TriangleArgs tri;
  CLI::App* sc_tri = app.add_subcommand("triangle-lab", "hyperbolic reflection model");
  sc_tri->add_option("--spec", tri.spec, "p,q,r");
  sc_tri->add_option("--radius", tri.radius, "ball radius")->required();
  sc_tri->add_option("--tol", tri.tol, "identity and dedup tolerance");
  sc_tri->add_option("--slimness-samples", tri.slimness_samples, "triangle samples");
  sc_tri->add_option("--seed", tri.seed, "sampler seed");
  sc_tri->add_option("--quasifit", tri.quasifit, "word to fit");
  sc_tri->add_option("--max-power", tri.max_power, "largest power for the fit");
  sc_tri->add_option("--aperiodic", tri.aperiodic, "word to scan");
  sc_tri->add_option("--Lambda", tri.lambda_nbhd, "neighbourhood width");
  sc_tri->add_option("--t", tri.t, "period multiplier");
  sc_tri->add_option("--period-cap", tri.period_cap, "longest period scanned");
  sc_tri->add_option("--json", tri.json, "report path, - for stdout");

  std::int64_t wg_max_cosets = 100000;
  double wg_max_seconds = 120.0;
  int wg_radius = 8;
  std::string wg_json = "-";
  std::string wg_mutation = "none";
  CLI::App* sc_wg = app.add_subcommand("wiegold-verify", "run the verification chain");
  sc_wg->add_option("--max-cosets", wg_max_cosets, "coset limit");
  sc_wg->add_option("--max-seconds", wg_max_seconds, "time limit");
  sc_wg->add_option("--radius", wg_radius, "cross-check ball radius");
  sc_wg->add_option("--json", wg_json, "report path, - for stdout");
  sc_wg->add_option("--mutation", wg_mutation, "negative control to apply");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (*sc_coset) return run_coset_enum(coset);
    if (*sc_sub) return run_subgroup_presentation(sub, budget);
    if (*sc_ps) return run_p_series(ps, prime, depth);
    if (*sc_om) return run_omega(om, om_prime, bits, schedule_path);
    if (*sc_tri) return run_triangle_lab(tri);
    if (*sc_wg)
      return run_wiegold_verify(wg_max_cosets, wg_max_seconds, wg_radius, wg_json,
                                wg_mutation);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 64;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 70;
  }
  return 64;
}
