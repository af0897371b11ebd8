#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "grouplab/hyperbolic.hpp"
#include "grouplab/presentation.hpp"

using namespace grouplab;

namespace {

TriangleReflections t248() { return build_reflections({2, 4, 8}); }

std::vector<std::pair<std::string, Isometry>> reflection_gens() {
  const auto t = t248();
  return {{"a", t.a}, {"b", t.b}, {"c", t.c}};
}

std::vector<std::pair<std::string, Isometry>> rotation_gens() {
  const auto t = t248();
  return {{"x", compose(t.a, t.b)}, {"y", compose(t.b, t.c)}};
}

std::vector<std::pair<std::string, Isometry>> translation_gens(double length = 3.0) {
  const auto [s, t] = free_translation_pair(length);
  return {{"s", s}, {"t", t}};
}

Word wd(const CayleyBall& ball, const std::string& text) {
  return parse_word(ball.labels, text);
}

}  // namespace

TEST_CASE("reflections satisfy the triangle relations") {
  const auto t = t248();
  for (const Isometry* g : {&t.a, &t.b, &t.c}) {
    CHECK(form_residual(g->mat) <= 1e-9);
    CHECK(g->det() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(element_order(*g) == 2);
  }
  const Isometry ab = compose(t.a, t.b);
  const Isometry bc = compose(t.b, t.c);
  const Isometry ac = compose(t.a, t.c);
  CHECK(identity_residual(ab.mat * ab.mat) <= 1e-9);
  CHECK(element_order(ab) == 2);
  CHECK(element_order(bc) == 4);
  CHECK(element_order(ac) == 8);
  CHECK(ab.orientation_preserving());
  CHECK(identity_residual(compose(t.a, t.a).mat) <= 1e-12);
}

TEST_CASE("spec validation rejects flat and spherical triangles") {
  CHECK_THROWS_AS(build_reflections({2, 3, 6}), InputError);
  CHECK_THROWS_AS(build_reflections({3, 3, 3}), InputError);
  CHECK_THROWS_AS(build_reflections({2, 3, 5}), InputError);
  CHECK_THROWS_AS(build_reflections({1, 7, 7}), InputError);
  CHECK_THROWS_AS(build_reflections({2, 4, 0}), InputError);
  CHECK_NOTHROW(build_reflections({2, 3, 7}));
  CHECK_NOTHROW(build_reflections({7, 7, 7}));
}

TEST_CASE("reflection normals must be spacelike") {
  CHECK_THROWS_AS(reflection(Eigen::Vector3d(0, 0, 1)), InputError);
  const Isometry r1 = reflection(Eigen::Vector3d(1, 0, 0));
  const Isometry r2 = reflection(Eigen::Vector3d(2, 0, 0));
  CHECK((r1.mat - r2.mat).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(element_order(r1) == 2);
}

TEST_CASE("inverse via the form") {
  const auto t = t248();
  const Isometry g = compose(compose(t.a, t.b), t.c);
  CHECK(identity_residual(compose(g, inverse(g)).mat) <= 1e-12);
  CHECK(identity_residual(compose(inverse(g), g).mat) <= 1e-12);
}

TEST_CASE("composition error model bounds the observed residual") {
  const auto t = t248();
  Isometry g = t.a;
  double prev_tol = g.tol;
  for (int i = 0; i < 12; ++i) {
    g = compose(g, i % 3 == 0 ? t.b : (i % 3 == 1 ? t.c : t.a));
    CHECK(g.tol >= prev_tol);
    CHECK(form_residual(g.mat) <= std::max(g.tol, 1e-12));
    prev_tol = g.tol;
  }
  CHECK(g.tol <= 1e-6);
  CHECK(is_isometry(g));
}

TEST_CASE("radius zero and argument validation") {
  const auto ball = cayley_ball(reflection_gens(), 0);
  REQUIRE(ball.vertices.size() == 1);
  CHECK(ball.edges.empty());
  CHECK(ball.vertices[0].word.empty());
  CHECK(identity_residual(ball.vertices[0].mat) == 0.0);

  CHECK_THROWS_AS(cayley_ball(reflection_gens(), -1), InputError);
  CHECK_THROWS_AS(cayley_ball(reflection_gens(), 2, 0.0), InputError);
  CHECK_THROWS_AS(cayley_ball({}, 2), InputError);
  auto broken = reflection_gens();
  broken[0].second.mat(0, 0) += 0.5;
  CHECK_THROWS_AS(cayley_ball(broken, 2), InputError);
}

TEST_CASE("radius-2 ball matches the brute-force oracle") {
  const auto gens = reflection_gens();
  const auto ball = cayley_ball(gens, 2);

  std::vector<Eigen::Matrix3d> seen{Eigen::Matrix3d::Identity()};
  auto visit = [&](const Eigen::Matrix3d& m) {
    for (const auto& s : seen)
      if ((s - m).cwiseAbs().maxCoeff() <= 1e-6) return;
    seen.push_back(m);
  };
  for (const auto& [n1, g1] : gens) {
    visit(g1.mat);
    for (const auto& [n2, g2] : gens) visit(g1.mat * g2.mat);
  }
  CHECK(seen.size() == 9);
  CHECK(ball.vertices.size() == seen.size());
  for (const auto& m : seen) CHECK(ball_find(ball, m) >= 0);
}

TEST_CASE("interior vertices have full degree and inverse edges") {
  const auto ball = cayley_ball(reflection_gens(), 4);
  const int slots = 2 * ball.labels.size();
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    const bool interior = static_cast<int>(ball.vertices[v].word.length()) < ball.radius;
    for (int s = 0; s < slots; ++s) {
      const int to = ball.step[v][static_cast<std::size_t>(s)];
      if (interior) CHECK(to >= 0);
    }
  }
  for (const BallEdge& e : ball.edges) {
    if (static_cast<int>(ball.vertices[static_cast<std::size_t>(e.to)].word.length()) <
        ball.radius)
      CHECK(ball_step(ball, e.to, inverse_letter(e.letter)) == e.from);
  }
}

TEST_CASE("determinant parity follows word length") {
  const auto ball = cayley_ball(reflection_gens(), 4);
  for (const BallVertex& v : ball.vertices) {
    const double expect = v.word.length() % 2 == 0 ? 1.0 : -1.0;
    CHECK(v.mat.determinant() == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("canonical words are geodesic") {
  const auto ball = cayley_ball(rotation_gens(), 5);
  const auto dist = ball_distances(ball, {0});
  for (std::size_t v = 0; v < ball.vertices.size(); ++v)
    CHECK(dist[v] == static_cast<int>(ball.vertices[v].word.length()));
}

TEST_CASE("orientation ball stays orientation preserving") {
  const auto ball = cayley_ball(rotation_gens(), 4);
  for (const BallVertex& v : ball.vertices)
    CHECK(v.mat.determinant() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("vertex lookup and tracing") {
  const auto t = t248();
  const auto ball = cayley_ball(reflection_gens(), 3);
  CHECK(ball_find(ball, Eigen::Matrix3d::Identity()) == 0);
  CHECK(print_word(ball.labels, ball.vertices[1].word) == "a");
  CHECK(ball_find(ball, t.a.mat) == 1);
  CHECK(ball_trace(ball, wd(ball, "a*b")) ==
        ball_find(ball, (compose(t.a, t.b)).mat));
  CHECK(ball_trace(ball, wd(ball, "a*a")) == 0);
  CHECK(ball_trace(ball, wd(ball, "(a*c)^4")) == -1);
  CHECK_THROWS_AS(ball_step(ball, -5, 1), InputError);
  CHECK_THROWS_AS(ball_trace(ball, Word({make_letter(7, 1)})), InputError);
}

TEST_CASE("torsion orders in the radius-8 ball divide 8") {
  const auto ball = cayley_ball(reflection_gens(), 8);
  const TorsionProfile profile = torsion_profile(ball, 16);
  REQUIRE(!profile.orders.empty());
  CHECK(profile.orders.at(1) == 1);
  CHECK(profile.orders.at(2) == 11);
  CHECK(profile.orders.at(4) == 16);
  CHECK(profile.orders.at(8) == 16);
  CHECK(profile.beyond == 52);
  for (const auto& [order, count] : profile.orders) {
    CHECK(8 % order == 0);
    CHECK(count > 0);
  }
}

TEST_CASE("error model holds across a radius-6 ball") {
  const auto ball = cayley_ball(reflection_gens(), 6);
  for (const BallVertex& v : ball.vertices) {
    CHECK(form_residual(v.mat) <= std::max(v.tol, 1e-12));
    CHECK(v.tol <= 1e-9);
  }
}

TEST_CASE("translation pair acts freely") {
  const auto ball = cayley_ball(translation_gens(), 4);
  CHECK(ball.vertices.size() == 161);
  const TorsionProfile profile = torsion_profile(ball, 16);
  CHECK(profile.orders.size() == 1);
  CHECK(profile.orders.at(1) == 1);
  CHECK(profile.beyond == 160);
}

TEST_CASE("nearby distinct generators abort with a diagnostic") {
  const auto near = free_translation_pair(3.0 + 1.5e-7).first;
  const auto base = free_translation_pair(3.0).first;
  CHECK_THROWS_AS(cayley_ball({{"s", base}, {"t", near}}, 1), AmbiguityError);
}

TEST_CASE("geodesics and multi-source distances") {
  const auto ball = cayley_ball(rotation_gens(), 3);
  CHECK(ball_geodesic(ball, 0, 0) == std::vector<int>{0});
  const int vxy = ball_trace(ball, wd(ball, "x*y"));
  REQUIRE(vxy >= 0);
  const auto path = ball_geodesic(ball, 0, vxy);
  CHECK(path.size() == 3);
  CHECK(path.front() == 0);
  CHECK(path.back() == vxy);
  const auto dist = ball_distances(ball, {0, vxy});
  CHECK(dist[static_cast<std::size_t>(path[1])] == 1);
  CHECK_THROWS_AS(ball_geodesic(ball, 0, 99999), InputError);
  CHECK_THROWS_AS(ball_distances(ball, {-1}), InputError);
}

TEST_CASE("slimness sampling is deterministic and skips boundary triples") {
  const auto ball = cayley_ball(rotation_gens(), 5);
  const SlimnessEstimate one = empirical_slimness(ball, 60, 11);
  const SlimnessEstimate two = empirical_slimness(ball, 60, 11);
  CHECK(one.delta == two.delta);
  CHECK(one.used == two.used);
  CHECK(one.skipped == two.skipped);
  CHECK(one.used + one.skipped == 60);
  CHECK(one.delta == 1.0);
  CHECK(one.used == 9);
  CHECK(one.seed == 11);
  CHECK_THROWS_AS(empirical_slimness(ball, -1, 0), InputError);
  const SlimnessEstimate none = empirical_slimness(ball, 0, 5);
  CHECK(none.delta == 0.0);
  CHECK(none.used == 0);
}

TEST_CASE("slimness estimate grows with the ball") {
  const auto small = cayley_ball(rotation_gens(), 4);
  const auto big = cayley_ball(rotation_gens(), 6);
  const SlimnessEstimate a = empirical_slimness(small, 80, 7);
  const SlimnessEstimate b = empirical_slimness(big, 80, 7);
  CHECK(a.delta <= b.delta);
  CHECK(a.delta == 1.0);
  CHECK(b.delta == 1.0);
  CHECK(a.used == 14);
  CHECK(b.used == 21);
}

TEST_CASE("quasigeodesic fit is exact on the free ball") {
  const auto ball = cayley_ball(translation_gens(), 5);
  const QuasiFit fit = quasigeodesic_fit(ball, wd(ball, "s"), 3);
  CHECK(fit.lambda == 1.0);
  CHECK(fit.c == 0.0);
  CHECK(fit.effective_power == 3);
  CHECK(fit.witness_span == fit.witness_distance);

  const QuasiFit capped = quasigeodesic_fit(ball, wd(ball, "s"), 10);
  CHECK(capped.effective_power == 5);
  CHECK(capped.c == 0.0);

  const QuasiFit mixed = quasigeodesic_fit(ball, wd(ball, "s*t^-1"), 2);
  CHECK(mixed.lambda == 1.0);
  CHECK(mixed.c == 0.0);
  CHECK(mixed.effective_power == 2);
}

TEST_CASE("quasigeodesic fit reports the torsion wrap") {
  const auto ball = cayley_ball(rotation_gens(), 4);
  for (int m = 1; m <= 4; ++m) {
    const QuasiFit fit = quasigeodesic_fit(ball, wd(ball, "y"), m);
    CHECK(fit.lambda == 1.0);
    CHECK(fit.effective_power == m);
    const double expect = m == 1 ? 0.0 : (m == 2 ? 0.0 : (m == 3 ? 2.0 : 4.0));
    CHECK(fit.c == expect);
  }
  const QuasiFit wrap = quasigeodesic_fit(ball, wd(ball, "y"), 4);
  CHECK(wrap.witness_span == 4);
  CHECK(wrap.witness_distance == 0);
  CHECK(wrap.witness == wd(ball, "y^4"));
}

TEST_CASE("quasigeodesic fit validations") {
  const auto ball = cayley_ball(rotation_gens(), 4);
  CHECK_THROWS_AS(quasigeodesic_fit(ball, Word{}, 2), InputError);
  CHECK_THROWS_AS(quasigeodesic_fit(ball, wd(ball, "x*y*x^-1"), 2), InputError);
  CHECK_THROWS_AS(quasigeodesic_fit(ball, wd(ball, "x^2"), 2), InputError);
  CHECK_THROWS_AS(quasigeodesic_fit(ball, wd(ball, "x"), 0), InputError);
  const auto tiny = cayley_ball(translation_gens(), 2);
  CHECK_THROWS_AS(quasigeodesic_fit(tiny, parse_word(tiny.labels, "s*s*s"), 1),
                  InputError);
}

TEST_CASE("aperiodicity scan certifies a periodic power") {
  const auto ball = cayley_ball(rotation_gens(), 8);
  const AperiodicityResult res =
      aperiodicity_scan(ball, wd(ball, "(x*y)^4"), 4, 2, 2);
  CHECK(!res.undecided);
  REQUIRE(res.witness_found);
  CHECK(!res.period.empty());
  CHECK(res.path_length >= res.t * static_cast<int>(res.period.length()));
  CHECK(res.start >= 0);
}

TEST_CASE("aperiodicity scan clears a single generator at zero width") {
  const auto ball = cayley_ball(rotation_gens(), 3);
  for (int cap : {1, 2}) {
    const AperiodicityResult res = aperiodicity_scan(ball, wd(ball, "x"), 0, 2, cap);
    CHECK(!res.undecided);
    CHECK(!res.witness_found);
    CHECK(res.period_cap == cap);
  }
}

TEST_CASE("aperiodicity scan caps and validation") {
  const auto ball = cayley_ball(rotation_gens(), 3);
  CHECK(aperiodicity_scan(ball, wd(ball, "x"), 1, 0, 2).undecided);
  CHECK(aperiodicity_scan(ball, wd(ball, "x"), 1, 2, 0).undecided);
  CHECK_THROWS_AS(aperiodicity_scan(ball, wd(ball, "x"), -1, 2, 2), InputError);
  CHECK_THROWS_AS(aperiodicity_scan(ball, wd(ball, "(x*y)^4"), 1, 2, 2), InputError);
}

TEST_CASE("aperiodicity scan is deterministic") {
  const auto ball = cayley_ball(rotation_gens(), 6);
  const Word g = wd(ball, "x*y*x*y^3");
  const AperiodicityResult one = aperiodicity_scan(ball, g, 2, 3, 2);
  const AperiodicityResult two = aperiodicity_scan(ball, g, 2, 3, 2);
  CHECK(one.witness_found == two.witness_found);
  CHECK(one.period == two.period);
  CHECK(one.start == two.start);
  CHECK(one.path_length == two.path_length);
  CHECK(one.witness_found);
  CHECK(one.period == wd(ball, "y"));
  CHECK(one.start == 0);
  CHECK(one.path_length == 3);
}
