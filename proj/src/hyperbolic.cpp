#include "grouplab/hyperbolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <tuple>

namespace grouplab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_norm(const Eigen::Matrix3d& m) { return m.cwiseAbs().maxCoeff(); }

double inf_norm(const Eigen::Matrix3d& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

int word_depth(const BallVertex& v) { return static_cast<int>(v.word.length()); }

int letter_slot(Letter l) { return 2 * gen_of(l) + (l < 0 ? 1 : 0); }

Letter slot_letter(int slot) {
  return make_letter(slot / 2, slot % 2 == 0 ? 1 : -1);
}

}  // namespace

Eigen::Matrix3d minkowski_form() {
  Eigen::Matrix3d j = Eigen::Matrix3d::Identity();
  j(2, 2) = -1.0;
  return j;
}

double form_residual(const Eigen::Matrix3d& m) {
  const Eigen::Matrix3d j = minkowski_form();
  return max_norm(m.transpose() * j * m - j);
}

bool is_isometry(const Isometry& g, double slack) {
  return form_residual(g.mat) <= std::max(g.tol, slack);
}

Isometry compose(const Isometry& a, const Isometry& b) {
  Isometry out;
  out.mat = a.mat * b.mat;
  const double na = inf_norm(a.mat);
  const double nb = inf_norm(b.mat);
  out.tol = na * b.tol + nb * a.tol + 10.0 * kEps * na * nb;
  return out;
}

Isometry inverse(const Isometry& g) {
  const Eigen::Matrix3d j = minkowski_form();
  Isometry out;
  out.mat = j * g.mat.transpose() * j;
  out.tol = g.tol + 10.0 * kEps * inf_norm(g.mat);
  return out;
}

double identity_residual(const Eigen::Matrix3d& m) {
  return max_norm(m - Eigen::Matrix3d::Identity());
}

int element_order(const Isometry& g, int max_order, double tol) {
  if (max_order < 1) throw InputError("element_order: max_order must be positive");
  Eigen::Matrix3d p = Eigen::Matrix3d::Identity();
  for (int k = 1; k <= max_order; ++k) {
    p = p * g.mat;
    if (identity_residual(p) <= tol) return k;
  }
  return 0;
}

Isometry reflection(const Eigen::Vector3d& normal) {
  const Eigen::Matrix3d j = minkowski_form();
  const double norm2 = normal.dot(j * normal);
  if (norm2 <= 0.0) throw InputError("reflection: normal must be spacelike");
  const Eigen::Vector3d n = normal / std::sqrt(norm2);
  Isometry out;
  out.mat = Eigen::Matrix3d::Identity() - 2.0 * n * (n.transpose() * j);
  out.tol = std::max(form_residual(out.mat), 100.0 * kEps);
  return out;
}

TriangleReflections build_reflections(const TriangleGroupSpec& spec) {
  const std::int64_t p = spec.p, q = spec.q, r = spec.r;
  if (p < 2 || q < 2 || r < 2)
    throw InputError("build_reflections: entries must be integers >= 2");
  if (q * r + p * r + p * q >= p * q * r)
    throw InputError("build_reflections: 1/p + 1/q + 1/r must be below 1");

  const double pi = std::acos(-1.0);
  const double cp = std::cos(pi / static_cast<double>(p));
  const double sp = std::sin(pi / static_cast<double>(p));
  const double cq = std::cos(pi / static_cast<double>(q));
  const double cr = std::cos(pi / static_cast<double>(r));

  const Eigen::Vector3d n1(1.0, 0.0, 0.0);
  const Eigen::Vector3d n2(-cp, sp, 0.0);
  const double a = -cr;
  const double b = (a * cp - cq) / sp;
  const double c2 = a * a + b * b - 1.0;
  if (c2 <= 0.0) throw InputError("build_reflections: spec is not hyperbolic");
  const Eigen::Vector3d n3(a, b, std::sqrt(c2));

  return TriangleReflections{reflection(n1), reflection(n2), reflection(n3)};
}

std::pair<Isometry, Isometry> free_translation_pair(double length) {
  if (!(length > 0.0)) throw InputError("free_translation_pair: length must be positive");
  const double ch = std::cosh(length);
  const double sh = std::sinh(length);
  Isometry a, b;
  a.mat << ch, 0.0, sh, 0.0, 1.0, 0.0, sh, 0.0, ch;
  b.mat << 1.0, 0.0, 0.0, 0.0, ch, sh, 0.0, sh, ch;
  a.tol = b.tol = std::max({form_residual(a.mat), form_residual(b.mat), 100.0 * kEps});
  return {a, b};
}

CayleyBall cayley_ball(const std::vector<std::pair<std::string, Isometry>>& gens,
                       int radius, double dedup_tol) {
  if (gens.empty()) throw InputError("cayley_ball: at least one generator required");
  if (radius < 0) throw InputError("cayley_ball: radius must be nonnegative");
  if (!(dedup_tol > 0.0)) throw InputError("cayley_ball: dedup_tol must be positive");

  std::vector<std::string> names;
  names.reserve(gens.size());
  for (const auto& [name, g] : gens) {
    names.push_back(name);
    if (form_residual(g.mat) > std::max(g.tol, 1e-6))
      throw InputError("cayley_ball: generator '" + name + "' is not an isometry within tolerance");
  }

  CayleyBall ball;
  ball.labels = Alphabet(std::move(names));
  ball.radius = radius;
  ball.dedup_tol = dedup_tol;

  const int n = ball.labels.size();
  std::vector<Isometry> by_slot(2 * n);
  for (int g = 0; g < n; ++g) {
    by_slot[2 * g] = gens[static_cast<std::size_t>(g)].second;
    by_slot[2 * g + 1] = inverse(gens[static_cast<std::size_t>(g)].second);
  }

  std::multimap<double, int> index;
  auto add_vertex = [&](Word w, const Eigen::Matrix3d& m, double tol) {
    const int id = static_cast<int>(ball.vertices.size());
    ball.vertices.push_back(BallVertex{std::move(w), m, tol});
    ball.step.emplace_back(2 * n, -1);
    index.emplace(m(2, 2), id);
    return id;
  };

  add_vertex(Word{}, Eigen::Matrix3d::Identity(), 0.0);
  std::queue<int> todo;
  todo.push(0);

  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    if (word_depth(ball.vertices[static_cast<std::size_t>(v)]) == radius) continue;

    for (int slot = 0; slot < 2 * n; ++slot) {
      const Letter l = slot_letter(slot);
      const Isometry here{ball.vertices[static_cast<std::size_t>(v)].mat,
                          ball.vertices[static_cast<std::size_t>(v)].tol};
      const Isometry prod = compose(here, by_slot[static_cast<std::size_t>(slot)]);

      std::vector<int> close;
      std::vector<int> matched;
      const double key = prod.mat(2, 2);
      const auto lo = index.lower_bound(key - 2.5 * dedup_tol);
      const auto hi = index.upper_bound(key + 2.5 * dedup_tol);
      for (auto it = lo; it != hi; ++it) {
        const double d =
            max_norm(ball.vertices[static_cast<std::size_t>(it->second)].mat - prod.mat);
        if (d <= 2.0 * dedup_tol) close.push_back(it->second);
        if (d <= dedup_tol) matched.push_back(it->second);
      }
      if (matched.size() > 1 || close.size() > matched.size()) {
        std::ostringstream msg;
        msg << "cayley_ball: ambiguous merge at vertex "
            << print_word(ball.labels, ball.vertices[static_cast<std::size_t>(v)].word)
            << " * " << print_word(ball.labels, Word({l})) << " (" << matched.size()
            << " matches, " << close.size()
            << " borderline); reduce the radius or tighten dedup_tol";
        throw AmbiguityError(msg.str());
      }

      int to;
      if (matched.size() == 1) {
        to = matched.front();
      } else {
        Word w = ball.vertices[static_cast<std::size_t>(v)].word * Word({l});
        const int want = word_depth(ball.vertices[static_cast<std::size_t>(v)]) + 1;
        if (static_cast<int>(w.length()) != want)
          throw AmbiguityError(
              "cayley_ball: missed merge produced a cancelling word; tighten dedup_tol");
        to = add_vertex(std::move(w), prod.mat, prod.tol);
        todo.push(to);
      }
      ball.step[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot)] = to;
      ball.edges.push_back(BallEdge{v, l, to});
    }
  }

  ball.adjacent.assign(ball.vertices.size(), {});
  for (const BallEdge& e : ball.edges) {
    ball.adjacent[static_cast<std::size_t>(e.from)].push_back(e.to);
    ball.adjacent[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
  for (auto& row : ball.adjacent) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return ball;
}

int ball_step(const CayleyBall& ball, int vertex, Letter l) {
  if (vertex < 0 || vertex >= static_cast<int>(ball.vertices.size()))
    throw InputError("ball_step: vertex out of range");
  check_word(ball.labels, Word({l}));
  return ball.step[static_cast<std::size_t>(vertex)][static_cast<std::size_t>(letter_slot(l))];
}

int ball_trace(const CayleyBall& ball, const Word& w, int from) {
  check_word(ball.labels, w);
  int cur = from;
  for (const Letter l : w.letters()) {
    cur = ball_step(ball, cur, l);
    if (cur < 0) return -1;
  }
  return cur;
}

int ball_find(const CayleyBall& ball, const Eigen::Matrix3d& m) {
  for (std::size_t i = 0; i < ball.vertices.size(); ++i)
    if (max_norm(ball.vertices[i].mat - m) <= ball.dedup_tol)
      return static_cast<int>(i);
  return -1;
}

std::vector<int> ball_distances(const CayleyBall& ball, const std::vector<int>& sources) {
  std::vector<int> dist(ball.vertices.size(), -1);
  std::queue<int> todo;
  for (const int s : sources) {
    if (s < 0 || s >= static_cast<int>(ball.vertices.size()))
      throw InputError("ball_distances: source out of range");
    if (dist[static_cast<std::size_t>(s)] == -1) {
      dist[static_cast<std::size_t>(s)] = 0;
      todo.push(s);
    }
  }
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    for (const int w : ball.adjacent[static_cast<std::size_t>(v)]) {
      if (dist[static_cast<std::size_t>(w)] == -1) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        todo.push(w);
      }
    }
  }
  return dist;
}

std::vector<int> ball_geodesic(const CayleyBall& ball, int from, int to) {
  if (from < 0 || from >= static_cast<int>(ball.vertices.size()) || to < 0 ||
      to >= static_cast<int>(ball.vertices.size()))
    throw InputError("ball_geodesic: endpoint out of range");
  std::vector<int> parent(ball.vertices.size(), -2);
  parent[static_cast<std::size_t>(from)] = -1;
  std::queue<int> todo;
  todo.push(from);
  while (!todo.empty() && parent[static_cast<std::size_t>(to)] == -2) {
    const int v = todo.front();
    todo.pop();
    for (const int w : ball.adjacent[static_cast<std::size_t>(v)]) {
      if (parent[static_cast<std::size_t>(w)] == -2) {
        parent[static_cast<std::size_t>(w)] = v;
        todo.push(w);
      }
    }
  }
  if (parent[static_cast<std::size_t>(to)] == -2)
    throw InputError("ball_geodesic: endpoints are not connected");
  std::vector<int> path;
  for (int v = to; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

TorsionProfile torsion_profile(const CayleyBall& ball, int max_order, double tol) {
  TorsionProfile out;
  out.max_order = max_order;
  for (const BallVertex& v : ball.vertices) {
    if (v.mat.determinant() <= 0.0) continue;
    const int k = element_order(Isometry{v.mat, v.tol}, max_order, tol);
    if (k == 0)
      ++out.beyond;
    else
      ++out.orders[k];
  }
  return out;
}

SlimnessEstimate empirical_slimness(const CayleyBall& ball, int samples,
                                    std::uint64_t seed) {
  if (samples < 0) throw InputError("empirical_slimness: samples must be nonnegative");
  SlimnessEstimate est;
  est.samples = samples;
  est.seed = seed;

  const auto count = static_cast<std::uint64_t>(ball.vertices.size());
  std::mt19937_64 rng(seed);
  auto pick = [&]() { return static_cast<int>(rng() % count); };

  for (int s = 0; s < samples; ++s) {
    const int u = pick();
    const int v = pick();
    const int w = pick();
    const std::array<std::vector<int>, 3> sides = {
        ball_geodesic(ball, u, v), ball_geodesic(ball, v, w), ball_geodesic(ball, w, u)};

    bool touches_boundary = false;
    for (const auto& side : sides)
      for (const int x : side)
        if (word_depth(ball.vertices[static_cast<std::size_t>(x)]) == ball.radius)
          touches_boundary = true;
    if (touches_boundary) {
      ++est.skipped;
      continue;
    }

    double triple = 0.0;
    for (int i = 0; i < 3; ++i) {
      std::vector<int> others = sides[static_cast<std::size_t>((i + 1) % 3)];
      const auto& third = sides[static_cast<std::size_t>((i + 2) % 3)];
      others.insert(others.end(), third.begin(), third.end());
      const std::vector<int> dist = ball_distances(ball, others);
      for (const int x : sides[static_cast<std::size_t>(i)])
        triple = std::max(triple, static_cast<double>(dist[static_cast<std::size_t>(x)]));
    }
    est.delta = std::max(est.delta, triple);
    ++est.used;
  }
  return est;
}

QuasiFit quasigeodesic_fit(const CayleyBall& ball, const Word& b, int max_power) {
  check_word(ball.labels, b);
  if (b.empty()) throw InputError("quasigeodesic_fit: word must be nonempty");
  if (cyclically_reduce(b) != b)
    throw InputError("quasigeodesic_fit: word must be cyclically reduced");
  if (max_power < 1) throw InputError("quasigeodesic_fit: max_power must be positive");
  const int vb = ball_trace(ball, b);
  if (vb < 0)
    throw InputError("quasigeodesic_fit: the word's path leaves the ball; increase the radius");
  if (vb == 0) throw InputError("quasigeodesic_fit: word is the identity in this group");

  std::vector<int> path{0};
  std::vector<Letter> labels;
  int effective = 0;
  for (int m = 1; m <= max_power; ++m) {
    std::vector<int> extension;
    int cur = path.back();
    bool ok = true;
    for (const Letter l : b.letters()) {
      cur = ball_step(ball, cur, l);
      if (cur < 0) {
        ok = false;
        break;
      }
      extension.push_back(cur);
    }
    if (!ok) break;
    path.insert(path.end(), extension.begin(), extension.end());
    labels.insert(labels.end(), b.letters().begin(), b.letters().end());
    effective = m;
  }

  std::map<int, std::vector<int>> dist_from;
  for (const int v : path)
    if (!dist_from.count(v)) dist_from[v] = ball_distances(ball, {v});

  QuasiFit fit;
  fit.effective_power = effective;
  fit.lambda = 1.0;
  const int len = static_cast<int>(path.size());
  double worst = 0.0;
  int bi = 0, bj = 1;
  for (int i = 0; i < len; ++i) {
    for (int j = i + 1; j < len; ++j) {
      const int d = dist_from[path[static_cast<std::size_t>(i)]]
                             [static_cast<std::size_t>(path[static_cast<std::size_t>(j)])];
      const double slack = fit.lambda * (j - i) - d;
      if (slack > worst) {
        worst = slack;
        bi = i;
        bj = j;
      }
    }
  }
  fit.c = 0.5 * std::ceil(std::max(0.0, worst) / 0.5 - 1e-12);
  fit.witness = Word(std::vector<Letter>(labels.begin() + bi, labels.begin() + bj));
  fit.witness_span = bj - bi;
  fit.witness_distance = dist_from[path[static_cast<std::size_t>(bi)]]
                                  [static_cast<std::size_t>(path[static_cast<std::size_t>(bj)])];
  return fit;
}

AperiodicityResult aperiodicity_scan(const CayleyBall& ball, const Word& g,
                                     int lambda_nbhd, int t, int period_cap) {
  check_word(ball.labels, g);
  if (lambda_nbhd < 0)
    throw InputError("aperiodicity_scan: neighbourhood radius must be nonnegative");

  AperiodicityResult res;
  res.lambda_nbhd = lambda_nbhd;
  res.t = t;
  res.period_cap = period_cap;
  if (t < 1 || period_cap < 1) {
    res.undecided = true;
    return res;
  }

  const int vg = ball_trace(ball, g);
  if (vg < 0)
    throw InputError("aperiodicity_scan: the word's path leaves the ball; increase the radius");

  const std::vector<int> geo = ball_geodesic(ball, 0, vg);
  const std::vector<int> dist = ball_distances(ball, geo);
  std::vector<bool> near(ball.vertices.size(), false);
  std::vector<int> near_ids;
  for (std::size_t i = 0; i < near.size(); ++i) {
    if (dist[i] >= 0 && dist[i] <= lambda_nbhd) {
      near[i] = true;
      near_ids.push_back(static_cast<int>(i));
    }
  }

  std::vector<std::vector<Letter>> periods;
  std::vector<std::vector<Letter>> frontier{{}};
  for (int len = 1; len <= period_cap; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& stem : frontier) {
      for (int slot = 0; slot < 2 * ball.labels.size(); ++slot) {
        const Letter l = slot_letter(slot);
        if (!stem.empty() && stem.back() == inverse_letter(l)) continue;
        auto z = stem;
        z.push_back(l);
        next.push_back(z);
      }
    }
    periods.insert(periods.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  for (const auto& z : periods) {
    const int need = t * static_cast<int>(z.size());
    for (const int u : near_ids) {
      int cur = u;
      int walked = 0;
      std::tuple<int, int, int> prev{-1, -1, -1};
      while (walked < need) {
        const Letter l = z[static_cast<std::size_t>(walked) % z.size()];
        const int w = ball_step(ball, cur, l);
        if (w < 0 || !near[static_cast<std::size_t>(w)]) break;
        const std::tuple<int, int, int> sig{std::min(cur, w), std::max(cur, w), gen_of(l)};
        if (sig == prev) break;
        prev = sig;
        cur = w;
        ++walked;
      }
      if (walked >= need) {
        res.witness_found = true;
        res.period = Word(z);
        res.start = u;
        res.path_length = walked;
        return res;
      }
    }
  }
  return res;
}

}  // namespace grouplab
