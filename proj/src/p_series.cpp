#include "grouplab/p_series.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grouplab/subgroup_presentation.hpp"
#include "grouplab/words.hpp"

namespace grouplab {
namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

void check_prime(std::int64_t p) {
  if (p < 2 || p > (std::int64_t{1} << 30) || !is_prime(p))
    throw InputError("p must be a prime in [2, 2^30]");
}

std::int64_t mod_p(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b = mod_p(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  return pow_mod(a, p - 2, p);
}

/// p^d <= cap, decided without overflow.
bool pow_at_most(std::int64_t p, std::int64_t d, std::int64_t cap) {
  std::int64_t v = 1;
  for (std::int64_t i = 0; i < d; ++i) {
    if (v > cap / p) return false;
    v *= p;
  }
  return v <= cap;
}

/// In-place reduced row echelon form over F_p.  Returns the pivot row of
/// each column, -1 for free columns.
std::vector<int> rref(std::vector<std::vector<std::int64_t>>& m, int n_cols,
                      std::int64_t p) {
  std::vector<int> pivot_row(n_cols, -1);
  int rank = 0;
  for (int col = 0; col < n_cols; ++col) {
    int hit = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (m[r][col] != 0) {
        hit = r;
        break;
      }
    if (hit < 0) continue;
    std::swap(m[rank], m[hit]);
    std::int64_t inv = inv_mod(m[rank][col], p);
    for (int j = col; j < n_cols; ++j) m[rank][j] = m[rank][j] * inv % p;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      std::int64_t f = m[r][col];
      for (int j = col; j < n_cols; ++j)
        m[r][j] = mod_p(m[r][j] - f * m[rank][j], p);
    }
    pivot_row[col] = rank;
    ++rank;
  }
  return pivot_row;
}

}  // namespace

LayerMap layer_map(const Presentation& pr, std::int64_t prime) {
  check_prime(prime);
  int n = pr.alphabet().size();
  std::vector<std::vector<std::int64_t>> m;
  m.reserve(pr.relators().size());
  for (const Word& r : pr.relators()) {
    std::vector<std::int64_t> sums = exponent_sums(pr.alphabet(), r);
    for (auto& v : sums) v = mod_p(v, prime);
    m.push_back(std::move(sums));
  }
  std::vector<int> pivot_row = rref(m, n, prime);

  std::vector<int> basis_pos(n, -1);
  int d = 0;
  for (int j = 0; j < n; ++j)
    if (pivot_row[j] < 0) basis_pos[j] = d++;

  LayerMap out;
  out.d = d;
  out.images.assign(n, std::vector<int>(d, 0));
  for (int j = 0; j < n; ++j) {
    if (pivot_row[j] >= 0) {
      // Pivot generator: row says e_j = -sum over free columns.
      const auto& row = m[pivot_row[j]];
      for (int k = 0; k < n; ++k)
        if (basis_pos[k] >= 0)
          out.images[j][basis_pos[k]] =
              static_cast<int>(mod_p(-row[k], prime));
    } else {
      out.images[j][basis_pos[j]] = 1;
    }
  }
  return out;
}

std::int64_t mod_p_layer_rank(const Presentation& p, std::int64_t prime) {
  return layer_map(p, prime).d;
}

std::optional<CyclicFreeShape> match_shape(const Presentation& pr,
                                           std::int64_t prime) {
  check_prime(prime);
  std::map<int, std::int64_t> order_exp;  // generator -> a
  for (const Word& w : pr.relators()) {
    const auto& ls = w.letters();
    if (ls.empty()) return std::nullopt;
    for (Letter l : ls)
      if (l != ls[0]) return std::nullopt;
    int g = gen_of(ls[0]);
    if (order_exp.count(g)) return std::nullopt;
    std::int64_t len = static_cast<std::int64_t>(ls.size());
    std::int64_t a = 0;
    while (len % prime == 0) {
      len /= prime;
      ++a;
    }
    if (len != 1 || a < 1) return std::nullopt;
    order_exp[g] = a;
  }
  CyclicFreeShape s;
  for (const auto& [g, a] : order_exp) ++s.torsion[a];
  s.free_rank =
      pr.alphabet().size() - static_cast<std::int64_t>(order_exp.size());
  return s;
}

std::optional<std::int64_t> shape_rank(const CyclicFreeShape& s) {
  std::int64_t k = 0;
  for (const auto& [a, c] : s.torsion)
    if (__builtin_add_overflow(k, c, &k)) return std::nullopt;
  std::int64_t d;
  if (__builtin_add_overflow(k, s.free_rank, &d)) return std::nullopt;
  return d;
}

bool kurosh_step(CyclicFreeShape& s, std::int64_t prime) {
  std::optional<std::int64_t> d = shape_rank(s);
  if (!d) return false;
  if (*d == 0) return true;  // trivial group is its own layer kernel

  std::int64_t pd1 = 1;  // p^(d-1)
  for (std::int64_t i = 0; i + 1 < *d; ++i)
    if (__builtin_mul_overflow(pd1, prime, &pd1)) return false;

  std::int64_t k = 0;
  for (const auto& [a, c] : s.torsion) k += c;

  CyclicFreeShape out;
  for (const auto& [a, c] : s.torsion) {
    if (a == 1) continue;  // Z_p factors meet the kernel trivially
    std::int64_t copies;
    if (__builtin_mul_overflow(c, pd1, &copies)) return false;
    auto& slot = out.torsion[a - 1];
    if (__builtin_add_overflow(slot, copies, &slot)) return false;
  }
  // Free rank from the Euler characteristic of the index-p^d cover.
  std::int64_t t;
  if (__builtin_mul_overflow(prime, *d - 1, &t)) return false;
  if (__builtin_sub_overflow(t, k, &t)) return false;
  if (__builtin_mul_overflow(pd1, t, &t)) return false;
  if (__builtin_add_overflow(t, 1, &out.free_rank)) return false;
  s = std::move(out);
  return true;
}

PSeriesReport delta_orders(const Presentation& pr, std::int64_t prime,
                           int depth, const EnumLimits& limits) {
  check_prime(prime);
  if (depth < 0) throw InputError("depth must be >= 0");

  PSeriesReport rep;
  rep.p = prime;
  std::optional<Presentation> pres = pr;
  std::optional<CyclicFreeShape> shape = match_shape(pr, prime);
  std::int64_t e = 0;
  int i = 0;
  while (true) {
    std::optional<std::int64_t> d;
    std::string engine = "structural";
    if (shape) {
      d = shape_rank(*shape);
    } else if (pres) {
      d = layer_map(*pres, prime).d;
      engine = "table";
    }
    rep.levels.push_back({i, e, d, engine});
    if (i == depth) break;
    if (!d) {
      rep.truncated = true;
      rep.reason = "layer rank not computable at level " + std::to_string(i);
      break;
    }
    if (__builtin_add_overflow(e, *d, &e)) {
      rep.truncated = true;
      rep.reason = "order exponent overflows past level " + std::to_string(i);
      break;
    }

    bool advanced = false;
    if (shape) {
      CyclicFreeShape next = *shape;
      if (kurosh_step(next, prime)) {
        shape = std::move(next);
        pres.reset();
        advanced = true;
      }
    }
    if (!advanced && pres && pow_at_most(prime, *d, limits.max_cosets)) {
      LayerMap lm = layer_map(*pres, prime);
      CosetTable t = table_from_homomorphism(*pres, static_cast<int>(prime),
                                             lm.d, lm.images, limits);
      SubgroupPresentation sp = tietze_simplify(subgroup_presentation(*pres, t));
      pres = sp.presentation();
      shape = match_shape(*pres, prime);
      advanced = true;
    }
    if (!advanced) {
      if (i + 1 == depth) {
        // The final requested level still gets its exact order; only the
        // layer rank there is out of reach.
        pres.reset();
        shape.reset();
      } else {
        rep.truncated = true;
        rep.reason =
            shape ? "structural counters overflow past level " +
                        std::to_string(i)
                  : "level " + std::to_string(i + 1) +
                        " needs a table larger than max_cosets";
        break;
      }
    }
    ++i;
  }
  return rep;
}

CompareResult compare_invariants(const PSeriesReport& a,
                                 const PSeriesReport& b) {
  if (a.p != b.p) throw InputError("cannot compare ladders at different primes");
  CompareResult out;
  int common = static_cast<int>(std::min(a.levels.size(), b.levels.size()));
  for (int i = 0; i < common; ++i) {
    if (a.levels[i].e != b.levels[i].e) {
      out.differs_at = i;
      out.common_depth = i;
      out.e_a = a.levels[i].e;
      out.e_b = b.levels[i].e;
      return out;
    }
  }
  out.common_depth = common - 1;
  if (common > 0) {
    out.e_a = a.levels[common - 1].e;
    out.e_b = b.levels[common - 1].e;
  }
  return out;
}

namespace {

/// Sparse vector in F_p^(free basis), sorted by generator index.
using SparseVec = std::vector<std::pair<int, std::int64_t>>;

SparseVec bump(const SparseVec& v, int g, int s, std::int64_t p) {
  SparseVec out;
  out.reserve(v.size() + 1);
  bool placed = false;
  for (const auto& [gen, val] : v) {
    if (gen == g) {
      std::int64_t nv = mod_p(val + s, p);
      if (nv != 0) out.emplace_back(gen, nv);
      placed = true;
      continue;
    }
    if (!placed && gen > g) {
      std::int64_t nv = mod_p(s, p);
      if (nv != 0) out.emplace_back(g, nv);
      placed = true;
    }
    out.emplace_back(gen, val);
  }
  if (!placed) {
    std::int64_t nv = mod_p(s, p);
    if (nv != 0) out.emplace_back(g, nv);
  }
  return out;
}

/// Rewrites a layer-kernel element of a free group over a Schreier basis
/// of the kernel, visiting only the cosets the walk touches.  Cosets are
/// vectors in F_p^(gens); first-visit edges span the tree and emit
/// nothing, every other edge emits its own free generator.
Word sparse_rewrite(const Word& w, std::int64_t p) {
  std::map<SparseVec, int> ids;
  SparseVec cur;
  ids.emplace(cur, 0);
  int cur_id = 0;
  std::map<std::pair<int, int>, int> slots;  // 0 = tree, k > 0 = gen k-1
  int n_slots = 0;
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    int g = gen_of(l);
    SparseVec to = bump(cur, g, sign_of(l), p);
    auto [it, is_new] = ids.try_emplace(to, static_cast<int>(ids.size()));
    int to_id = it->second;
    std::pair<int, int> key{l > 0 ? cur_id : to_id, g};
    auto st = slots.find(key);
    if (st == slots.end())
      st = slots.emplace(key, is_new ? 0 : ++n_slots).first;
    if (st->second > 0)
      out.push_back(make_letter(st->second - 1, sign_of(l)));
    cur = std::move(to);
    cur_id = to_id;
  }
  return Word(std::move(out));
}

}  // namespace

MembershipResult membership_level(const Presentation& pr, std::int64_t prime,
                                  const Word& w, const EnumLimits& limits,
                                  int max_level) {
  check_prime(prime);
  check_word(pr.alphabet(), w);
  if (max_level < 1) throw InputError("max_level must be >= 1");

  std::optional<Presentation> pres = pr;
  Word cur = w;
  bool free_track = false;  // once the kernel is free, stay lazy
  for (int v = 1; v <= max_level; ++v) {
    if (cur.empty()) return {MembershipResult::Kind::trivial, v - 1};
    if (free_track) {
      std::map<int, std::int64_t> sums;
      for (Letter l : cur.letters()) sums[gen_of(l)] += sign_of(l);
      for (const auto& [g, s] : sums)
        if (mod_p(s, prime) != 0) return {MembershipResult::Kind::found, v};
      cur = sparse_rewrite(cur, prime);
      continue;
    }
    LayerMap lm = layer_map(*pres, prime);
    std::vector<std::int64_t> sums = exponent_sums(pres->alphabet(), cur);
    bool nonzero = false;
    for (int j = 0; j < lm.d && !nonzero; ++j) {
      std::int64_t acc = 0;
      for (int g = 0; g < pres->alphabet().size(); ++g)
        acc = mod_p(acc + mod_p(sums[g], prime) * lm.images[g][j], prime);
      nonzero = acc != 0;
    }
    if (nonzero) return {MembershipResult::Kind::found, v};
    if (pres->relators().empty()) {
      free_track = true;
      cur = sparse_rewrite(cur, prime);
      continue;
    }
    if (!pow_at_most(prime, lm.d, limits.max_cosets))
      return {MembershipResult::Kind::undecided, v};
    CosetTable t = table_from_homomorphism(*pres, static_cast<int>(prime),
                                           lm.d, lm.images, limits);
    SubgroupPresentation sp = tietze_simplify(subgroup_presentation(*pres, t));
    cur = sp.rewrite(cur);
    pres = sp.presentation();
  }
  return {MembershipResult::Kind::undecided, max_level};
}

}  // namespace grouplab
