#pragma once

// Reference computations for the test suite, kept deliberately on
// different algorithmic paths than the library: string rewriting and
// breadth-first search instead of normal-form stacks and coset tables,
// closed-form recursions instead of the iterated-kernel ladder.

#include <cstdint>
#include <deque>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "grouplab/words.hpp"

namespace oracle {

using grouplab::Letter;
using grouplab::Word;

// Uniformly random freely reduced word of the given length.
inline Word random_word(std::mt19937_64& rng, int n_gens, int len) {
  std::vector<Letter> ls;
  std::uniform_int_distribution<int> gen(0, n_gens - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  while (static_cast<int>(ls.size()) < len) {
    Letter l = grouplab::make_letter(gen(rng), sgn(rng) ? 1 : -1);
    if (!ls.empty() && ls.back() == grouplab::inverse_letter(l)) continue;
    ls.push_back(l);
  }
  return Word(std::move(ls));
}

// Triviality in Z_2 * Z_4 = <x, y | x^2, y^4> by confluent string
// rewriting over positive letters: eliminate inverses (x^-1 -> x,
// y^-1 -> y^3), then cancel xx and yyyy by repeated scans.
inline bool trivial_in_z2_z4(const Word& w) {
  std::vector<int> s;  // 0 = x, 1 = y
  for (Letter l : w.letters()) {
    int g = grouplab::gen_of(l);
    int reps = 1;
    if (grouplab::sign_of(l) < 0) reps = (g == 0) ? 1 : 3;
    for (int i = 0; i < reps; ++i) s.push_back(g);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == 0 && s[i + 1] == 0) {
        s.erase(s.begin() + i, s.begin() + i + 2);
        changed = true;
        break;
      }
      if (i + 3 < s.size() && s[i] == 1 && s[i + 1] == 1 && s[i + 2] == 1 &&
          s[i + 3] == 1) {
        s.erase(s.begin() + i, s.begin() + i + 4);
        changed = true;
        break;
      }
    }
  }
  return s.empty();
}

// Breadth-first membership in the normal closure of the relators: from w,
// insert a relator or its inverse at every position and freely reduce,
// accepting when the empty word appears.  Words longer than len_cap are
// pruned, so a false return is only meaningful for inputs short enough
// that a cancellation path fits under the cap.
inline bool normal_closure_contains(const std::vector<Word>& relators,
                                    const Word& w, std::size_t len_cap,
                                    std::size_t state_budget = 200000) {
  if (w.empty()) return true;
  std::vector<Word> moves;
  for (const Word& r : relators) {
    moves.push_back(r);
    moves.push_back(r.inverse());
  }
  std::set<std::vector<Letter>> seen;
  std::deque<std::vector<Letter>> queue;
  seen.insert(w.letters());
  queue.push_back(w.letters());
  while (!queue.empty() && seen.size() < state_budget) {
    std::vector<Letter> u = std::move(queue.front());
    queue.pop_front();
    for (const Word& m : moves) {
      for (std::size_t pos = 0; pos <= u.size(); ++pos) {
        std::vector<Letter> raw;
        raw.reserve(u.size() + m.length());
        raw.insert(raw.end(), u.begin(), u.begin() + pos);
        raw.insert(raw.end(), m.letters().begin(), m.letters().end());
        raw.insert(raw.end(), u.begin() + pos, u.end());
        Word next(std::move(raw));
        if (next.empty()) return true;
        if (next.length() > len_cap) continue;
        if (seen.insert(next.letters()).second) queue.push_back(next.letters());
      }
    }
  }
  return false;
}

// Iterated-kernel ladder of a free group of rank k at the prime p: the
// level-i kernel is free, its rank follows the Nielsen-Schreier formula
// r' = (r - 1) p^r + 1, and the cumulative exponent grows by the current
// rank.  Returns (e_i, d_i) pairs for i = 0..depth, d_depth included.
inline std::vector<std::pair<std::int64_t, std::int64_t>> free_group_ladder(
    std::int64_t k, std::int64_t p, int depth) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t e = 0, r = k;
  for (int i = 0; i <= depth; ++i) {
    out.emplace_back(e, r);
    if (i == depth) break;
    e += r;
    if (r > 40) throw std::overflow_error("ladder rank too large for int64");
    std::int64_t pw = 1;
    for (std::int64_t j = 0; j < r; ++j) pw *= p;
    r = (r - 1) * pw + 1;
  }
  return out;
}

// Same ladder for the cyclic group of order p^k: e_i = min(i, k).
inline std::vector<std::int64_t> cyclic_ladder(int k, int depth) {
  std::vector<std::int64_t> out;
  for (int i = 0; i <= depth; ++i)
    out.push_back(std::min<std::int64_t>(i, k));
  return out;
}

}  // namespace oracle
