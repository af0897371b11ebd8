#include "grouplab/coset_table.hpp"

#include <chrono>
#include <deque>
#include <stdexcept>

namespace grouplab {

CosetTable::CosetTable(int n_cosets, int n_gens,
                       std::vector<std::int32_t> entries)
    : n_(n_cosets), n_gens_(n_gens), entries_(std::move(entries)) {
  if (entries_.size() !=
      static_cast<std::size_t>(n_) * 2 * static_cast<std::size_t>(n_gens_))
    throw std::logic_error("coset table entry count mismatch");
  for (std::int32_t e : entries_)
    if (e < 1 || e > n_) throw std::logic_error("coset table entry out of range");
}

namespace {

// Growable table used during enumeration.  Entry 0 means undefined.
class Builder {
 public:
  Builder(const Presentation& p, const std::vector<Word>& subgroup_gens,
          const EnumLimits& limits)
      : pres_(p), sub_(subgroup_gens), limits_(limits), ng_(p.n_generators()) {
    rows_.push_back({});  // dummy for 1-based addressing
    parent_.push_back(0);
    new_coset();  // coset 1
  }

  EnumResult run() {
    auto t0 = std::chrono::steady_clock::now();
    auto expired = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           t0)
                 .count() > limits_.max_seconds;
    };

    for (const Word& g : sub_) {
      if (!close_cycle(1, g)) return overflow();
      if (expired()) return timeout();
    }
    // Scan cosets in definition order; relator traces and row filling can
    // define new cosets or merge old ones, so the scan continues until a
    // full pass makes no change.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 1; c < rows_.size(); ++c) {
        if (expired()) return timeout();
        if (!alive(static_cast<int>(c))) continue;
        for (const Word& r : pres_.relators()) {
          std::size_t before = rows_.size();
          auto merged_before = stats_.n_coincidences;
          if (!close_cycle(static_cast<int>(c), r)) return overflow();
          if (rows_.size() != before || stats_.n_coincidences != merged_before)
            changed = true;
          if (!alive(static_cast<int>(c))) break;
        }
        if (!alive(static_cast<int>(c))) continue;
        for (int col = 0; col < 2 * ng_; ++col) {
          int cc = find(static_cast<int>(c));
          if (get(cc, col) == 0) {
            if (!define(cc, col)) return overflow();
            changed = true;
          }
        }
      }
    }
    return finish();
  }

 private:
  int new_coset() {
    rows_.push_back(std::vector<std::int32_t>(2 * ng_, 0));
    parent_.push_back(static_cast<int>(rows_.size()) - 1);
    ++stats_.n_defined;
    return static_cast<int>(rows_.size()) - 1;
  }

  bool at_capacity() const { return stats_.n_defined >= limits_.max_cosets; }

  int find(int c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];  // path halving
      c = parent_[c];
    }
    return c;
  }

  bool alive(int c) { return find(c) == c; }

  static int col_of(Letter l) { return 2 * gen_of(l) + (l < 0 ? 1 : 0); }
  static int inv_col(int col) { return col ^ 1; }

  int get(int c, int col) {
    int v = rows_[c][col];
    if (v == 0) return 0;
    v = find(v);
    rows_[c][col] = v;
    return v;
  }

  // Sets c.col = d and the inverse entry, queueing a coincidence on clash.
  void deduce(int c, int col, int d) {
    int cur = get(c, col);
    if (cur == 0)
      rows_[c][col] = d;
    else if (cur != d)
      queue_.emplace_back(cur, d);
    int back = get(d, inv_col(col));
    if (back == 0)
      rows_[d][inv_col(col)] = c;
    else if (back != c)
      queue_.emplace_back(back, c);
    process_coincidences();
  }

  bool define(int c, int col) {
    if (at_capacity()) return false;
    int d = new_coset();
    rows_[c][col] = d;
    rows_[d][inv_col(col)] = c;
    return true;
  }

  // Traces w from coset c, defining cosets for every gap except the last
  // transition, which is closed by deduction or coincidence.
  bool close_cycle(int c, const Word& w) {
    if (w.empty()) return true;
    c = find(c);
    int cur = c;
    const auto& ls = w.letters();
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
      int col = col_of(ls[i]);
      int nxt = get(cur, col);
      if (nxt == 0) {
        if (!define(cur, col)) return false;
        nxt = get(cur, col);
      }
      cur = nxt;
    }
    int col = col_of(ls.back());
    deduce(cur, col, find(c));
    return true;
  }

  void process_coincidences() {
    while (!queue_.empty()) {
      auto [a, b] = queue_.front();
      queue_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      ++stats_.n_coincidences;
      int keep = a < b ? a : b;  // keeps coset 1 stable
      int kill = a < b ? b : a;
      parent_[kill] = keep;
      for (int col = 0; col < 2 * ng_; ++col) {
        int t = rows_[kill][col];
        if (t == 0) continue;
        t = find(t);
        int cur = get(keep, col);
        if (cur == 0) {
          rows_[keep][col] = t;
          int back = get(t, inv_col(col));
          if (back == 0)
            rows_[t][inv_col(col)] = keep;
          else if (back != keep)
            queue_.emplace_back(back, keep);
        } else if (cur != t) {
          queue_.emplace_back(cur, t);
        }
      }
    }
  }

  EnumResult overflow() {
    return {EnumStatus::out_of_cosets, std::nullopt, stats_};
  }
  EnumResult timeout() {
    return {EnumStatus::out_of_time, std::nullopt, stats_};
  }

  EnumResult finish() {
    // Compact live cosets, keeping definition order.
    std::vector<int> live;
    std::vector<int> newid(rows_.size(), 0);
    for (std::size_t c = 1; c < rows_.size(); ++c)
      if (find(static_cast<int>(c)) == static_cast<int>(c)) {
        live.push_back(static_cast<int>(c));
        newid[c] = static_cast<int>(live.size());
      }
    std::vector<std::int32_t> entries;
    entries.reserve(live.size() * 2 * ng_);
    for (int c : live)
      for (int col = 0; col < 2 * ng_; ++col) {
        int t = get(c, col);
        if (t == 0) throw std::logic_error("incomplete row after closure");
        entries.push_back(newid[t]);
      }
    CosetTable table(static_cast<int>(live.size()), ng_, std::move(entries));
    return {EnumStatus::closed, std::move(table), stats_};
  }

  const Presentation& pres_;
  const std::vector<Word>& sub_;
  EnumLimits limits_;
  int ng_;
  std::vector<std::vector<std::int32_t>> rows_;
  std::vector<int> parent_;
  std::deque<std::pair<int, int>> queue_;
  EnumStats stats_;
};

}  // namespace

EnumResult enumerate_cosets(const Presentation& p,
                            const std::vector<Word>& subgroup_gens,
                            const EnumLimits& limits) {
  if (p.n_generators() == 0) throw InputError("empty alphabet");
  for (const Word& w : subgroup_gens) check_word(p.alphabet(), w);
  if (limits.max_cosets < 1) throw InputError("max_cosets must be positive");
  Builder b(p, subgroup_gens, limits);
  EnumResult r = b.run();
  if (r.status == EnumStatus::closed)
    validate_table(p, subgroup_gens, *r.table);
  return r;
}

std::optional<std::int64_t> subgroup_index(const Presentation& p,
                                           const std::vector<Word>& gens,
                                           const EnumLimits& limits) {
  EnumResult r = enumerate_cosets(p, gens, limits);
  if (r.status != EnumStatus::closed) return std::nullopt;
  return r.table->n_cosets();
}

CosetTable table_from_homomorphism(const Presentation& p, int prime, int d,
                                   const std::vector<std::vector<int>>& images,
                                   const EnumLimits& limits) {
  if (prime < 2) throw InputError("prime must be at least 2");
  if (d < 0) throw InputError("negative target rank");
  if (static_cast<int>(images.size()) != p.n_generators())
    throw InputError("one image vector per generator required");
  std::int64_t size = 1;
  for (int i = 0; i < d; ++i) {
    size *= prime;
    if (size > limits.max_cosets)
      throw InputError("p^d exceeds max_cosets; refusing to build table");
  }
  for (const auto& v : images) {
    if (static_cast<int>(v.size()) != d)
      throw InputError("image vector has wrong length");
    for (int x : v)
      if (x < 0 || x >= prime) throw InputError("image entry not in [0, p)");
  }
  // Relators must die in (Z/p)^d.
  for (const Word& r : p.relators()) {
    std::vector<int> acc(d, 0);
    for (Letter l : r.letters()) {
      const auto& img = images[gen_of(l)];
      for (int j = 0; j < d; ++j) {
        acc[j] = (acc[j] + sign_of(l) * img[j]) % prime;
        if (acc[j] < 0) acc[j] += prime;
      }
    }
    for (int j = 0; j < d; ++j)
      if (acc[j] != 0)
        throw InputError(
            "relator has nonzero image; map does not factor through the "
            "quotient");
  }

  int n = static_cast<int>(size);
  std::vector<std::int64_t> powers(d, 1);
  for (int j = 1; j < d; ++j) powers[j] = powers[j - 1] * prime;
  auto offset = [&](const std::vector<int>& v, const std::vector<int>& img,
                    int sign) {
    std::int64_t id = 0;
    for (int j = 0; j < d; ++j) {
      int x = (v[j] + sign * img[j]) % prime;
      if (x < 0) x += prime;
      id += x * powers[j];
    }
    return static_cast<int>(id) + 1;
  };

  int ng = p.n_generators();
  std::vector<std::int32_t> entries(static_cast<std::size_t>(n) * 2 * ng);
  std::vector<int> v(d, 0);
  for (int c = 0; c < n; ++c) {
    std::int64_t rem = c;
    for (int j = 0; j < d; ++j) {
      v[j] = static_cast<int>(rem % prime);
      rem /= prime;
    }
    for (int g = 0; g < ng; ++g) {
      entries[static_cast<std::size_t>(c) * 2 * ng + 2 * g] =
          offset(v, images[g], +1);
      entries[static_cast<std::size_t>(c) * 2 * ng + 2 * g + 1] =
          offset(v, images[g], -1);
    }
  }
  return CosetTable(n, ng, std::move(entries));
}

std::vector<Word> schreier_transversal(const CosetTable& t) {
  std::vector<Word> rep(t.n_cosets() + 1);
  std::vector<bool> seen(t.n_cosets() + 1, false);
  std::deque<int> queue;
  seen[1] = true;
  queue.push_back(1);
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (int g = 0; g < t.n_gens(); ++g) {
      for (int sign : {+1, -1}) {
        Letter l = make_letter(g, sign);
        int d = t.act(c, l);
        if (!seen[d]) {
          seen[d] = true;
          rep[d] = rep[c] * Word({l});
          queue.push_back(d);
        }
      }
    }
  }
  for (int c = 1; c <= t.n_cosets(); ++c)
    if (!seen[c])
      throw std::logic_error("coset table is not transitive");
  return std::vector<Word>(rep.begin() + 1, rep.end());
}

std::vector<int> coset_action(const CosetTable& t, const Word& w) {
  std::vector<int> out(t.n_cosets());
  for (int c = 1; c <= t.n_cosets(); ++c) out[c - 1] = t.trace(c, w);
  return out;
}

void validate_table(const Presentation& p, const std::vector<Word>& gens,
                    const CosetTable& t) {
  if (t.n_gens() != p.n_generators())
    throw std::logic_error("table generator count mismatch");
  for (int c = 1; c <= t.n_cosets(); ++c)
    for (int g = 0; g < t.n_gens(); ++g)
      for (int sign : {+1, -1}) {
        Letter l = make_letter(g, sign);
        int d = t.act(c, l);
        if (t.act(d, inverse_letter(l)) != c)
          throw std::logic_error("inverse action inconsistent");
      }
  for (const Word& r : p.relators())
    for (int c = 1; c <= t.n_cosets(); ++c)
      if (t.trace(c, r) != c)
        throw std::logic_error("relator does not stabilize a coset");
  for (const Word& g : gens)
    if (t.trace(1, g) != 1)
      throw std::logic_error("subgroup generator moves coset 1");
}

}  // namespace grouplab
