#include "grouplab/subgroup_presentation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace grouplab {

namespace {

// Lexicographically least rotation of w or of its inverse, the dedup key
// for relators considered as unoriented cyclic words.
std::vector<Letter> cyclic_key(const Word& w) {
  std::vector<Letter> best;
  bool first = true;
  for (const Word& u : {w, w.inverse()}) {
    const auto& ls = u.letters();
    for (std::size_t s = 0; s < std::max<std::size_t>(ls.size(), 1); ++s) {
      std::vector<Letter> rot;
      rot.reserve(ls.size());
      rot.insert(rot.end(), ls.begin() + s, ls.end());
      rot.insert(rot.end(), ls.begin(), ls.begin() + s);
      if (first || rot < best) {
        best = std::move(rot);
        first = false;
      }
    }
  }
  return best;
}

}  // namespace

Presentation SubgroupPresentation::presentation() const {
  std::vector<std::string> names;
  names.reserve(live_.size());
  for (int raw : live_) names.push_back("s" + std::to_string(raw + 1));
  std::vector<Word> rels;
  for (const Word& r : relators_)
    if (!r.empty()) rels.push_back(raw_to_live(r));
  return Presentation(Alphabet(std::move(names)), std::move(rels));
}

Word SubgroupPresentation::trace_slots(int start, const Word& w) const {
  int ng = table_.n_gens();
  std::vector<Letter> out;
  int cur = start;
  for (Letter l : w.letters()) {
    if (l > 0) {
      std::int32_t s = edge_slot_[(cur - 1) * ng + gen_of(l)];
      if (s >= 0) out.push_back(make_letter(s, +1));
      cur = table_.act(cur, l);
    } else {
      int nxt = table_.act(cur, l);
      std::int32_t s = edge_slot_[(nxt - 1) * ng + gen_of(l)];
      if (s >= 0) out.push_back(make_letter(s, -1));
      cur = nxt;
    }
  }
  return Word(std::move(out));
}

Word SubgroupPresentation::substitute(const Word& w) const {
  // Definitions reference only generators eliminated later (or never), so
  // repeated expansion terminates.
  Word cur = w;
  bool dirty = true;
  while (dirty) {
    dirty = false;
    std::vector<Letter> out;
    for (Letter l : cur.letters()) {
      int raw = gen_of(l);
      if (!eliminated_[raw]) {
        out.push_back(l);
        continue;
      }
      dirty = true;
      const Word& def = l > 0 ? defs_[raw] : defs_[raw].inverse();
      out.insert(out.end(), def.letters().begin(), def.letters().end());
    }
    cur = Word(std::move(out));
  }
  return cur;
}

Word SubgroupPresentation::raw_to_live(const Word& w) const {
  std::vector<int> live_index(slots_.size(), -1);
  for (std::size_t i = 0; i < live_.size(); ++i) live_index[live_[i]] = static_cast<int>(i);
  std::vector<Letter> out;
  out.reserve(w.length());
  for (Letter l : w.letters()) {
    int idx = live_index[gen_of(l)];
    if (idx < 0) throw std::logic_error("eliminated generator in live word");
    out.push_back(make_letter(idx, sign_of(l)));
  }
  return Word(std::move(out));
}

Word SubgroupPresentation::rewrite(const Word& ambient_word) const {
  check_word(ambient_.alphabet(), ambient_word);
  if (table_.trace(1, ambient_word) != 1)
    throw InputError("word does not lie in the subgroup");
  return raw_to_live(substitute(trace_slots(1, ambient_word)));
}

Word SubgroupPresentation::to_ambient(const Word& subgroup_word) const {
  Word out;
  for (Letter l : subgroup_word.letters()) {
    const Word& g = generator_ambient(gen_of(l));
    out = out * (l > 0 ? g : g.inverse());
  }
  return out;
}

SubgroupPresentation subgroup_presentation(const Presentation& p,
                                           const CosetTable& t) {
  if (t.n_gens() != p.n_generators())
    throw InputError("coset table does not match the presentation");
  SubgroupPresentation sp;
  sp.ambient_ = p;
  sp.table_ = t;

  std::vector<Word> reps = schreier_transversal(t);
  int n = t.n_cosets(), ng = t.n_gens();
  sp.edge_slot_.assign(static_cast<std::size_t>(n) * ng, -1);
  for (int c = 1; c <= n; ++c)
    for (int g = 0; g < ng; ++g) {
      Letter l = make_letter(g, +1);
      int d = t.act(c, l);
      Word w = reps[c - 1] * Word({l}) * reps[d - 1].inverse();
      if (w.empty()) continue;  // spanning-tree edge
      sp.edge_slot_[(c - 1) * ng + g] = static_cast<std::int32_t>(sp.slots_.size());
      sp.slots_.push_back({c, g, std::move(w)});
    }

  for (int c = 1; c <= n; ++c)
    for (const Word& r : p.relators())
      sp.relators_.push_back(sp.trace_slots(c, r));

  sp.live_.resize(sp.slots_.size());
  for (std::size_t i = 0; i < sp.live_.size(); ++i) sp.live_[i] = static_cast<int>(i);
  sp.defs_.assign(sp.slots_.size(), Word());
  sp.eliminated_.assign(sp.slots_.size(), false);
  return sp;
}

SubgroupPresentation tietze_simplify(const SubgroupPresentation& input,
                                     std::int64_t budget) {
  SubgroupPresentation sp = input;
  std::int64_t steps = 0;
  auto spend = [&] { return ++steps <= budget; };

  auto eliminate = [&](int raw, Word def) {
    sp.defs_[raw] = std::move(def);
    sp.eliminated_[raw] = true;
    sp.live_.erase(std::find(sp.live_.begin(), sp.live_.end(), raw));
    for (Word& r : sp.relators_) r = sp.substitute(r);
  };

  bool changed = true;
  bool exhausted = false;
  while (changed && !exhausted) {
    changed = false;

    // Empty relators.
    for (std::size_t i = 0; i < sp.relators_.size();) {
      if (sp.relators_[i].empty()) {
        if (!spend()) { exhausted = true; break; }
        sp.relators_.erase(sp.relators_.begin() + i);
        changed = true;
      } else {
        ++i;
      }
    }
    if (exhausted) break;

    // Duplicates up to rotation and inversion.
    {
      std::map<std::vector<Letter>, int> seen;
      for (std::size_t i = 0; i < sp.relators_.size();) {
        auto key = cyclic_key(sp.relators_[i]);
        if (seen.count(key)) {
          if (!spend()) { exhausted = true; break; }
          sp.relators_.erase(sp.relators_.begin() + i);
          changed = true;
        } else {
          seen[key] = static_cast<int>(i);
          ++i;
        }
      }
    }
    if (exhausted) break;

    // Length-1 relators define a generator as trivial.
    {
      auto it = std::find_if(sp.relators_.begin(), sp.relators_.end(),
                             [](const Word& r) { return r.length() == 1; });
      if (it != sp.relators_.end()) {
        if (!spend()) break;
        int raw = gen_of(it->at(0));
        sp.relators_.erase(it);
        eliminate(raw, Word());
        changed = true;
        continue;
      }
    }

    // A generator occurring exactly once in exactly one relator can be
    // solved for and removed together with that relator.
    {
      std::map<int, std::pair<int, int>> count;  // raw -> (total, relator)
      for (std::size_t i = 0; i < sp.relators_.size(); ++i)
        for (Letter l : sp.relators_[i].letters()) {
          auto& e = count[gen_of(l)];
          ++e.first;
          e.second = static_cast<int>(i);
        }
      bool applied = false;
      for (int raw : sp.live_) {
        auto it = count.find(raw);
        if (it == count.end() || it->second.first != 1) continue;
        if (!spend()) { exhausted = true; break; }
        const Word r = sp.relators_[it->second.second];
        std::size_t pos = 0;
        while (gen_of(r.at(pos)) != raw) ++pos;
        // Rotate r to z^e * u, then z = u^-1 (e = +1) or u (e = -1).
        std::vector<Letter> u(r.letters().begin() + pos + 1, r.letters().end());
        u.insert(u.end(), r.letters().begin(), r.letters().begin() + pos);
        Word def = sign_of(r.at(pos)) > 0 ? Word(u).inverse() : Word(u);
        sp.relators_.erase(sp.relators_.begin() + it->second.second);
        eliminate(raw, def);
        changed = true;
        applied = true;
        break;
      }
      if (applied) continue;
    }
  }

  sp.simplified_ = !exhausted;
  return sp;
}

std::int64_t schreier_rank(std::int64_t ambient_rank, std::int64_t index) {
  if (ambient_rank < 1 || index < 1)
    throw InputError("schreier_rank needs rank >= 1 and index >= 1");
  return (ambient_rank - 1) * index + 1;
}

CosetTable compose_tables(const CosetTable& outer,
                          const SubgroupPresentation& outer_sp,
                          const CosetTable& inner) {
  if (inner.n_gens() != outer_sp.n_generators())
    throw InputError("inner table is not over the subgroup's generators");
  int ng = outer.n_gens();
  std::vector<Word> reps = schreier_transversal(outer);
  std::int64_t total =
      static_cast<std::int64_t>(outer.n_cosets()) * inner.n_cosets();

  // Pair (outer coset, inner coset) -> id in breadth-first order from (1,1).
  auto pack = [&](int oc, int ic) {
    return static_cast<std::size_t>(oc - 1) * inner.n_cosets() + (ic - 1);
  };
  auto step = [&](int oc, int ic, Letter l) {
    int oc2 = outer.act(oc, l);
    Word b = reps[oc - 1] * Word({l}) * reps[oc2 - 1].inverse();
    int ic2 = inner.trace(ic, outer_sp.rewrite(b));
    return std::pair<int, int>(oc2, ic2);
  };

  std::vector<int> id(total, 0);
  std::vector<std::pair<int, int>> order;
  order.reserve(total);
  id[pack(1, 1)] = 1;
  order.push_back({1, 1});
  for (std::size_t head = 0; head < order.size(); ++head) {
    auto [oc, ic] = order[head];
    for (int g = 0; g < ng; ++g)
      for (int sign : {+1, -1}) {
        auto [oc2, ic2] = step(oc, ic, make_letter(g, sign));
        if (id[pack(oc2, ic2)] == 0) {
          id[pack(oc2, ic2)] = static_cast<int>(order.size()) + 1;
          order.push_back({oc2, ic2});
        }
      }
  }
  if (order.size() != static_cast<std::size_t>(total))
    throw std::logic_error("composed action is not transitive on pairs");

  std::vector<std::int32_t> entries(static_cast<std::size_t>(total) * 2 * ng);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [oc, ic] = order[i];
    for (int g = 0; g < ng; ++g)
      for (int sign : {+1, -1}) {
        auto [oc2, ic2] = step(oc, ic, make_letter(g, sign));
        entries[i * 2 * ng + 2 * g + (sign < 0 ? 1 : 0)] = id[pack(oc2, ic2)];
      }
  }
  return CosetTable(static_cast<int>(total), ng, std::move(entries));
}

}  // namespace grouplab
