#pragma once

#include <cstdint>
#include <vector>

#include "grouplab/coset_table.hpp"
#include "grouplab/presentation.hpp"

namespace grouplab {

/// A Schreier generator: a table edge (coset, generator) whose word
/// rep(coset) * g * rep(coset * g)^-1 does not reduce to the identity.
struct SchreierGen {
  int coset = 0;  // 1-based
  int gen = 0;    // ambient generator index
  Word ambient;   // the word above, freely reduced
};

/// Presentation of a finite-index subgroup extracted from a closed coset
/// table, together with the rewriting data linking subgroup generators to
/// ambient words.  Obtained from subgroup_presentation (raw form: one
/// relator per (transversal element, ambient relator) pair, empty ones
/// included) and tietze_simplify (eliminations tracked, so rewriting
/// still works on the simplified form).
class SubgroupPresentation {
 public:
  const Presentation& ambient() const { return ambient_; }
  const CosetTable& table() const { return table_; }

  int n_generators() const { return static_cast<int>(live_.size()); }
  int n_relators() const { return static_cast<int>(relators_.size()); }
  /// True once tietze_simplify reached a fixpoint within its budget.
  bool simplified() const { return simplified_; }

  /// The subgroup's presentation over its live generators.  Generator i
  /// keeps the name of its raw Schreier slot, so names have gaps after
  /// simplification.  Relators that reduce to the empty word are dropped
  /// here (the raw count is preserved by n_relators).
  Presentation presentation() const;

  const SchreierGen& generator(int i) const { return slots_.at(live_.at(i)); }
  const Word& generator_ambient(int i) const {
    return slots_.at(live_.at(i)).ambient;
  }

  /// Rewrites an ambient word fixing coset 1 as a word over the live
  /// generators.  Throws InputError if the word moves coset 1.
  Word rewrite(const Word& ambient_word) const;

  /// Expands a word over the live generators into the ambient alphabet.
  Word to_ambient(const Word& subgroup_word) const;

 private:
  friend SubgroupPresentation subgroup_presentation(const Presentation&,
                                                    const CosetTable&);
  friend SubgroupPresentation tietze_simplify(const SubgroupPresentation&,
                                              std::int64_t);
  SubgroupPresentation() = default;

  Word trace_slots(int start, const Word& ambient_word) const;
  Word substitute(const Word& raw_word) const;
  Word raw_to_live(const Word& raw_word) const;

  Presentation ambient_;
  CosetTable table_;
  std::vector<SchreierGen> slots_;       // all raw slots
  std::vector<std::int32_t> edge_slot_;  // (coset-1)*n_gens + gen -> raw slot or -1
  std::vector<Word> relators_;           // over raw slot letters, live only
  std::vector<int> live_;                // raw ids, ascending
  std::vector<Word> defs_;               // raw id -> definition, empty Word + flag
  std::vector<bool> eliminated_;         // raw id eliminated?
  bool simplified_ = false;
};

/// Reidemeister-Schreier rewriting of a closed coset table: Schreier
/// generators with trivial words dropped eagerly, relators t r t^-1
/// rewritten for every transversal element t and ambient relator r
/// (empty rewrites kept, so the raw relator count is |relators| * index).
SubgroupPresentation subgroup_presentation(const Presentation& p,
                                           const CosetTable& t);

/// Conservative simplification: drops empty relators, drops relators
/// duplicating another up to rotation and inversion, eliminates
/// generators defined trivial by length-1 relators, and eliminates
/// generators occurring exactly once in exactly one relator.  Stops at a
/// fixpoint or after `budget` rule applications; the result reports
/// which through simplified().
SubgroupPresentation tietze_simplify(const SubgroupPresentation& sp,
                                     std::int64_t budget = 100000);

/// (r - 1) * i + 1.
std::int64_t schreier_rank(std::int64_t ambient_rank, std::int64_t index);

/// Table of a subgroup C <= B <= A over A's generators, from the table of
/// B in A (outer), the rewriting data of B (outer_sp), and the table of C
/// in B over B's live generators (inner).  Cosets are pairs, numbered in
/// breadth-first order from (1, 1).
CosetTable compose_tables(const CosetTable& outer,
                          const SubgroupPresentation& outer_sp,
                          const CosetTable& inner);

}  // namespace grouplab
