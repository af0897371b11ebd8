#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grouplab/presentation.hpp"
#include "grouplab/words.hpp"

namespace grouplab {

struct EnumLimits {
  std::int64_t max_cosets = 100000;
  double max_seconds = 120.0;
};

enum class EnumStatus { closed, out_of_cosets, out_of_time };

struct EnumStats {
  std::int64_t n_defined = 0;       // cosets ever defined
  std::int64_t n_coincidences = 0;  // merges processed
};

/// A closed coset table: the right action of every signed generator on
/// the coset space, with coset 1 the subgroup itself.  Rows are total and
/// the action is a permutation (g then g^-1 is the identity).
class CosetTable {
 public:
  CosetTable() = default;
  /// entries[(c-1)*2*n_gens + col] with col = 2*gen for g, 2*gen+1 for
  /// g^-1; cosets are 1-based and every entry is in [1, n].
  CosetTable(int n_cosets, int n_gens, std::vector<std::int32_t> entries);

  int n_cosets() const { return n_; }
  int n_gens() const { return n_gens_; }

  int act(int coset, Letter l) const {
    int col = 2 * gen_of(l) + (l < 0 ? 1 : 0);
    return entries_[static_cast<std::size_t>(coset - 1) * 2 * n_gens_ + col];
  }

  /// Traces w from start through the table.
  int trace(int start, const Word& w) const {
    int c = start;
    for (Letter l : w.letters()) c = act(c, l);
    return c;
  }

  bool operator==(const CosetTable&) const = default;

 private:
  int n_ = 0;
  int n_gens_ = 0;
  std::vector<std::int32_t> entries_;
};

struct EnumResult {
  EnumStatus status = EnumStatus::closed;
  std::optional<CosetTable> table;  // present iff status == closed
  EnumStats stats;
};

/// Coset enumeration by relator tracing with immediate coincidence
/// handling.  Deterministic: cosets are numbered in definition order and
/// the returned table is compacted to live cosets in that order.
/// Resource exhaustion is reported in the result, never thrown.
EnumResult enumerate_cosets(const Presentation& p,
                            const std::vector<Word>& subgroup_gens,
                            const EnumLimits& limits = {});

/// Index of the subgroup if the enumeration closes.
std::optional<std::int64_t> subgroup_index(const Presentation& p,
                                           const std::vector<Word>& gens,
                                           const EnumLimits& limits = {});

/// Coset table of the kernel of the map sending generator i to images[i]
/// in (Z/p)^d.  Cosets are the p^d vectors, coset 1 the zero vector, and
/// vector v has id 1 + sum v_j p^j.  Throws InputError if some relator
/// has a nonzero image or if p^d exceeds limits.max_cosets.
CosetTable table_from_homomorphism(const Presentation& p, int prime, int d,
                                   const std::vector<std::vector<int>>& images,
                                   const EnumLimits& limits = {});

/// Schreier transversal from breadth-first search over the table with the
/// signed-generator order g0, g0^-1, g1, g1^-1, ...; the representative
/// of coset 1 is the empty word and the set is prefix-closed.
std::vector<Word> schreier_transversal(const CosetTable& t);

/// Permutation action of w on cosets: out[c-1] = trace(c, w).
std::vector<int> coset_action(const CosetTable& t, const Word& w);

/// Post-enumeration validation: total rows, inverse consistency, relators
/// trace trivially everywhere, subgroup generators fix coset 1.  Throws
/// std::logic_error on violation.
void validate_table(const Presentation& p, const std::vector<Word>& gens,
                    const CosetTable& t);

}  // namespace grouplab
