#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grouplab/coset_table.hpp"
#include "grouplab/presentation.hpp"

namespace grouplab {

/// Images of the generators in the elementary abelian layer
/// G / [G,G]G^p, which is F_p^n modulo the row space of the relator
/// exponent matrix.
struct LayerMap {
  int d = 0;                             // layer rank
  std::vector<std::vector<int>> images;  // one vector in F_p^d per generator
};

LayerMap layer_map(const Presentation& p, std::int64_t prime);

/// Generator count minus the F_p-rank of the relator exponent matrix.
std::int64_t mod_p_layer_rank(const Presentation& p, std::int64_t prime);

/// Free product of cyclic p-groups and a free group: torsion[a] copies
/// of Z_{p^a} plus free_rank free generators.  The iterated layer
/// kernels of such groups stay in this class, so their ladder can be
/// followed by exact counting when the index outgrows any table.
struct CyclicFreeShape {
  std::map<std::int64_t, std::int64_t> torsion;
  std::int64_t free_rank = 0;
  bool operator==(const CyclicFreeShape&) const = default;
};

/// Recognizes presentations whose relators are powers g^(p^a), a >= 1,
/// of distinct single generators; remaining generators are free.
std::optional<CyclicFreeShape> match_shape(const Presentation& p,
                                           std::int64_t prime);

/// Mod-p layer rank k + rho of a shape; nullopt on int64 overflow.
std::optional<std::int64_t> shape_rank(const CyclicFreeShape& s);

/// Replaces s by the shape of its layer kernel: each Z_{p^a} splits into
/// p^(d-1) copies of Z_{p^(a-1)} and the free rank follows the Euler
/// characteristic.  Returns false when a counter overflows int64.
bool kurosh_step(CyclicFreeShape& s, std::int64_t prime);

struct PSeriesLevel {
  int i = 0;
  std::int64_t e = 0;             // log_p of the quotient order at level i
  std::optional<std::int64_t> d;  // layer rank; may be unknown on the last level
  std::string engine;             // "table" or "structural"
};

struct PSeriesReport {
  std::int64_t p = 2;
  std::vector<PSeriesLevel> levels;
  bool truncated = false;
  std::string reason;
};

/// Orders of the quotient ladder to the requested depth.  Levels whose
/// kernel fits under limits.max_cosets are opened concretely (regular
/// action table, then rewriting); once the index outgrows the limit the
/// ladder continues by exact shape counting if the current presentation
/// is recognized, and truncates otherwise.
PSeriesReport delta_orders(const Presentation& pr, std::int64_t prime,
                           int depth, const EnumLimits& limits = {});

struct CompareResult {
  std::optional<int> differs_at;  // first level with different e
  int common_depth = 0;           // deepest level compared
  std::int64_t e_a = 0, e_b = 0;  // values at differs_at, or final common e
};

/// Levelwise comparison of two ladders with the same prime.
CompareResult compare_invariants(const PSeriesReport& a,
                                 const PSeriesReport& b);

struct MembershipResult {
  enum class Kind { found, trivial, undecided };
  Kind kind = Kind::undecided;
  // found: the smallest v with w outside level v.  trivial: the word is
  // the identity of the group, hence inside every level.  undecided: w
  // confirmed inside level `level`, deeper levels out of reach.
  int level = 0;
};

/// Smallest v such that w falls outside the level-v subgroup, by testing
/// the image of w in each layer and rewriting it into the kernel while
/// the image stays zero.  Free kernels are handled lazily, so the level
/// index never materializes; presentations with relators need their
/// kernel tables to fit under limits.max_cosets.
MembershipResult membership_level(const Presentation& pr, std::int64_t prime,
                                  const Word& w, const EnumLimits& limits = {},
                                  int max_level = 64);

}  // namespace grouplab
