#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grouplab/words.hpp"

namespace grouplab {

/// A word of a free product of finite cyclic groups, in syllable normal
/// form: factors strictly alternate and every exponent e satisfies
/// 0 < e < order of its factor.  Equality is structural.
class SyllableWord {
 public:
  struct Syllable {
    int factor;           // index into the orders list
    std::int64_t exp;     // 0 < exp < orders[factor]
    bool operator==(const Syllable&) const = default;
  };

  SyllableWord() = default;

  const std::vector<Syllable>& syllables() const { return ss_; }
  bool empty() const { return ss_.empty(); }
  std::size_t size() const { return ss_.size(); }

  bool operator==(const SyllableWord&) const = default;

 private:
  friend class FreeProductOfCyclics;
  std::vector<Syllable> ss_;
};

/// Free product Z_{m_0} * Z_{m_1} * ... with one generator per factor.
/// Normalization folds exponents modulo the factor orders and merges
/// adjacent syllables of the same factor in one linear pass.
class FreeProductOfCyclics {
 public:
  /// orders[i] >= 2 is the order of the i-th cyclic factor.
  explicit FreeProductOfCyclics(std::vector<std::int64_t> orders);

  int n_factors() const { return static_cast<int>(orders_.size()); }
  std::int64_t order(int factor) const { return orders_.at(factor); }

  /// Normal form of a letter word over the factor generators.
  /// Generator i of the alphabet is the generator of factor i.
  SyllableWord normal_form(const Word& w) const;

  /// Expands a normal form back to a reduced letter word (positive
  /// exponents only, as stored).
  Word to_word(const SyllableWord& s) const;

  /// True iff w is trivial in the free product.
  bool is_trivial(const Word& w) const { return normal_form(w).empty(); }

  std::string print(const Alphabet& a, const SyllableWord& s) const;

 private:
  std::vector<std::int64_t> orders_;
};

}  // namespace grouplab
