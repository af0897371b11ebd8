#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace grouplab {

/// Input that violates a documented precondition (bad alphabet, foreign
/// letters, malformed files).  Distinct from resource exhaustion, which is
/// reported through result types, never thrown.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A letter is a signed generator index: +(i+1) denotes generator i,
/// -(i+1) its inverse.  Zero is not a letter.
using Letter = std::int32_t;

constexpr Letter inverse_letter(Letter l) { return static_cast<Letter>(-l); }
constexpr int gen_of(Letter l) { return (l > 0 ? l : -l) - 1; }
constexpr int sign_of(Letter l) { return l > 0 ? 1 : -1; }
constexpr Letter make_letter(int gen, int sign) {
  return sign > 0 ? static_cast<Letter>(gen + 1)
                  : static_cast<Letter>(-(gen + 1));
}

/// Ordered list of generator names.  Names are unique identifiers of the
/// form [A-Za-z_][A-Za-z0-9_']*.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int gen) const { return names_.at(gen); }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of a generator name, -1 if absent.
  int index_of(std::string_view name) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// A freely reduced word.  Every constructor reduces, so no inverse pair
/// xx^-1 ever survives inside a Word.
class Word {
 public:
  Word() = default;
  /// Reduces the raw letter sequence with a single stack pass.
  explicit Word(std::vector<Letter> raw);

  const std::vector<Letter>& letters() const { return ls_; }
  std::size_t length() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }
  Letter at(std::size_t i) const { return ls_.at(i); }

  Word inverse() const;
  /// Concatenation; only the seam needs re-reduction.
  Word operator*(const Word& rhs) const;
  Word pow(std::int64_t e) const;

  bool operator==(const Word&) const = default;
  bool operator<(const Word& rhs) const { return ls_ < rhs.ls_; }

 private:
  struct AlreadyReduced {};
  Word(AlreadyReduced, std::vector<Letter> ls) : ls_(std::move(ls)) {}

  std::vector<Letter> ls_;
};

/// Single-pass stack reduction of a raw letter sequence.
Word free_reduce(const std::vector<Letter>& raw);

/// [u, v] = u v u^-1 v^-1, reduced.
Word commutator(const Word& u, const Word& v);

/// Removes matching ends w = a u a^-1 -> u until none remain.
Word cyclically_reduce(const Word& w);

/// Throws InputError if the word uses letters outside the alphabet.
void check_word(const Alphabet& a, const Word& w);

/// Exponent sum of each generator in w (not reduced modulo anything).
std::vector<std::int64_t> exponent_sums(const Alphabet& a, const Word& w);

/// Renders a word as name chains with collapsed powers, e.g. "x*y^-2".
/// The empty word prints as "1".
std::string print_word(const Alphabet& a, const Word& w);

}  // namespace grouplab
