#pragma once

#include <string>
#include <vector>

#include "grouplab/words.hpp"

namespace grouplab {

/// Syntax error in a presentation, subgroup, or schedule file.
/// Positions are 1-based.
struct ParseError : InputError {
  ParseError(int line, int col, const std::string& msg)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// A finite presentation.  Relators are stored freely and cyclically
/// reduced; an empty relator is rejected on construction.
class Presentation {
 public:
  Presentation() = default;
  Presentation(Alphabet alphabet, std::vector<Word> relators);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& relators() const { return relators_; }
  int n_generators() const { return alphabet_.size(); }

  bool operator==(const Presentation&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
};

/// Parses the two-line format
///   gens: x,y
///   rels: x^2, y^4, (x*y)^8
/// Whitespace is insignificant; '#' starts a comment; `rels:` may be
/// empty.  The word grammar is
///   word ::= term ('*' term)*
///   term ::= name | '(' word ')' | term '^' integer
/// Throws ParseError with line/column on malformed input, including any
/// relator that freely reduces to the empty word.
Presentation parse_presentation(const std::string& text);

/// Canonical printer; parse(print_presentation(p)) == p.
std::string print_presentation(const Presentation& p);

/// Parses one word in the grammar above over the given alphabet.
Word parse_word(const Alphabet& a, const std::string& text);

/// Parses a subgroup file: one word per line, '#' comments, blank lines
/// ignored.
std::vector<Word> parse_word_list(const Alphabet& a, const std::string& text);

}  // namespace grouplab
