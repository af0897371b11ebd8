#include "grouplab/presentation.hpp"

#include <cctype>
#include <cstdlib>

namespace grouplab {

Presentation::Presentation(Alphabet alphabet, std::vector<Word> relators)
    : alphabet_(std::move(alphabet)) {
  relators_.reserve(relators.size());
  for (const Word& r : relators) {
    check_word(alphabet_, r);
    Word c = cyclically_reduce(r);
    if (c.empty())
      throw InputError("relator reduces to the empty word");
    relators_.push_back(std::move(c));
  }
}

namespace {

struct Token {
  enum Kind { Name, Int, Star, Caret, LParen, RParen, Comma, Colon, End };
  Kind kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  Lexer(const std::string& text, int line, int col_offset = 0)
      : s_(text), line_(line), col_offset_(col_offset) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = static_cast<int>(pos_) + col_offset_ + 1;
    if (pos_ >= s_.size() || s_[pos_] == '#') {
      t.kind = Token::End;
      return t;
    }
    char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_ + 1;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) ||
              s_[j] == '_' || s_[j] == '\''))
        ++j;
      t.kind = Token::Name;
      t.text = s_.substr(pos_, j - pos_);
      pos_ = j;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < s_.size() &&
         std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      std::size_t j = pos_ + 1;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j])))
        ++j;
      t.kind = Token::Int;
      t.text = s_.substr(pos_, j - pos_);
      t.value = std::strtoll(t.text.c_str(), nullptr, 10);
      pos_ = j;
      return t;
    }
    switch (c) {
      case '*': t.kind = Token::Star; break;
      case '^': t.kind = Token::Caret; break;
      case '(': t.kind = Token::LParen; break;
      case ')': t.kind = Token::RParen; break;
      case ',': t.kind = Token::Comma; break;
      case ':': t.kind = Token::Colon; break;
      default:
        throw ParseError(line_, t.col,
                         std::string("unexpected character '") + c + "'");
    }
    ++pos_;
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
  int col_offset_;
};

class WordParser {
 public:
  WordParser(const Alphabet& a, Lexer& lex) : a_(a), lex_(lex) { advance(); }

  // word := term ('*' term)*
  std::vector<Letter> parse_word() {
    std::vector<Letter> out = parse_term();
    while (cur_.kind == Token::Star) {
      advance();
      auto t = parse_term();
      out.insert(out.end(), t.begin(), t.end());
    }
    return out;
  }

  // list := word (',' word)*   (non-empty)
  std::vector<std::pair<Token, Word>> parse_list() {
    std::vector<std::pair<Token, Word>> out;
    while (true) {
      Token start = cur_;
      out.emplace_back(start, free_reduce(parse_word()));
      if (cur_.kind == Token::End) break;
      if (cur_.kind != Token::Comma)
        throw ParseError(cur_.line, cur_.col, "expected ',' between words");
      advance();
      if (cur_.kind == Token::End)
        throw ParseError(cur_.line, cur_.col, "trailing comma");
    }
    return out;
  }

  const Token& current() const { return cur_; }

 private:
  // term := atom ('^' int)*
  std::vector<Letter> parse_term() {
    std::vector<Letter> base = parse_atom();
    while (cur_.kind == Token::Caret) {
      Token caret = cur_;
      advance();
      if (cur_.kind != Token::Int)
        throw ParseError(caret.line, caret.col, "expected integer exponent");
      std::int64_t e = cur_.value;
      advance();
      base = repeat(base, e);
    }
    return base;
  }

  std::vector<Letter> parse_atom() {
    if (cur_.kind == Token::Name) {
      int g = a_.index_of(cur_.text);
      if (g < 0)
        throw ParseError(cur_.line, cur_.col,
                         "unknown generator '" + cur_.text + "'");
      advance();
      return {make_letter(g, +1)};
    }
    if (cur_.kind == Token::LParen) {
      advance();
      auto w = parse_word();
      if (cur_.kind != Token::RParen)
        throw ParseError(cur_.line, cur_.col, "expected ')'");
      advance();
      return w;
    }
    throw ParseError(cur_.line, cur_.col, "expected generator name or '('");
  }

  static std::vector<Letter> repeat(const std::vector<Letter>& base,
                                    std::int64_t e) {
    std::vector<Letter> out;
    if (e >= 0) {
      for (std::int64_t i = 0; i < e; ++i)
        out.insert(out.end(), base.begin(), base.end());
    } else {
      std::vector<Letter> inv;
      for (auto it = base.rbegin(); it != base.rend(); ++it)
        inv.push_back(inverse_letter(*it));
      for (std::int64_t i = 0; i < -e; ++i)
        out.insert(out.end(), inv.begin(), inv.end());
    }
    return out;
  }

  void advance() { cur_ = lex_.next(); }

  const Alphabet& a_;
  Lexer& lex_;
  Token cur_;
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  lines.push_back(cur);
  return lines;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Matches "key:" at the start of a line; returns text after the colon and
// the column offset where that text begins.
bool match_key(const std::string& line, const std::string& key,
               std::string* rest, int* offset) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
    ++i;
  if (line.compare(i, key.size(), key) != 0) return false;
  i += key.size();
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
    ++i;
  if (i >= line.size() || line[i] != ':') return false;
  *rest = line.substr(i + 1);
  *offset = static_cast<int>(i) + 1;
  return true;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  auto lines = split_lines(text);
  bool saw_gens = false, saw_rels = false;
  Alphabet alphabet;
  std::vector<Word> relators;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    int lineno = static_cast<int>(li) + 1;
    if (blank_or_comment(line)) continue;
    std::string rest;
    int off = 0;
    if (match_key(line, "gens", &rest, &off)) {
      if (saw_gens) throw ParseError(lineno, 1, "duplicate 'gens:' line");
      saw_gens = true;
      std::vector<std::string> names;
      Lexer lex(rest, lineno, off);
      Token t = lex.next();
      while (t.kind != Token::End) {
        if (t.kind != Token::Name)
          throw ParseError(t.line, t.col, "expected generator name");
        names.push_back(t.text);
        t = lex.next();
        if (t.kind == Token::Comma) {
          t = lex.next();
          if (t.kind == Token::End)
            throw ParseError(t.line, t.col, "trailing comma in 'gens:'");
        } else if (t.kind != Token::End) {
          throw ParseError(t.line, t.col, "expected ',' between generators");
        }
      }
      try {
        alphabet = Alphabet(std::move(names));
      } catch (const InputError& e) {
        throw ParseError(lineno, off + 1, e.what());
      }
    } else if (match_key(line, "rels", &rest, &off)) {
      if (!saw_gens)
        throw ParseError(lineno, 1, "'rels:' before 'gens:'");
      if (saw_rels) throw ParseError(lineno, 1, "duplicate 'rels:' line");
      saw_rels = true;
      Lexer probe(rest, lineno, off);
      if (probe.next().kind == Token::End) continue;  // empty relator list
      Lexer lex(rest, lineno, off);
      WordParser wp(alphabet, lex);
      for (auto& [start, w] : wp.parse_list()) {
        if (cyclically_reduce(w).empty())
          throw ParseError(start.line, start.col,
                           "relator reduces to the empty word");
        relators.push_back(std::move(w));
      }
    } else {
      throw ParseError(lineno, 1, "expected 'gens:' or 'rels:' line");
    }
  }
  if (!saw_gens) throw ParseError(1, 1, "missing 'gens:' line");
  return Presentation(alphabet, relators);
}

std::string print_presentation(const Presentation& p) {
  std::string out = "gens: ";
  for (int i = 0; i < p.alphabet().size(); ++i) {
    if (i) out += ",";
    out += p.alphabet().name(i);
  }
  out += "\nrels: ";
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (i) out += ", ";
    out += print_word(p.alphabet(), p.relators()[i]);
  }
  out += "\n";
  return out;
}

Word parse_word(const Alphabet& a, const std::string& text) {
  Lexer lex(text, 1);
  Lexer probe(text, 1);
  if (probe.next().kind == Token::End) return Word();
  WordParser wp(a, lex);
  Word w = free_reduce(wp.parse_word());
  if (wp.current().kind != Token::End)
    throw ParseError(wp.current().line, wp.current().col,
                     "unexpected trailing input");
  return w;
}

std::vector<Word> parse_word_list(const Alphabet& a, const std::string& text) {
  std::vector<Word> words;
  auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (blank_or_comment(lines[li])) continue;
    Lexer lex(lines[li], static_cast<int>(li) + 1);
    WordParser wp(a, lex);
    words.push_back(free_reduce(wp.parse_word()));
    if (wp.current().kind != Token::End)
      throw ParseError(wp.current().line, wp.current().col,
                       "unexpected trailing input");
  }
  return words;
}

}  // namespace grouplab
