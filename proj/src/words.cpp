#include "grouplab/words.hpp"

#include <cctype>
#include <cstdlib>

namespace grouplab {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s.substr(1)) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '\''))
      return false;
  }
  return true;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_name(names_[i]))
      throw InputError("invalid generator name: '" + names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j])
        throw InputError("duplicate generator name: '" + names_[i] + "'");
  }
}

int Alphabet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

Word::Word(std::vector<Letter> raw) {
  ls_.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw InputError("zero letter in word");
    if (!ls_.empty() && ls_.back() == inverse_letter(l))
      ls_.pop_back();
    else
      ls_.push_back(l);
  }
}

Word free_reduce(const std::vector<Letter>& raw) { return Word(raw); }

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(ls_.size());
  for (auto it = ls_.rbegin(); it != ls_.rend(); ++it)
    out.push_back(inverse_letter(*it));
  return Word(AlreadyReduced{}, std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = ls_;
  for (Letter l : rhs.ls_) {
    if (!out.empty() && out.back() == inverse_letter(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(AlreadyReduced{}, std::move(out));
}

Word Word::pow(std::int64_t e) const {
  Word base = e < 0 ? inverse() : *this;
  std::int64_t n = e < 0 ? -e : e;
  Word acc;
  for (std::int64_t i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

Word commutator(const Word& u, const Word& v) {
  return u * v * u.inverse() * v.inverse();
}

Word cyclically_reduce(const Word& w) {
  std::vector<Letter> ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == inverse_letter(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(ls.begin() + lo, ls.begin() + hi));
}

void check_word(const Alphabet& a, const Word& w) {
  for (Letter l : w.letters()) {
    int g = gen_of(l);
    if (g < 0 || g >= a.size())
      throw InputError("word uses generator index " + std::to_string(g) +
                       " outside alphabet of size " + std::to_string(a.size()));
  }
}

std::vector<std::int64_t> exponent_sums(const Alphabet& a, const Word& w) {
  check_word(a, w);
  std::vector<std::int64_t> sums(a.size(), 0);
  for (Letter l : w.letters()) sums[gen_of(l)] += sign_of(l);
  return sums;
}

std::string print_word(const Alphabet& a, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  std::size_t i = 0;
  while (i < ls.size()) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    std::int64_t run = static_cast<std::int64_t>(j - i) * sign_of(ls[i]);
    if (!out.empty()) out += '*';
    out += a.name(gen_of(ls[i]));
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

}  // namespace grouplab
