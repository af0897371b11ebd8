#include "grouplab/free_product.hpp"

namespace grouplab {

FreeProductOfCyclics::FreeProductOfCyclics(std::vector<std::int64_t> orders)
    : orders_(std::move(orders)) {
  for (std::int64_t m : orders_)
    if (m < 2) throw InputError("cyclic factor order must be at least 2");
}

SyllableWord FreeProductOfCyclics::normal_form(const Word& w) const {
  SyllableWord out;
  auto& ss = out.ss_;
  for (Letter l : w.letters()) {
    int f = gen_of(l);
    if (f < 0 || f >= n_factors())
      throw InputError("letter outside the free product's factors");
    std::int64_t delta = sign_of(l);
    if (!ss.empty() && ss.back().factor == f) {
      ss.back().exp = (ss.back().exp + delta) % orders_[f];
      if (ss.back().exp < 0) ss.back().exp += orders_[f];
      if (ss.back().exp == 0) ss.pop_back();
    } else {
      std::int64_t e = delta % orders_[f];
      if (e < 0) e += orders_[f];
      if (e != 0) ss.push_back({f, e});
    }
  }
  return out;
}

Word FreeProductOfCyclics::to_word(const SyllableWord& s) const {
  std::vector<Letter> ls;
  for (const auto& syl : s.syllables())
    for (std::int64_t i = 0; i < syl.exp; ++i)
      ls.push_back(make_letter(syl.factor, +1));
  return Word(std::move(ls));
}

std::string FreeProductOfCyclics::print(const Alphabet& a,
                                        const SyllableWord& s) const {
  if (s.empty()) return "1";
  std::string out;
  for (const auto& syl : s.syllables()) {
    if (!out.empty()) out += '*';
    out += a.name(syl.factor);
    if (syl.exp != 1) out += "^" + std::to_string(syl.exp);
  }
  return out;
}

}  // namespace grouplab
