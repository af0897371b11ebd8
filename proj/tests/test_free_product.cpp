#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "grouplab/free_product.hpp"
#include "grouplab/presentation.hpp"
#include "oracles.hpp"

using namespace grouplab;

namespace {

const FreeProductOfCyclics& A() {
  static FreeProductOfCyclics a({2, 4});
  return a;
}

Word w(const std::string& text) {
  static Alphabet alpha({"x", "y"});
  return parse_word(alpha, text);
}

// All freely reduced words over x^±1, y^±1 of length <= max_len.
std::vector<Word> reduced_words_up_to(int max_len) {
  std::vector<Word> all{Word()};
  std::vector<Word> frontier{Word()};
  for (int l = 0; l < max_len; ++l) {
    std::vector<Word> next;
    for (const Word& u : frontier)
      for (int g = 0; g < 2; ++g)
        for (int sign : {+1, -1}) {
          Word v = u * Word({make_letter(g, sign)});
          if (v.length() == u.length() + 1) next.push_back(v);
        }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

}  // namespace

TEST_CASE("factor relations") {
  CHECK(A().is_trivial(w("x^2")));
  CHECK(A().is_trivial(w("y^4")));
  CHECK_FALSE(A().is_trivial(w("y^2")));
  CHECK_FALSE(A().is_trivial(w("x*y^2")));
}

TEST_CASE("inverses normalize to positive exponents") {
  auto nx = A().normal_form(w("x^-1"));
  REQUIRE(nx.size() == 1);
  CHECK(nx.syllables()[0].factor == 0);
  CHECK(nx.syllables()[0].exp == 1);
  auto ny = A().normal_form(w("y^-1"));
  REQUIRE(ny.size() == 1);
  CHECK(ny.syllables()[0].factor == 1);
  CHECK(ny.syllables()[0].exp == 3);
}

TEST_CASE("commutator normal form has four syllables") {
  auto nf = A().normal_form(commutator(w("x"), w("y")));
  REQUIRE(nf.size() == 4);
  CHECK(nf == A().normal_form(w("x*y*x*y^3")));
}

TEST_CASE("fourth power of xy equals the commutator product") {
  Word lhs = w("(x*y)^4");
  Word rhs = commutator(w("x"), w("y")) *
             commutator(w("x"), w("y^2")).inverse() *
             commutator(w("x"), w("y^3"));
  auto nl = A().normal_form(lhs);
  auto nr = A().normal_form(rhs);
  CHECK(nl == nr);
  REQUIRE(nl.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(nl.syllables()[i].factor == static_cast<int>(i % 2));
    CHECK(nl.syllables()[i].exp == 1);
  }
}

TEST_CASE("normal form is a homomorphism") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> len(0, 20);
  for (int trial = 0; trial < 300; ++trial) {
    Word u = oracle::random_word(rng, 2, len(rng));
    Word v = oracle::random_word(rng, 2, len(rng));
    Word glued = A().to_word(A().normal_form(u)) *
                 A().to_word(A().normal_form(v));
    CHECK(A().normal_form(u * v) == A().normal_form(glued));
  }
}

TEST_CASE("to_word round-trips through the normal form") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> len(0, 24);
  for (int trial = 0; trial < 300; ++trial) {
    Word u = oracle::random_word(rng, 2, len(rng));
    auto nf = A().normal_form(u);
    CHECK(A().normal_form(A().to_word(nf)) == nf);
  }
}

TEST_CASE("triviality matches string rewriting on all short words") {
  for (const Word& u : reduced_words_up_to(7))
    CHECK(A().is_trivial(u) == oracle::trivial_in_z2_z4(u));
}

TEST_CASE("triviality matches normal-closure search on short words") {
  std::vector<Word> relators{w("x^2"), w("y^4")};
  for (const Word& u : reduced_words_up_to(4)) {
    bool in_closure =
        oracle::normal_closure_contains(relators, u, u.length() + 4);
    CHECK(A().is_trivial(u) == in_closure);
  }
}

TEST_CASE("syllable words print readably") {
  Alphabet alpha({"x", "y"});
  CHECK(A().print(alpha, A().normal_form(w("x*y^-1"))) == "x*y^3");
  CHECK(A().print(alpha, A().normal_form(w("x^2"))) == "1");
}

TEST_CASE("factor orders below two are rejected") {
  CHECK_THROWS_AS(FreeProductOfCyclics({2, 1}), InputError);
  CHECK_THROWS_AS(FreeProductOfCyclics({0}), InputError);
}
