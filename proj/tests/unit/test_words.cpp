#include <doctest.h>

#include <algorithm>
#include <map>

#include "kazhdan/words.hpp"
#include "oracles.hpp"

using namespace kazhdan;

namespace {

Word from_raw(const oracle::RawWord& w) {
  Word out;
  for (int a : w) out.push_back(Letter::from_raw(a));
  return out;
}

oracle::RawWord to_raw(const Word& w) {
  oracle::RawWord out;
  for (Letter l : w) out.push_back(l.raw());
  return out;
}

}  // namespace

TEST_CASE("letters print and parse") {
  CHECK(to_string(Letter::positive(3)) == "a3");
  CHECK(to_string(Letter::negative(12)) == "A12");
  CHECK(parse_letter("A7") == Letter::negative(7));
  CHECK(to_string(parse_word("a1 A2  a3")) == "a1 A2 a3");
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_letter("b1"), WordError);
  CHECK_THROWS_AS(parse_letter("a0"), WordError);
  CHECK_THROWS_AS(parse_letter("a"), WordError);
}

TEST_CASE("canonical letter order") {
  std::vector<Letter> ls{Letter::negative(2), Letter::positive(2), Letter::negative(1),
                         Letter::positive(1)};
  std::sort(ls.begin(), ls.end());
  CHECK(to_string(ls) == "a1 A1 a2 A2");
  CHECK(Letter::positive(2).symbol_index(3) == 1);
  CHECK(Letter::negative(2).symbol_index(3) == 4);
  for (int i = 0; i < 6; ++i) CHECK(Letter::from_symbol_index(i, 3).symbol_index(3) == i);
}

TEST_CASE("free reduction agrees with a stack oracle") {
  for (int len = 0; len <= 6; ++len) {
    for (const auto& raw : oracle::all_strings(2, len)) {
      const Word w = from_raw(raw);
      const Word r = free_reduce(w);
      CHECK(to_raw(r) == oracle::reduce(raw));
      CHECK(free_reduce(r) == r);
      CHECK(free_reduce(concat(w, inverse(w))).empty());
      CHECK(is_reduced(w) == oracle::reduced(raw));
      CHECK(is_cyclically_reduced(w) == oracle::cyclically_reduced(raw));
    }
  }
}

TEST_CASE("cyclic reduction edge cases") {
  CHECK(is_cyclically_reduced(parse_word("")));
  CHECK(is_cyclically_reduced(parse_word("a1")));
  CHECK_FALSE(is_cyclically_reduced(parse_word("a1 a2 A1")));
  CHECK(is_reduced(parse_word("a1 a2 A1")));
}

TEST_CASE("enumeration matches brute force") {
  for (int m = 1; m <= 2; ++m) {
    for (int len = 1; len <= 6; ++len) {
      std::size_t all = 0, cyc = 0, boundary = 0;
      for (const auto& raw : oracle::all_strings(m, len)) {
        if (oracle::reduced(raw)) {
          ++all;
          if (raw.front() > 0 && raw.back() > 0) ++boundary;
        }
        if (oracle::cyclically_reduced(raw)) ++cyc;
      }
      CAPTURE(m);
      CAPTURE(len);
      const auto e_all = enumerate_words(m, len, WordConstraint::all_reduced);
      const auto e_cyc = enumerate_words(m, len, WordConstraint::cyclically_reduced);
      const auto e_pos = enumerate_words(m, len, WordConstraint::positive_boundary_reduced);
      CHECK(e_all.size() == all);
      CHECK(e_cyc.size() == cyc);
      CHECK(e_pos.size() == boundary);
      CHECK(count_cyclically_reduced(m, len) == cyc);
      CHECK(std::is_sorted(e_all.begin(), e_all.end(), lex_less));
      CHECK(std::adjacent_find(e_all.begin(), e_all.end()) == e_all.end());
    }
  }
}

TEST_CASE("spec-sized supports") {
  CHECK(enumerate_words(2, 3, WordConstraint::cyclically_reduced).size() == 28);
  CHECK(enumerate_words(2, 2, WordConstraint::positive_boundary_reduced).size() == 4);
  CHECK(enumerate_words(2, 3, WordConstraint::positive_boundary_reduced).size() == 10);
  const auto one = enumerate_words(1, 3, WordConstraint::cyclically_reduced);
  REQUIRE(one.size() == 2);
  CHECK(to_string(one[0]) == "a1 a1 a1");
  CHECK(to_string(one[1]) == "A1 A1 A1");
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_words(3, 10, WordConstraint::all_reduced, 1000), WordError);
}

TEST_CASE("sampler support and balance") {
  Rng rng(11);
  std::map<std::string, int> counts;
  for (int i = 0; i < 4000; ++i) {
    const Word w = sample_cyclically_reduced(1, 3, rng);
    counts[to_string(w)]++;
  }
  REQUIRE(counts.size() == 2);
  CHECK(counts["a1 a1 a1"] > 1800);
  CHECK(counts["A1 A1 A1"] > 1800);

  for (int i = 0; i < 2000; ++i) {
    const Word w = sample_cyclically_reduced(3, 5, rng);
    CHECK(w.size() == 5);
    CHECK(is_cyclically_reduced(w));
  }
}

TEST_CASE("sampler rejects bad input") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_cyclically_reduced(0, 3, rng), WordError);
  CHECK_THROWS_AS(sample_cyclically_reduced(2, 0, rng), WordError);
  CHECK(sample_cyclically_reduced(1, 4, rng).size() == 4);
}

TEST_CASE("same seed, same words") {
  Rng a(99), b(99);
  for (int i = 0; i < 50; ++i) CHECK(sample_cyclically_reduced(4, 7, a) == sample_cyclically_reduced(4, 7, b));
}
