#include <doctest.h>

#include <cmath>

#include "kazhdan/embed.hpp"
#include "oracles.hpp"

using namespace kazhdan;

namespace {

std::size_t table_oracle(int n, int k) {
  std::size_t count = 0;
  for (const auto& w : oracle::all_strings(n, k)) {
    if (oracle::reduced(w) && w.front() > 0 && w.back() > 0) ++count;
  }
  return count;
}

oracle::RawWord raw(const Word& w) {
  oracle::RawWord out;
  for (Letter l : w) out.push_back(l.raw());
  return out;
}

Word random_reduced(int n, int length, Rng& rng) {
  Word w;
  std::uniform_int_distribution<int> gen(1, n);
  std::uniform_int_distribution<int> sign(0, 1);
  while (static_cast<int>(w.size()) < length) {
    const Letter l(gen(rng), sign(rng) ? 1 : -1);
    if (!w.empty() && w.back() == l.inverse()) continue;
    w.push_back(l);
  }
  return w;
}

}  // namespace

TEST_CASE("table sizes") {
  for (int k : {1, 2, 3, 4}) CHECK(static_cast<std::size_t>(build_word_table(2, 3 * k).size()) == table_oracle(2, k));
  CHECK(static_cast<std::size_t>(build_word_table(3, 9).size()) == table_oracle(3, 3));
  CHECK(build_word_table(2, 6).size() == 4);
  CHECK(build_word_table(2, 9).size() == 10);
  CHECK_THROWS_AS(WordTable(2, 10), EmbedError);
  CHECK_THROWS_AS(WordTable(2, 0), EmbedError);
}

TEST_CASE("table order and lookup") {
  const auto t = build_word_table(2, 6);
  CHECK(to_string(t.word(1)) == "a1 a1");
  CHECK(to_string(t.word(2)) == "a1 a2");
  CHECK(to_string(t.word(3)) == "a2 a1");
  CHECK(to_string(t.word(4)) == "a2 a2");
  CHECK(t.index_of(parse_word("a2 a1")) == 3);
  CHECK_FALSE(t.index_of(parse_word("a2 A1")).has_value());
}

TEST_CASE("phi images are cyclically reduced triples of table words") {
  Rng rng(70);
  for (int l : {9, 12}) {
    const auto t = build_word_table(2, l);
    const auto p = sample_triangular(t.size(), 0.45, rng, true, 1000);
    const auto img = phi_map(p, t);
    REQUIRE(img.relators.size() == 1000);
    for (std::size_t i = 0; i < 1000; ++i) {
      const Word& w = img.relators[i];
      CHECK(w.size() == static_cast<std::size_t>(l));
      CHECK(is_cyclically_reduced(w));
      const auto split = t.split_triple(w);
      REQUIRE(split.has_value());
      for (int k = 0; k < 3; ++k) CHECK((*split)[static_cast<std::size_t>(k)] == p.relators[i][static_cast<std::size_t>(k)].generator());
    }
  }
}

TEST_CASE("phi needs a positive presentation that fits the table") {
  const auto t = build_word_table(2, 9);
  Presentation neg{3, {parse_word("a1 A2 a3")}, ""};
  CHECK_THROWS_AS(phi_map(neg, t), EmbedError);
  Presentation big{11, {parse_word("a1 a2 a11")}, ""};
  CHECK_THROWS_AS(phi_map(big, t), EmbedError);
}

TEST_CASE("coset normal form reproduces the word") {
  Rng rng(71);
  std::uniform_int_distribution<int> length(0, 40);
  for (int n : {2, 3}) {
    for (int l : {9, 12}) {
      const auto t = build_word_table(n, l);
      for (int rep = 0; rep < 250; ++rep) {
        const Word w = random_reduced(n, length(rng), rng);
        const auto form = coset_normal_form(w, t);
        CAPTURE(to_string(w));
        CHECK(form.prefix.size() <= 2);
        CHECK(evaluate(form, t) == w);
        oracle::RawWord product = raw(form.prefix);
        for (int f : form.factors) {
          const Word& block = t.word(std::abs(f));
          const oracle::RawWord b = raw(f > 0 ? block : inverse(block));
          product.insert(product.end(), b.begin(), b.end());
        }
        CHECK(oracle::reduce(product) == raw(w));
      }
    }
  }
}

TEST_CASE("coset normal form input checks") {
  const auto t = build_word_table(2, 9);
  CHECK_THROWS_AS(coset_normal_form(parse_word("a1 A1"), t), EmbedError);
  CHECK_THROWS_AS(coset_normal_form(parse_word("a1"), build_word_table(2, 6)), EmbedError);
  CHECK_THROWS_AS(coset_normal_form(parse_word("a3"), t), EmbedError);
  const auto empty = coset_normal_form({}, t);
  CHECK(empty.prefix.empty());
  CHECK(empty.factors.empty());
  const auto form = coset_normal_form(parse_word("a1 a1 a1 A2 A2 A2"), t);
  CHECK(evaluate(form, t) == parse_word("a1 a1 a1 A2 A2 A2"));
}

TEST_CASE("restricted Gromov sampler") {
  Rng rng(72);
  const auto t = build_word_table(2, 9);
  const auto p = sample_gromov_restricted(t, 0.4, 1.0, rng);
  CHECK(p.relators.size() == 34);
  for (const Word& w : p.relators) CHECK(t.split_triple(w).has_value());
  CHECK_THROWS_AS(sample_gromov_restricted(t, 1.2, 1.0, rng), EmbedError);
}

TEST_CASE("plain Gromov words land in W' at the counted rate") {
  Rng rng(73);
  const auto t = build_word_table(2, 9);
  const double fraction = static_cast<double>(t.size()) * t.size() * t.size() /
                          static_cast<double>(count_cyclically_reduced(2, 9));
  const int draws = 20000;
  int hits = 0;
  for (int i = 0; i < draws; ++i) {
    if (t.split_triple(sample_cyclically_reduced(2, 9, rng))) ++hits;
  }
  const double sd = std::sqrt(draws * fraction * (1 - fraction));
  CHECK(std::abs(hits - draws * fraction) < 5 * sd);
}

TEST_CASE("factor strings") {
  CHECK(factors_to_string({1, -10, 3}) == "1 -10 3");
  CHECK(factors_to_string({}).empty());
}
