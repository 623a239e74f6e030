#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kazhdan {

using Rng = std::mt19937_64;

// A generator or its inverse. Stored as +g / -g with g >= 1.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign) : value_(sign < 0 ? -generator : generator) {}

  static constexpr Letter positive(int generator) { return Letter(generator, +1); }
  static constexpr Letter negative(int generator) { return Letter(generator, -1); }

  constexpr int generator() const { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const { return value_ < 0 ? -1 : +1; }
  constexpr bool is_positive() const { return value_ > 0; }
  constexpr Letter inverse() const { return from_raw(-value_); }
  constexpr int raw() const { return value_; }

  // 0-based symbol index: a_i -> i-1, a_i^-1 -> m+i-1.
  constexpr int symbol_index(int alphabet) const {
    return is_positive() ? generator() - 1 : alphabet + generator() - 1;
  }
  static constexpr Letter from_symbol_index(int index, int alphabet) {
    return index < alphabet ? positive(index + 1) : negative(index - alphabet + 1);
  }

  // Position in the canonical order a1 < A1 < a2 < A2 < ...
  constexpr int order_key() const { return 2 * (generator() - 1) + (value_ < 0 ? 1 : 0); }

  static constexpr Letter from_raw(int raw) {
    Letter l;
    l.value_ = raw;
    return l;
  }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) {
    return a.order_key() <=> b.order_key();
  }

 private:
  int value_ = 1;
};

using Word = std::vector<Letter>;

class WordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WordConstraint { all_reduced, cyclically_reduced, positive_boundary_reduced };

inline constexpr int default_attempt_bound = 10000;
inline constexpr std::uint64_t default_enumeration_cap = 1u << 22;

Word free_reduce(const Word& w);
bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

// Uniform over cyclically reduced words of length `length` on `alphabet`
// generators. Throws WordError after `attempt_bound` rejected draws.
Word sample_cyclically_reduced(int alphabet, int length, Rng& rng,
                               int attempt_bound = default_attempt_bound);

// All words with the given constraint, in lexicographic order by order_key.
std::vector<Word> enumerate_words(int alphabet, int length, WordConstraint constraint,
                                  std::uint64_t cap = default_enumeration_cap);

// Number of cyclically reduced words of length n over m generators (closed form).
std::uint64_t count_cyclically_reduced(int alphabet, int length);

// `a3` for a_3, `A3` for its inverse; letters separated by whitespace.
std::string to_string(Letter l);
std::string to_string(const Word& w);
Letter parse_letter(std::string_view token);
Word parse_word(std::string_view text);

bool lex_less(const Word& a, const Word& b);

}  // namespace kazhdan
