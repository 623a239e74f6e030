#include "kazhdan/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace kazhdan {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

bool is_reduced(const Word& w) {
  return std::adjacent_find(w.begin(), w.end(),
                            [](Letter a, Letter b) { return b == a.inverse(); }) == w.end();
}

bool is_cyclically_reduced(const Word& w) {
  if (w.empty()) return true;
  if (!is_reduced(w)) return false;
  return w.size() == 1 || w.front() != w.back().inverse();
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace {

Letter letter_from_draw(int draw) {
  // draw in [0, 2m): even -> positive, odd -> negative, matching order_key.
  return Letter(draw / 2 + 1, draw % 2 == 0 ? +1 : -1);
}

}  // namespace

Word sample_cyclically_reduced(int alphabet, int length, Rng& rng, int attempt_bound) {
  if (alphabet < 1) throw WordError("alphabet size must be >= 1");
  if (length < 1) throw WordError("word length must be >= 1");
  std::uniform_int_distribution<int> first(0, 2 * alphabet - 1);
  std::uniform_int_distribution<int> next(0, 2 * alphabet - 2);
  Word w(static_cast<std::size_t>(length));
  for (int attempt = 0; attempt < attempt_bound; ++attempt) {
    w[0] = letter_from_draw(first(rng));
    for (int i = 1; i < length; ++i) {
      // Uniform over the 2m-1 letters that do not cancel with the previous one.
      int key = next(rng);
      if (key >= w[i - 1].inverse().order_key()) ++key;
      w[i] = letter_from_draw(key);
    }
    if (length == 1 || w.front() != w.back().inverse()) return w;
  }
  throw WordError("no cyclically reduced word of length " + std::to_string(length) +
                  " found after " + std::to_string(attempt_bound) + " attempts");
}

std::vector<Word> enumerate_words(int alphabet, int length, WordConstraint constraint,
                                  std::uint64_t cap) {
  if (alphabet < 1) throw WordError("alphabet size must be >= 1");
  if (length < 0) throw WordError("word length must be >= 0");
  const std::uint64_t base = 2 * static_cast<std::uint64_t>(alphabet);
  std::uint64_t total = 1;
  for (int i = 0; i < length; ++i) {
    if (total > cap / base) {
      throw WordError("enumeration of (2m)^l words exceeds cap " + std::to_string(cap));
    }
    total *= base;
  }

  std::vector<Word> out;
  if (length == 0) {
    out.emplace_back();
    return out;
  }
  // Depth-first in order_key order so the output is already sorted; prune
  // non-reduced prefixes immediately.
  Word w;
  w.reserve(static_cast<std::size_t>(length));
  auto accept = [&](const Word& cand) {
    switch (constraint) {
      case WordConstraint::all_reduced:
        return true;
      case WordConstraint::cyclically_reduced:
        return is_cyclically_reduced(cand);
      case WordConstraint::positive_boundary_reduced:
        return cand.front().is_positive() && cand.back().is_positive();
    }
    return false;
  };
  auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(w.size()) == length) {
      if (accept(w)) out.push_back(w);
      return;
    }
    for (int key = 0; key < static_cast<int>(base); ++key) {
      Letter l = letter_from_draw(key);
      if (!w.empty() && w.back() == l.inverse()) continue;
      if (w.empty() && constraint == WordConstraint::positive_boundary_reduced &&
          !l.is_positive()) {
        continue;
      }
      w.push_back(l);
      self(self);
      w.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

std::uint64_t count_cyclically_reduced(int alphabet, int length) {
  if (length == 0) return 1;
  std::uint64_t p = 1;
  for (int i = 0; i < length; ++i) p *= static_cast<std::uint64_t>(2 * alphabet - 1);
  const std::uint64_t even_term = (length % 2 == 0) ? 2 * static_cast<std::uint64_t>(alphabet - 1) : 0;
  return p + 1 + even_term;
}

std::string to_string(Letter l) {
  return (l.is_positive() ? "a" : "A") + std::to_string(l.generator());
}

std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += to_string(w[i]);
  }
  return out;
}

Letter parse_letter(std::string_view token) {
  if (token.size() < 2 || (token[0] != 'a' && token[0] != 'A')) {
    throw WordError("bad letter '" + std::string(token) + "'");
  }
  int g = 0;
  auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), g);
  if (ec != std::errc{} || ptr != token.data() + token.size() || g < 1) {
    throw WordError("bad letter '" + std::string(token) + "'");
  }
  return Letter(g, token[0] == 'a' ? +1 : -1);
}

Word parse_word(std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) w.push_back(parse_letter(token));
  return w;
}

bool lex_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace kazhdan
