#include "kazhdan/embed.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace kazhdan {

WordTable::WordTable(int n, int l, std::uint64_t cap) : n_(n), block_(l / 3) {
  if (n < 1) throw EmbedError("generator count n must be >= 1");
  if (l < 3 || l % 3 != 0) {
    throw EmbedError("relator length l = " + std::to_string(l) + " is not a positive multiple of 3");
  }
  try {
    words_ = enumerate_words(n, block_, WordConstraint::positive_boundary_reduced, cap);
  } catch (const WordError& e) {
    throw EmbedError(std::string("word table too large: ") + e.what());
  }
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], static_cast<int>(i + 1));
}

std::optional<int> WordTable::index_of(const Word& w) const {
  const auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::array<int, 3>> WordTable::split_triple(const Word& w) const {
  if (static_cast<int>(w.size()) != 3 * block_) return std::nullopt;
  std::array<int, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto begin = w.begin() + static_cast<std::ptrdiff_t>(k * static_cast<std::size_t>(block_));
    const auto idx = index_of(Word(begin, begin + block_));
    if (!idx) return std::nullopt;
    out[k] = *idx;
  }
  return out;
}

Presentation phi_map(const Presentation& p, const WordTable& t) {
  if (p.generator_count != t.size()) {
    throw EmbedError("presentation has " + std::to_string(p.generator_count) +
                     " generators but the word table has " + std::to_string(t.size()));
  }
  Presentation out{t.generator_count(), {}, "gromov_phi"};
  out.relators.reserve(p.relators.size());
  for (const Word& r : p.relators) {
    if (r.size() != 3 || !r[0].is_positive() || !r[1].is_positive() || !r[2].is_positive()) {
      throw EmbedError("relator '" + to_string(r) + "' is not positive of length 3");
    }
    Word image;
    for (Letter l : r) {
      if (l.generator() > t.size()) throw EmbedError("letter " + to_string(l) + " out of range");
      const Word& block = t.word(l.generator());
      image.insert(image.end(), block.begin(), block.end());
    }
    out.relators.push_back(std::move(image));
  }
  return out;
}

namespace {

Word slice(const Word& w, std::size_t begin, std::size_t end) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(begin),
              w.begin() + static_cast<std::ptrdiff_t>(end));
}

// Splits a reduced word into chunks that are each a product of at most two
// table words. Adjacent chunks either meet directly or through an inserted
// pair x x^-1; a memoized search picks chunk lengths and junction letters.
class ChunkSearch {
 public:
  ChunkSearch(const WordTable& t, const Word& u)
      : t_(t), u_(u), block_(t.block_length()), max_chunk_(std::max(block_, 2 * block_ - 2)) {}

  std::optional<std::vector<int>> run() { return solve(0, 0); }

 private:
  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (int k = 0; k < 2 * t_.generator_count(); ++k) out.emplace_back(k / 2 + 1, k % 2 ? -1 : +1);
    return out;
  }

  // Reduced word of length `len` whose first letter avoids `forbidden_first`
  // and whose last letter has the given sign; positive letters are tried
  // first, alternating a1 a2 ...
  std::optional<Word> pad(int len, const std::vector<Letter>& forbidden_first,
                          bool last_positive) const {
    const int n = t_.generator_count();
    Word out;
    for (int j = 0; j < len; ++j) {
      std::optional<Letter> pick;
      for (int sign : {+1, -1}) {
        for (int g = 0; g < n && !pick; ++g) {
          const Letter cand((g + j) % n + 1, sign);
          if (j == 0 && std::find(forbidden_first.begin(), forbidden_first.end(), cand) !=
                            forbidden_first.end()) {
            continue;
          }
          if (j > 0 && cand == out.back().inverse()) continue;
          if (j == len - 1 && cand.is_positive() != last_positive) continue;
          pick = cand;
        }
      }
      if (!pick) return std::nullopt;
      out.push_back(*pick);
    }
    return out;
  }

  std::optional<std::vector<int>> realize(const Word& chunk) const {
    const int len = static_cast<int>(chunk.size());
    const bool first_pos = chunk.front().is_positive();
    const bool last_pos = chunk.back().is_positive();
    if (first_pos == last_pos) {
      if (len != block_) return std::nullopt;
      if (first_pos) {
        if (auto i = t_.index_of(chunk)) return std::vector<int>{*i};
      } else if (auto i = t_.index_of(inverse(chunk))) {
        return std::vector<int>{-*i};
      }
      return std::nullopt;
    }
    if (len % 2 != 0) return std::nullopt;
    const int half = len / 2 - 1;
    const int padding = block_ - 1 - half;
    if (padding < 1) return std::nullopt;
    const auto h = static_cast<std::size_t>(half);
    if (first_pos) {
      // s alpha gamma^-1 t^-1 = (s alpha beta)(t gamma beta)^-1
      const Word left1 = slice(chunk, 0, 1 + h);
      const Word left2 = concat({chunk.back().inverse()}, inverse(slice(chunk, 1 + h, 1 + 2 * h)));
      const auto beta = pad(padding, {left1.back().inverse(), left2.back().inverse()}, true);
      if (!beta) return std::nullopt;
      const auto i1 = t_.index_of(concat(left1, *beta));
      const auto i2 = t_.index_of(concat(left2, *beta));
      if (!i1 || !i2) return std::nullopt;
      return std::vector<int>{*i1, -*i2};
    }
    // s^-1 alpha^-1 gamma t = (beta alpha s)^-1 (beta gamma t)
    const Word right1 = concat(inverse(slice(chunk, 1, 1 + h)), {chunk.front().inverse()});
    const Word right2 = slice(chunk, 1 + h, chunk.size());
    const auto beta_inv = pad(padding, {right1.front(), right2.front()}, false);
    if (!beta_inv) return std::nullopt;
    const Word beta = inverse(*beta_inv);
    const auto i1 = t_.index_of(concat(beta, right1));
    const auto i2 = t_.index_of(concat(beta, right2));
    if (!i1 || !i2) return std::nullopt;
    return std::vector<int>{-*i1, *i2};
  }

  // Factors for lead . u[pos..], lead_raw == 0 meaning no inserted lead letter.
  std::optional<std::vector<int>> solve(std::size_t pos, int lead_raw) {
    if (pos == u_.size()) {
      if (lead_raw == 0) return std::vector<int>{};
      return std::nullopt;
    }
    if (failed_.count({pos, lead_raw})) return std::nullopt;
    const std::size_t lead_len = lead_raw ? 1 : 0;
    const std::size_t limit =
        std::min(u_.size(), pos + static_cast<std::size_t>(max_chunk_) - lead_len);
    for (std::size_t end = limit; end > pos; --end) {
      Word base;
      if (lead_raw) base.push_back(Letter::from_raw(lead_raw));
      base.insert(base.end(), u_.begin() + static_cast<std::ptrdiff_t>(pos),
                  u_.begin() + static_cast<std::ptrdiff_t>(end));
      if (auto f = realize(base)) {
        if (auto rest = solve(end, 0)) {
          f->insert(f->end(), rest->begin(), rest->end());
          return f;
        }
      }
      if (end == u_.size() || base.size() + 1 > static_cast<std::size_t>(max_chunk_)) continue;
      for (Letter x : letters()) {
        if (x == u_[end - 1].inverse() || x == u_[end]) continue;
        Word chunk = base;
        chunk.push_back(x);
        auto f = realize(chunk);
        if (!f) continue;
        if (auto rest = solve(end, x.inverse().raw())) {
          f->insert(f->end(), rest->begin(), rest->end());
          return f;
        }
      }
    }
    failed_.insert({pos, lead_raw});
    return std::nullopt;
  }

  const WordTable& t_;
  const Word& u_;
  int block_;
  int max_chunk_;
  std::set<std::pair<std::size_t, int>> failed_;
};

Letter smallest_positive_except(int n, std::initializer_list<Letter> avoid) {
  for (int g = 1; g <= n; ++g) {
    const Letter c = Letter::positive(g);
    if (std::find(avoid.begin(), avoid.end(), c) == avoid.end()) return c;
  }
  throw EmbedError("internal: no admissible positive letter");
}

// Prefix p with p^-1 w of the form a v b^-1 or a^-1 v b, |v| even.
Word case_prefix(const Word& w, int n) {
  const Letter first = w.front();
  const Letter last = w.back();
  const bool odd = w.size() % 2 == 1;
  const Letter a = first.is_positive() ? first : first.inverse();
  if (first.is_positive()) {
    if (!odd && !last.is_positive()) return {};
    if (odd && last.is_positive()) return {smallest_positive_except(n, {a})};
    if (odd) return {smallest_positive_except(n, {}).inverse()};
    return {a, smallest_positive_except(n, {a})};
  }
  if (!odd && last.is_positive()) return {};
  if (odd && last.is_positive()) return {smallest_positive_except(n, {})};
  if (odd) return {smallest_positive_except(n, {a}).inverse()};
  const Letter d = smallest_positive_except(n, {a});
  const Letter c = smallest_positive_except(n, {});
  return {d.inverse(), c.inverse()};
}

}  // namespace

Word evaluate(const CosetForm& form, const WordTable& t) {
  Word out = form.prefix;
  for (int f : form.factors) {
    if (f == 0 || std::abs(f) > t.size()) throw EmbedError("factor index out of range");
    const Word& block = t.word(std::abs(f));
    const Word piece = f > 0 ? block : inverse(block);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return free_reduce(out);
}

CosetForm coset_normal_form(const Word& w, const WordTable& t) {
  const int n = t.generator_count();
  if (n < 2) throw EmbedError("coset normal form needs n >= 2");
  if (t.relator_length() < 9) throw EmbedError("coset normal form needs l >= 9");
  if (!is_reduced(w)) throw EmbedError("word '" + to_string(w) + "' is not reduced");
  for (Letter l : w) {
    if (l.generator() > n) throw EmbedError("letter " + to_string(l) + " out of range");
  }
  if (w.empty()) return {};

  std::vector<Word> prefixes{{}, case_prefix(w, n)};
  // Fallback over all short prefixes; not expected to be reached.
  for (int k = 0; k < 2 * n; ++k) {
    const Letter x(k / 2 + 1, k % 2 ? -1 : +1);
    prefixes.push_back({x});
    for (int j = 0; j < 2 * n; ++j) {
      const Letter y(j / 2 + 1, j % 2 ? -1 : +1);
      if (y != x.inverse()) prefixes.push_back({x, y});
    }
  }
  for (const Word& prefix : prefixes) {
    const Word u = free_reduce(concat(inverse(prefix), w));
    if (auto factors = ChunkSearch(t, u).run()) {
      CosetForm form{prefix, std::move(*factors)};
      if (evaluate(form, t) != w) {
        throw EmbedError("internal: coset form does not reproduce '" + to_string(w) + "'");
      }
      return form;
    }
  }
  throw EmbedError("internal: no coset form found for '" + to_string(w) + "'");
}

Presentation sample_gromov_restricted(const WordTable& t, double density, double count_scale,
                                      Rng& rng, double cap) {
  if (!(density > 0.0 && density < 1.0)) throw EmbedError("density d must lie in (0, 1)");
  if (!(count_scale > 0.0)) throw EmbedError("count scale must be positive");
  const double m = t.size();
  const double value = count_scale * std::pow(2.0 * m - 1.0, 3.0 * density);
  if (!std::isfinite(value) || value > cap) throw EmbedError("relator count exceeds cap");
  const auto scaled = static_cast<std::uint64_t>(std::floor(value * (1.0 + 1e-12)));
  if (scaled < 1) throw EmbedError("parameters give zero relators");
  Presentation out{t.generator_count(), {}, "gromov_restricted"};
  std::uniform_int_distribution<int> pick(1, t.size());
  for (std::uint64_t i = 0; i < scaled; ++i) {
    Word r;
    for (int k = 0; k < 3; ++k) {
      const Word& block = t.word(pick(rng));
      r.insert(r.end(), block.begin(), block.end());
    }
    out.relators.push_back(std::move(r));
  }
  return out;
}

Presentation sample_gromov_restricted(int n, int l, double density, double count_scale, Rng& rng) {
  if (n < 2) throw EmbedError("generator count n must be >= 2");
  return sample_gromov_restricted(WordTable(n, l), density, count_scale, rng);
}

std::string factors_to_string(const std::vector<int>& factors) {
  std::ostringstream out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out << ' ';
    out << factors[i];
  }
  return out.str();
}

}  // namespace kazhdan
