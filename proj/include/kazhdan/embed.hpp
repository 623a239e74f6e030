#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "kazhdan/models.hpp"
#include "kazhdan/words.hpp"

namespace kazhdan {

class EmbedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All reduced words of length l/3 over n generators that begin and end with a
// positive letter, in canonical lexicographic order. Index i (1-based) is the
// image of generator s_i under phi.
class WordTable {
 public:
  WordTable(int n, int l, std::uint64_t cap = default_enumeration_cap);

  int generator_count() const { return n_; }
  int relator_length() const { return 3 * block_; }
  int block_length() const { return block_; }
  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<Word>& words() const { return words_; }
  const Word& word(int index) const { return words_.at(static_cast<std::size_t>(index - 1)); }

  // 1-based index of w, if it is a table word.
  std::optional<int> index_of(const Word& w) const;

  // (x, y, z) with w = w_x w_y w_z, if w lies in W'_l.
  std::optional<std::array<int, 3>> split_triple(const Word& w) const;

 private:
  int n_;
  int block_;
  std::vector<Word> words_;
  std::map<Word, int> index_;
};

inline WordTable build_word_table(int n, int l) { return WordTable(n, l); }

// s_x s_y s_z -> w_x w_y w_z for a positive triangular presentation.
Presentation phi_map(const Presentation& p, const WordTable& t);

struct CosetForm {
  Word prefix;               // length <= 2
  std::vector<int> factors;  // +i for w_i, -i for w_i^-1, multiplied left to right
};

// Writes a reduced word w as prefix * (product of table words and inverses).
// Requires n >= 2 and l >= 9.
CosetForm coset_normal_form(const Word& w, const WordTable& t);

// free_reduce(prefix * prod factors).
Word evaluate(const CosetForm& form, const WordTable& t);

// Relators i.i.d. uniform over W'_l, floor(scale * (2m-1)^{3d}) of them,
// m = |W_{l/3}|.
Presentation sample_gromov_restricted(const WordTable& t, double density, double count_scale,
                                      Rng& rng, double cap = default_count_cap);
Presentation sample_gromov_restricted(int n, int l, double density, double count_scale, Rng& rng);

std::string factors_to_string(const std::vector<int>& factors);

}  // namespace kazhdan
