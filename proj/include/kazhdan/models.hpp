#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kazhdan/graph.hpp"
#include "kazhdan/words.hpp"

namespace kazhdan {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Presentation {
  int generator_count = 0;
  std::vector<Word> relators;  // duplicates permitted
  std::string model_tag;
};

// Symbols of S u S^-1 are indexed 0..2n-1 (see Letter::symbol_index).
struct PermutationPair {
  std::vector<int> first;
  std::vector<int> second;
};

struct PermutationPairSet {
  int generator_count = 0;
  std::vector<PermutationPair> pairs;

  int symbol_count() const { return 2 * generator_count; }
};

inline constexpr double default_count_cap = 5.0e7;

// floor(base^exponent), rejecting values above `cap`.
std::uint64_t relator_count(double base, double exponent, double cap = default_count_cap);

Presentation sample_gromov(int n, int length, double density, Rng& rng,
                           std::optional<std::uint64_t> count_override = std::nullopt,
                           double cap = default_count_cap);

Presentation sample_triangular(int m, double density, Rng& rng, bool positive,
                               std::optional<std::uint64_t> count_override = std::nullopt,
                               double cap = default_count_cap);

std::vector<int> random_permutation(int size, Rng& rng);
bool is_bijection(const std::vector<int>& map);

// Relators s pi1(s) pi2(s), symbol-major: relator i comes from pair i mod v.
std::vector<Word> permutation_relators(const PermutationPairSet& set);

// The three reduced-model constraints, for every symbol of every pair.
bool satisfies_reduced_constraints(const PermutationPairSet& set);

std::pair<Presentation, PermutationPairSet> sample_permutation_model(
    int n, int v, Rng& rng, bool reduced, int attempt_bound = default_attempt_bound);

enum class GraphKind { configuration, configuration_reduced, gnp, gnm, bipartite_regular };

struct GraphParams {
  GraphKind kind = GraphKind::configuration;
  int n = 0;
  int v = 0;              // configuration*, bipartite_regular
  double p = 0.0;         // gnp
  std::int64_t M = 0;     // gnm
};

Multigraph sample_graph(const GraphParams& params, Rng& rng,
                        int attempt_bound = default_attempt_bound);

// Edges (i, perms[k][i]) over a common vertex set.
Multigraph configuration_from_permutations(int n, const std::vector<std::vector<int>>& perms);

std::string to_string(GraphKind kind);
GraphKind parse_graph_kind(const std::string& name);

// `m=<int>` then one relator per line in word text format.
void write_presentation(std::ostream& out, const Presentation& p);
Presentation read_presentation(std::istream& in);

}  // namespace kazhdan
