#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "kazhdan/models.hpp"

namespace kazhdan {

class MatchingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (x in V1, y in V2, z in V3), each a 0-based index into its part.
using Triple = std::array<int, 3>;

// 3-partite hypergraph; parts are three copies of a vertex set of size
// part_size. When part_size is even the vertices are read as symbols of
// S u S^-1 with m = part_size / 2.
struct RelatorHypergraph {
  int part_size = 0;
  std::vector<Triple> edges;  // sorted, no duplicates

  void normalize();
};

struct Matching {
  std::vector<Triple> edges;
  bool reduced = false;
};

enum class MatchStatus { found, not_found, proved_none, budget_exhausted };
enum class MatchMode { exact, heuristic };

struct MatchBudget {
  std::uint64_t exact_nodes = 50'000'000;
  int exact_part_cap = 64;
  int restarts = 200;
  std::uint64_t steps_per_restart = 0;  // 0: 50 * part_size
};

struct MatchResult {
  MatchStatus status = MatchStatus::not_found;
  std::optional<Matching> matching;
};

RelatorHypergraph build_hypergraph(const Presentation& p);

// Word s_x s_y s_z is cyclically reduced; part_size must be even.
bool is_reduced_edge(const Triple& e, int part_size);

// Disjoint in every part and covering all three parts.
bool is_perfect_matching(const RelatorHypergraph& h, const std::vector<Triple>& edges);

MatchResult find_perfect_matching(const RelatorHypergraph& h, MatchMode mode, Rng& rng,
                                  const MatchBudget& budget = {});

struct MatchingPermutations {
  PermutationPairSet pairs;  // v = 1
  bool reduced = false;
};

// pi1(x) = y, pi2(x) = z for each edge (x, y, z); throws on a non-perfect matching.
MatchingPermutations matching_to_permutations(const Matching& mt, int part_size);

enum class ExtractStatus { found, not_found };

struct ExtractResult {
  ExtractStatus status = ExtractStatus::not_found;
  std::optional<PermutationPairSet> pairs;
  std::vector<std::vector<std::size_t>> used_relators;  // indices into p.relators, per pair
};

// Splits the length-3 relators round-robin into v parts and matches each.
ExtractResult extract_permutation_subsets(const Presentation& p, int v, MatchMode mode, Rng& rng,
                                          const MatchBudget& budget = {});

// Uniform M-subset of distinct triples; when `reduced`, only reduced edges.
RelatorHypergraph sample_hypergraph(int part_size, std::int64_t M, bool reduced, Rng& rng);

enum class ForbiddenPattern { derangement, menage };

struct DerangementSample {
  int trials = 0;
  Rng* rng = nullptr;
};

// Fraction of permutations of n avoiding the forbidden images: i for
// derangement, {i, i+1 mod n} for menage.
double derangement_fraction(int n, ForbiddenPattern pattern);
double derangement_fraction(int n, ForbiddenPattern pattern, DerangementSample sample);

// D(n) by D(n) = (n-1)(D(n-1) + D(n-2)).
std::uint64_t derangement_count(int n);

// Permutations with pi(i) not in forbidden[i] (bitmask DP, n <= 20).
std::uint64_t count_avoiding(const std::vector<std::vector<int>>& forbidden);

void write_hypergraph(std::ostream& out, const RelatorHypergraph& h);
RelatorHypergraph read_hypergraph(std::istream& in);

std::string to_string(MatchStatus s);

}  // namespace kazhdan
