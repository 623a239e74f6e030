#include "kazhdan/models.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_set>

namespace kazhdan {

namespace {

void check_density(double d) {
  if (!(d > 0.0 && d < 1.0)) throw ModelError("density d must lie in (0, 1)");
}

int uniform_index(int size, Rng& rng) {
  return std::uniform_int_distribution<int>(0, size - 1)(rng);
}

}  // namespace

std::uint64_t relator_count(double base, double exponent, double cap) {
  const double value = std::pow(base, exponent);
  if (!std::isfinite(value) || value > cap) {
    throw ModelError("relator count " + std::to_string(value) + " exceeds cap " +
                     std::to_string(cap));
  }
  // Guard against pow() landing just below an exact integer.
  const auto count = static_cast<std::uint64_t>(std::floor(value * (1.0 + 1e-12)));
  if (count < 1) throw ModelError("parameters give zero relators");
  return count;
}

Presentation sample_gromov(int n, int length, double density, Rng& rng,
                           std::optional<std::uint64_t> count_override, double cap) {
  if (n < 2) throw ModelError("generator count n must be >= 2");
  if (length < 1) throw ModelError("relator length l must be >= 1");
  check_density(density);
  const std::uint64_t count =
      count_override ? *count_override : relator_count(2.0 * n - 1.0, length * density, cap);
  Presentation p{n, {}, "gromov"};
  p.relators.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    p.relators.push_back(sample_cyclically_reduced(n, length, rng));
  }
  return p;
}

Presentation sample_triangular(int m, double density, Rng& rng, bool positive,
                               std::optional<std::uint64_t> count_override, double cap) {
  if (m < 2) throw ModelError("generator count m must be >= 2");
  check_density(density);
  const std::uint64_t count =
      count_override ? *count_override : relator_count(2.0 * m - 1.0, 3.0 * density, cap);
  Presentation p{m, {}, positive ? "triangular_positive" : "triangular"};
  p.relators.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (positive) {
      Word w;
      for (int j = 0; j < 3; ++j) w.push_back(Letter::positive(uniform_index(m, rng) + 1));
      p.relators.push_back(std::move(w));
    } else {
      p.relators.push_back(sample_cyclically_reduced(m, 3, rng));
    }
  }
  return p;
}

std::vector<int> random_permutation(int size, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = size - 1; i > 0; --i) {
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(uniform_index(i + 1, rng))]);
  }
  return perm;
}

bool is_bijection(const std::vector<int>& map) {
  std::vector<char> seen(map.size(), 0);
  for (int x : map) {
    if (x < 0 || static_cast<std::size_t>(x) >= map.size() || seen[static_cast<std::size_t>(x)]) {
      return false;
    }
    seen[static_cast<std::size_t>(x)] = 1;
  }
  return true;
}

namespace {

int inverse_symbol(int s, int n) { return s < n ? s + n : s - n; }

bool pair_is_reduced(const PermutationPair& pair, int n) {
  for (int s = 0; s < 2 * n; ++s) {
    const int p1 = pair.first[static_cast<std::size_t>(s)];
    const int p2 = pair.second[static_cast<std::size_t>(s)];
    const int s_inv = inverse_symbol(s, n);
    if (p1 == s_inv || p2 == s_inv || p2 == inverse_symbol(p1, n)) return false;
  }
  return true;
}

}  // namespace

std::vector<Word> permutation_relators(const PermutationPairSet& set) {
  const int n = set.generator_count;
  std::vector<Word> out;
  out.reserve(set.pairs.size() * static_cast<std::size_t>(2 * n));
  for (int s = 0; s < 2 * n; ++s) {
    for (const PermutationPair& pair : set.pairs) {
      out.push_back({Letter::from_symbol_index(s, n),
                     Letter::from_symbol_index(pair.first[static_cast<std::size_t>(s)], n),
                     Letter::from_symbol_index(pair.second[static_cast<std::size_t>(s)], n)});
    }
  }
  return out;
}

bool satisfies_reduced_constraints(const PermutationPairSet& set) {
  return std::all_of(set.pairs.begin(), set.pairs.end(), [&](const PermutationPair& pair) {
    return pair_is_reduced(pair, set.generator_count);
  });
}

std::pair<Presentation, PermutationPairSet> sample_permutation_model(int n, int v, Rng& rng,
                                                                     bool reduced,
                                                                     int attempt_bound) {
  if (n < 1) throw ModelError("generator count n must be >= 1");
  if (v < 1) throw ModelError("pair count v must be >= 1");
  PermutationPairSet set{n, {}};
  for (int i = 0; i < v; ++i) {
    PermutationPair pair;
    int attempt = 0;
    do {
      if (attempt++ == attempt_bound) {
        throw ModelError("reduced permutation pair not found after " +
                         std::to_string(attempt_bound) + " attempts");
      }
      pair.first = random_permutation(2 * n, rng);
      pair.second = random_permutation(2 * n, rng);
    } while (reduced && !pair_is_reduced(pair, n));
    set.pairs.push_back(std::move(pair));
  }
  Presentation p{n, permutation_relators(set), reduced ? "permutation_reduced" : "permutation"};
  return {std::move(p), std::move(set)};
}

Multigraph configuration_from_permutations(int n, const std::vector<std::vector<int>>& perms) {
  Multigraph g(n);
  for (const auto& perm : perms) {
    for (int i = 0; i < n; ++i) g.add_edge(i, perm[static_cast<std::size_t>(i)]);
  }
  return g;
}

namespace {

std::vector<std::string> symbol_labels(int n) {
  std::vector<std::string> labels;
  for (int s = 0; s < 2 * n; ++s) labels.push_back(to_string(Letter::from_symbol_index(s, n)));
  return labels;
}

Multigraph sample_gnm(int n, std::int64_t M, Rng& rng) {
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (M < 0 || M > pairs) {
    throw ModelError("gnm: M must lie in [0, " + std::to_string(pairs) + "]");
  }
  // Floyd's subset sampling, then sorted so edge order is canonical.
  std::unordered_set<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(M) * 2);
  for (std::int64_t j = pairs - M; j < pairs; ++j) {
    const std::int64_t t = std::uniform_int_distribution<std::int64_t>(0, j)(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::int64_t> ids(chosen.begin(), chosen.end());
  std::sort(ids.begin(), ids.end());
  Multigraph g(n);
  // Pair id enumerates (u, v), u < v, row-major.
  std::int64_t row_start = 0;
  int u = 0;
  for (std::int64_t id : ids) {
    while (id >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    g.add_edge(u, static_cast<int>(u + 1 + (id - row_start)));
  }
  return g;
}

}  // namespace

Multigraph sample_graph(const GraphParams& params, Rng& rng, int attempt_bound) {
  const int n = params.n;
  if (n < 1) throw ModelError("graph size n must be >= 1");
  switch (params.kind) {
    case GraphKind::configuration: {
      if (params.v < 1) throw ModelError("configuration: v must be >= 1");
      std::vector<std::vector<int>> perms;
      for (int k = 0; k < params.v; ++k) perms.push_back(random_permutation(n, rng));
      return configuration_from_permutations(n, perms);
    }
    case GraphKind::configuration_reduced: {
      if (params.v < 1) throw ModelError("configuration_reduced: v must be >= 1");
      Multigraph g(2 * n, symbol_labels(n));
      for (int k = 0; k < params.v; ++k) {
        std::vector<int> perm;
        bool ok = false;
        for (int attempt = 0; attempt < attempt_bound && !ok; ++attempt) {
          perm = random_permutation(2 * n, rng);
          ok = true;
          for (int s = 0; s < 2 * n && ok; ++s) {
            ok = perm[static_cast<std::size_t>(s)] != inverse_symbol(s, n);
          }
        }
        if (!ok) throw ModelError("configuration_reduced: rejection bound exhausted");
        for (int s = 0; s < 2 * n; ++s) g.add_edge(s, perm[static_cast<std::size_t>(s)]);
      }
      return g;
    }
    case GraphKind::gnp: {
      if (!(params.p >= 0.0 && params.p <= 1.0)) throw ModelError("gnp: p must lie in [0, 1]");
      Multigraph g(n);
      std::bernoulli_distribution coin(params.p);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (coin(rng)) g.add_edge(u, v);
        }
      }
      return g;
    }
    case GraphKind::gnm:
      return sample_gnm(n, params.M, rng);
    case GraphKind::bipartite_regular: {
      if (params.v < 1) throw ModelError("bipartite_regular: v must be >= 1");
      Multigraph g(2 * n);
      for (int k = 0; k < params.v; ++k) {
        const auto perm = random_permutation(n, rng);
        for (int i = 0; i < n; ++i) g.add_edge(i, n + perm[static_cast<std::size_t>(i)]);
      }
      return g;
    }
  }
  throw ModelError("unknown graph kind");
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::configuration: return "configuration";
    case GraphKind::configuration_reduced: return "configuration_reduced";
    case GraphKind::gnp: return "gnp";
    case GraphKind::gnm: return "gnm";
    case GraphKind::bipartite_regular: return "bipartite_regular";
  }
  return "unknown";
}

GraphKind parse_graph_kind(const std::string& name) {
  for (GraphKind k : {GraphKind::configuration, GraphKind::configuration_reduced, GraphKind::gnp,
                      GraphKind::gnm, GraphKind::bipartite_regular}) {
    if (to_string(k) == name) return k;
  }
  throw ModelError("unknown graph kind '" + name + "'");
}

void write_presentation(std::ostream& out, const Presentation& p) {
  out << "m=" << p.generator_count << '\n';
  for (const Word& r : p.relators) out << to_string(r) << '\n';
}

Presentation read_presentation(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && !line.empty() && line[0] == '#') {
  }
  if (line.rfind("m=", 0) != 0) throw ModelError("expected 'm=<int>' header");
  Presentation p;
  try {
    p.generator_count = std::stoi(line.substr(2));
  } catch (const std::exception&) {
    throw ModelError("bad generator count in '" + line + "'");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    Word w = parse_word(line);
    for (Letter l : w) {
      if (l.generator() > p.generator_count) {
        throw ModelError("letter " + to_string(l) + " exceeds m=" +
                         std::to_string(p.generator_count));
      }
    }
    p.relators.push_back(std::move(w));
  }
  return p;
}

}  // namespace kazhdan
