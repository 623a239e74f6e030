#include "kazhdan/matching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace kazhdan {

void RelatorHypergraph::normalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

RelatorHypergraph build_hypergraph(const Presentation& p) {
  const int m = p.generator_count;
  RelatorHypergraph h{2 * m, {}};
  for (const Word& r : p.relators) {
    if (r.size() != 3) {
      throw MatchingError("relator '" + to_string(r) + "' does not have length 3");
    }
    h.edges.push_back({r[0].symbol_index(m), r[1].symbol_index(m), r[2].symbol_index(m)});
  }
  h.normalize();
  return h;
}

namespace {

Word triple_word(const Triple& e, int m) {
  return {Letter::from_symbol_index(e[0], m), Letter::from_symbol_index(e[1], m),
          Letter::from_symbol_index(e[2], m)};
}

}  // namespace

bool is_reduced_edge(const Triple& e, int part_size) {
  if (part_size % 2 != 0) throw MatchingError("reduced edges need an even part size");
  return is_cyclically_reduced(triple_word(e, part_size / 2));
}

bool is_perfect_matching(const RelatorHypergraph& h, const std::vector<Triple>& edges) {
  if (static_cast<int>(edges.size()) != h.part_size) return false;
  std::array<std::vector<char>, 3> covered;
  for (auto& c : covered) c.assign(static_cast<std::size_t>(h.part_size), 0);
  for (const Triple& e : edges) {
    if (!std::binary_search(h.edges.begin(), h.edges.end(), e)) return false;
    for (std::size_t k = 0; k < 3; ++k) {
      if (e[k] < 0 || e[k] >= h.part_size) return false;
      auto& slot = covered[k][static_cast<std::size_t>(e[k])];
      if (slot) return false;
      slot = 1;
    }
  }
  return true;
}

namespace {

bool all_reduced(const std::vector<Triple>& edges, int part_size) {
  if (part_size % 2 != 0) return false;
  return std::all_of(edges.begin(), edges.end(),
                     [&](const Triple& e) { return is_reduced_edge(e, part_size); });
}

MatchResult found(const RelatorHypergraph& h, std::vector<Triple> edges) {
  std::sort(edges.begin(), edges.end());
  if (!is_perfect_matching(h, edges)) {
    throw MatchingError("internal: solver produced an invalid matching");
  }
  Matching mt{std::move(edges), false};
  mt.reduced = all_reduced(mt.edges, h.part_size);
  return {MatchStatus::found, std::move(mt)};
}

// Complete backtracking: branch on the uncovered V1 vertex with the fewest
// live edges; prune when any uncovered vertex of any part has none.
class ExactSearch {
 public:
  ExactSearch(const RelatorHypergraph& h, std::uint64_t node_budget)
      : h_(h), budget_(node_budget), by_first_(static_cast<std::size_t>(h.part_size)) {
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
      by_first_[static_cast<std::size_t>(h.edges[i][0])].push_back(i);
    }
  }

  MatchResult run() {
    if (h_.part_size == 0) return found(h_, {});
    const std::uint64_t full =
        h_.part_size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h_.part_size) - 1;
    full_ = full;
    const auto outcome = search(0, 0, 0);
    if (outcome == Outcome::found) return found(h_, chosen_);
    if (outcome == Outcome::exhausted) return {MatchStatus::budget_exhausted, std::nullopt};
    return {MatchStatus::proved_none, std::nullopt};
  }

 private:
  enum class Outcome { found, none, exhausted };

  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

  bool live(const Triple& e, std::uint64_t c1, std::uint64_t c2, std::uint64_t c3) const {
    return !(c1 & bit(e[0])) && !(c2 & bit(e[1])) && !(c3 & bit(e[2]));
  }

  Outcome search(std::uint64_t c1, std::uint64_t c2, std::uint64_t c3) {
    if (c1 == full_) return Outcome::found;
    if (++nodes_ > budget_) return Outcome::exhausted;

    std::uint64_t reach1 = 0;
    std::uint64_t reach2 = 0;
    std::uint64_t reach3 = 0;
    for (const Triple& e : h_.edges) {
      if (!live(e, c1, c2, c3)) continue;
      reach1 |= bit(e[0]);
      reach2 |= bit(e[1]);
      reach3 |= bit(e[2]);
    }
    if ((c1 | reach1) != full_ || (c2 | reach2) != full_ || (c3 | reach3) != full_) {
      return Outcome::none;
    }

    int pivot = -1;
    std::size_t best = SIZE_MAX;
    for (int x = 0; x < h_.part_size; ++x) {
      if (c1 & bit(x)) continue;
      std::size_t count = 0;
      for (std::size_t i : by_first_[static_cast<std::size_t>(x)]) {
        if (live(h_.edges[i], c1, c2, c3)) ++count;
      }
      if (count < best) {
        best = count;
        pivot = x;
      }
    }
    for (std::size_t i : by_first_[static_cast<std::size_t>(pivot)]) {
      const Triple& e = h_.edges[i];
      if (!live(e, c1, c2, c3)) continue;
      chosen_.push_back(e);
      const auto outcome = search(c1 | bit(e[0]), c2 | bit(e[1]), c3 | bit(e[2]));
      if (outcome != Outcome::none) return outcome;
      chosen_.pop_back();
    }
    return Outcome::none;
  }

  const RelatorHypergraph& h_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::uint64_t full_ = 0;
  std::vector<std::vector<std::size_t>> by_first_;
  std::vector<Triple> chosen_;
};

// Randomized greedy start, then repeatedly insert the least-conflicting edge
// through any uncovered vertex, evicting the (at most two) matched edges it
// collides with. Recently evicted edges are tabu unless they close holes.
class LocalSearch {
 public:
  explicit LocalSearch(const RelatorHypergraph& h) : h_(h) {
    const auto n = static_cast<std::size_t>(h.part_size);
    for (auto& inc : incident_) inc.assign(n, {});
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
      for (std::size_t k = 0; k < 3; ++k) {
        incident_[k][static_cast<std::size_t>(h.edges[i][k])].push_back(i);
      }
    }
  }

  bool has_isolated_vertex() const {
    for (const auto& inc : incident_) {
      for (const auto& list : inc) {
        if (list.empty()) return true;
      }
    }
    return false;
  }

  std::optional<std::vector<Triple>> attempt(Rng& rng, std::uint64_t steps) {
    const auto n = static_cast<std::size_t>(h_.part_size);
    for (std::size_t k = 0; k < 3; ++k) {
      owner_[k].assign(n, kNone);
      free_[k].resize(n);
      std::iota(free_[k].begin(), free_[k].end(), std::size_t{0});
      slot_[k] = free_[k];
    }
    evicted_at_.assign(h_.edges.size(), 0);  // 0: never evicted
    std::vector<std::size_t> order(h_.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      if (conflict_count(i) == 0) insert(i);
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::uint64_t step = 1; step <= steps && !free_[0].empty(); ++step) {
      const bool noisy = unit(rng) < kNoise;
      std::size_t choice = kNone;
      std::size_t fallback = kNone;
      int best = 3;
      std::size_t ties = 0;
      std::size_t seen = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t v : free_[k]) {
          for (std::size_t e : incident_[k][v]) {
            if (std::uniform_int_distribution<std::size_t>(0, seen++)(rng) == 0) fallback = e;
            if (noisy) continue;
            const int c = conflict_count(e);
            if (c > 0 && evicted_at_[e] != 0 && evicted_at_[e] + kTenure > step) continue;
            if (c < best) {
              best = c;
              choice = e;
              ties = 1;
            } else if (c == best &&
                       std::uniform_int_distribution<std::size_t>(0, ties++)(rng) == 0) {
              choice = e;
            }
          }
        }
      }
      if (choice == kNone) choice = fallback;
      for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t old = owner_[k][static_cast<std::size_t>(h_.edges[choice][k])];
        if (old != kNone) {
          remove(old);
          evicted_at_[old] = step;
        }
      }
      insert(choice);
    }
    if (!free_[0].empty()) return std::nullopt;
    std::vector<Triple> out;
    for (std::size_t x = 0; x < n; ++x) out.push_back(h_.edges[owner_[0][x]]);
    return out;
  }

 private:
  static constexpr std::size_t kNone = SIZE_MAX;
  static constexpr double kNoise = 0.02;
  static constexpr std::uint64_t kTenure = 10;

  int conflict_count(std::size_t e) const {
    const Triple& t = h_.edges[e];
    const std::size_t a = owner_[0][static_cast<std::size_t>(t[0])];
    const std::size_t b = owner_[1][static_cast<std::size_t>(t[1])];
    const std::size_t c = owner_[2][static_cast<std::size_t>(t[2])];
    int count = a != kNone;
    if (b != kNone && b != a) ++count;
    if (c != kNone && c != a && c != b) ++count;
    return count;
  }

  void take(std::size_t k, std::size_t v, std::size_t e) {
    owner_[k][v] = e;
    const std::size_t last = free_[k].back();
    free_[k][slot_[k][v]] = last;
    slot_[k][last] = slot_[k][v];
    free_[k].pop_back();
  }

  void release(std::size_t k, std::size_t v) {
    owner_[k][v] = kNone;
    slot_[k][v] = free_[k].size();
    free_[k].push_back(v);
  }

  void insert(std::size_t e) {
    for (std::size_t k = 0; k < 3; ++k) take(k, static_cast<std::size_t>(h_.edges[e][k]), e);
  }

  void remove(std::size_t e) {
    for (std::size_t k = 0; k < 3; ++k) release(k, static_cast<std::size_t>(h_.edges[e][k]));
  }

  const RelatorHypergraph& h_;
  std::array<std::vector<std::vector<std::size_t>>, 3> incident_;
  std::array<std::vector<std::size_t>, 3> owner_;
  std::array<std::vector<std::size_t>, 3> free_;
  std::array<std::vector<std::size_t>, 3> slot_;
  std::vector<std::uint64_t> evicted_at_;
};

}  // namespace

MatchResult find_perfect_matching(const RelatorHypergraph& h, MatchMode mode, Rng& rng,
                                  const MatchBudget& budget) {
  if (mode == MatchMode::exact) {
    const int cap = std::min(budget.exact_part_cap, 64);
    if (h.part_size > cap) {
      throw MatchingError("exact matching limited to part size " + std::to_string(cap));
    }
    return ExactSearch(h, budget.exact_nodes).run();
  }
  if (h.part_size == 0) return found(h, {});
  if (static_cast<int>(h.edges.size()) < h.part_size) return {MatchStatus::not_found, std::nullopt};
  LocalSearch search(h);
  if (search.has_isolated_vertex()) return {MatchStatus::not_found, std::nullopt};
  const std::uint64_t steps =
      budget.steps_per_restart ? budget.steps_per_restart : 50 * static_cast<std::uint64_t>(h.part_size);
  for (int restart = 0; restart < budget.restarts; ++restart) {
    if (auto edges = search.attempt(rng, steps)) return found(h, std::move(*edges));
  }
  return {MatchStatus::not_found, std::nullopt};
}

MatchingPermutations matching_to_permutations(const Matching& mt, int part_size) {
  if (part_size % 2 != 0) throw MatchingError("permutations need an even part size");
  const auto n = static_cast<std::size_t>(part_size);
  if (mt.edges.size() != n) throw MatchingError("matching is not perfect");
  PermutationPair pair{std::vector<int>(n, -1), std::vector<int>(n, -1)};
  for (const Triple& e : mt.edges) {
    for (int x : e) {
      if (x < 0 || x >= part_size) throw MatchingError("matching vertex out of range");
    }
    auto& slot = pair.first[static_cast<std::size_t>(e[0])];
    if (slot != -1) throw MatchingError("matching covers a V1 vertex twice");
    slot = e[1];
    pair.second[static_cast<std::size_t>(e[0])] = e[2];
  }
  if (!is_bijection(pair.first) || !is_bijection(pair.second)) {
    throw MatchingError("matching does not induce bijections");
  }
  MatchingPermutations out{{part_size / 2, {std::move(pair)}}, false};
  out.reduced = satisfies_reduced_constraints(out.pairs);
  return out;
}

ExtractResult extract_permutation_subsets(const Presentation& p, int v, MatchMode mode, Rng& rng,
                                          const MatchBudget& budget) {
  if (v < 1) throw MatchingError("v must be >= 1");
  const int m = p.generator_count;
  for (const Word& r : p.relators) {
    if (r.size() != 3) {
      throw MatchingError("relator '" + to_string(r) + "' does not have length 3");
    }
  }
  ExtractResult out;
  if (p.relators.size() < static_cast<std::size_t>(2 * m) * static_cast<std::size_t>(v)) {
    return out;
  }
  PermutationPairSet set{m, {}};
  for (int part = 0; part < v; ++part) {
    Presentation sub{m, {}, p.model_tag};
    std::vector<std::size_t> indices;
    for (std::size_t i = static_cast<std::size_t>(part); i < p.relators.size();
         i += static_cast<std::size_t>(v)) {
      sub.relators.push_back(p.relators[i]);
      indices.push_back(i);
    }
    const auto result = find_perfect_matching(build_hypergraph(sub), mode, rng, budget);
    if (result.status != MatchStatus::found) return out;
    auto perms = matching_to_permutations(*result.matching, 2 * m);
    set.pairs.push_back(std::move(perms.pairs.pairs.front()));
    std::vector<std::size_t> used;
    for (const Triple& e : result.matching->edges) {
      const Word w = triple_word(e, m);
      for (std::size_t j = 0; j < sub.relators.size(); ++j) {
        if (sub.relators[j] == w) {
          used.push_back(indices[j]);
          break;
        }
      }
    }
    out.used_relators.push_back(std::move(used));
  }
  out.status = ExtractStatus::found;
  out.pairs = std::move(set);
  return out;
}

RelatorHypergraph sample_hypergraph(int part_size, std::int64_t M, bool reduced, Rng& rng) {
  if (part_size < 1) throw MatchingError("part size must be >= 1");
  if (reduced && part_size % 2 != 0) throw MatchingError("reduced edges need an even part size");
  const std::int64_t n = part_size;
  const std::int64_t total =
      reduced ? static_cast<std::int64_t>(count_cyclically_reduced(part_size / 2, 3)) : n * n * n;
  if (M < 0 || M > total) {
    throw MatchingError("edge count M must lie in [0, " + std::to_string(total) + "]");
  }
  auto decode = [&](std::int64_t id) {
    return Triple{static_cast<int>(id / (n * n)), static_cast<int>((id / n) % n),
                  static_cast<int>(id % n)};
  };
  RelatorHypergraph h{part_size, {}};
  std::unordered_set<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(M) * 2);
  if (reduced) {
    // Rejection: reduced triples are a constant fraction of all triples.
    std::uniform_int_distribution<std::int64_t> any(0, n * n * n - 1);
    while (static_cast<std::int64_t>(chosen.size()) < M) {
      const std::int64_t id = any(rng);
      if (is_reduced_edge(decode(id), part_size)) chosen.insert(id);
    }
  } else {
    for (std::int64_t j = total - M; j < total; ++j) {
      const std::int64_t t = std::uniform_int_distribution<std::int64_t>(0, j)(rng);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
  }
  std::vector<std::int64_t> ids(chosen.begin(), chosen.end());
  std::sort(ids.begin(), ids.end());
  for (std::int64_t id : ids) h.edges.push_back(decode(id));
  return h;
}

std::uint64_t derangement_count(int n) {
  if (n < 0) throw MatchingError("n must be >= 0");
  if (n > 20) throw MatchingError("derangement count overflows for n > 20");
  std::uint64_t prev2 = 1;  // D(0)
  std::uint64_t prev1 = 0;  // D(1)
  if (n == 0) return prev2;
  for (int k = 2; k <= n; ++k) {
    const std::uint64_t next = static_cast<std::uint64_t>(k - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = next;
  }
  return prev1;
}

std::uint64_t count_avoiding(const std::vector<std::vector<int>>& forbidden) {
  const auto n = forbidden.size();
  if (n > 20) throw MatchingError("count_avoiding limited to n <= 20");
  std::vector<std::uint32_t> allowed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    allowed[i] = (1u << n) - 1;
    for (int f : forbidden[i]) allowed[i] &= ~(1u << f);
  }
  std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
  ways[0] = 1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!ways[mask]) continue;
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    if (row == n) continue;
    std::uint32_t options = allowed[row] & ~mask;
    while (options) {
      const std::uint32_t low = options & (~options + 1);
      ways[mask | low] += ways[mask];
      options ^= low;
    }
  }
  return ways.back();
}

namespace {

std::vector<std::vector<int>> forbidden_images(int n, ForbiddenPattern pattern) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)].push_back(i);
    if (pattern == ForbiddenPattern::menage) out[static_cast<std::size_t>(i)].push_back((i + 1) % n);
  }
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

double derangement_fraction(int n, ForbiddenPattern pattern) {
  if (n < 1) throw MatchingError("n must be >= 1");
  if (n > 12) throw MatchingError("exact mode limited to n <= 12");
  const std::uint64_t count = pattern == ForbiddenPattern::derangement
                                  ? derangement_count(n)
                                  : count_avoiding(forbidden_images(n, pattern));
  return static_cast<double>(count) / factorial(n);
}

double derangement_fraction(int n, ForbiddenPattern pattern, DerangementSample sample) {
  if (n < 1) throw MatchingError("n must be >= 1");
  if (sample.trials < 1 || sample.rng == nullptr) {
    throw MatchingError("sample mode needs trials >= 1 and an rng");
  }
  const auto forbidden = forbidden_images(n, pattern);
  int hits = 0;
  for (int t = 0; t < sample.trials; ++t) {
    const auto perm = random_permutation(n, *sample.rng);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const auto& f = forbidden[static_cast<std::size_t>(i)];
      ok = std::find(f.begin(), f.end(), perm[static_cast<std::size_t>(i)]) == f.end();
    }
    hits += ok ? 1 : 0;
  }
  return static_cast<double>(hits) / sample.trials;
}

namespace {

std::string vertex_label(int x, int part_size) {
  if (part_size % 2 == 0) return to_string(Letter::from_symbol_index(x, part_size / 2));
  return std::to_string(x);
}

int parse_vertex(const std::string& token, int part_size) {
  int x = -1;
  if (!token.empty() && (token[0] == 'a' || token[0] == 'A')) {
    if (part_size % 2 != 0) throw MatchingError("symbol labels need an even part size");
    const Letter l = parse_letter(token);
    if (l.generator() > part_size / 2) throw MatchingError("label '" + token + "' out of range");
    x = l.symbol_index(part_size / 2);
  } else {
    try {
      std::size_t used = 0;
      x = std::stoi(token, &used);
      if (used != token.size()) x = -1;
    } catch (const std::exception&) {
      x = -1;
    }
  }
  if (x < 0 || x >= part_size) throw MatchingError("bad vertex label '" + token + "'");
  return x;
}

}  // namespace

void write_hypergraph(std::ostream& out, const RelatorHypergraph& h) {
  out << "parts=" << h.part_size << '\n';
  for (const Triple& e : h.edges) {
    out << vertex_label(e[0], h.part_size) << ' ' << vertex_label(e[1], h.part_size) << ' '
        << vertex_label(e[2], h.part_size) << '\n';
  }
}

RelatorHypergraph read_hypergraph(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
  }
  if (line.rfind("parts=", 0) != 0) throw MatchingError("expected 'parts=<int>' header");
  RelatorHypergraph h;
  try {
    h.part_size = std::stoi(line.substr(6));
  } catch (const std::exception&) {
    throw MatchingError("bad part size in '" + line + "'");
  }
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!(row >> a >> b >> c)) throw MatchingError("bad edge line '" + line + "'");
    h.edges.push_back({parse_vertex(a, h.part_size), parse_vertex(b, h.part_size),
                       parse_vertex(c, h.part_size)});
  }
  h.normalize();
  return h;
}

std::string to_string(MatchStatus s) {
  switch (s) {
    case MatchStatus::found: return "found";
    case MatchStatus::not_found: return "not_found";
    case MatchStatus::proved_none: return "proved_none";
    case MatchStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

}  // namespace kazhdan
