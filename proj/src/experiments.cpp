#include "kazhdan/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "kazhdan/linkgraph.hpp"
#include "kazhdan/spectral.hpp"

namespace kazhdan {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::criterion: return "criterion";
    case ExperimentKind::matching: return "matching";
    case ExperimentKind::gap: return "gap";
    case ExperimentKind::duplicates: return "duplicates";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto k : {ExperimentKind::criterion, ExperimentKind::matching, ExperimentKind::gap,
                 ExperimentKind::duplicates}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t cell, std::uint64_t trial) {
  return splitmix64(master_seed ^ splitmix64(cell ^ splitmix64(trial)));
}

namespace {

template <typename T>
const T& require(const std::optional<T>& field, const char* name, std::size_t cell) {
  if (!field) {
    throw ConfigError("cell " + std::to_string(cell) + ": missing parameter " + name);
  }
  return *field;
}

void check_density(double d, std::size_t cell) {
  if (!(d > 0.0 && d < 1.0)) {
    throw ConfigError("cell " + std::to_string(cell) + ": d must lie in (0, 1)");
  }
}

}  // namespace

void validate(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (cfg.cells.empty()) throw ConfigError("parameter grid is empty");
  for (std::size_t i = 0; i < cfg.cells.size(); ++i) {
    const Cell& c = cfg.cells[i];
    switch (cfg.kind) {
      case ExperimentKind::criterion:
      case ExperimentKind::duplicates:
        if (c.model != "triangular" && c.model != "triangular_positive") {
          throw ConfigError("cell " + std::to_string(i) + ": model must be triangular or triangular_positive");
        }
        if (require(c.m, "m", i) < 2) throw ConfigError("cell " + std::to_string(i) + ": m must be >= 2");
        check_density(require(c.d, "d", i), i);
        break;
      case ExperimentKind::matching: {
        if (c.model != "G3" && c.model != "G3_reduced") {
          throw ConfigError("cell " + std::to_string(i) + ": model must be G3 or G3_reduced");
        }
        const int n = require(c.n, "n", i);
        if (n < 1) throw ConfigError("cell " + std::to_string(i) + ": n must be >= 1");
        if (c.model == "G3_reduced" && n % 2 != 0) {
          throw ConfigError("cell " + std::to_string(i) + ": G3_reduced needs an even part size n");
        }
        if (require(c.M, "M", i) < 0) throw ConfigError("cell " + std::to_string(i) + ": M must be >= 0");
        break;
      }
      case ExperimentKind::gap: {
        const GraphKind kind = parse_graph_kind(c.model);
        if (require(c.n, "n", i) < 1) throw ConfigError("cell " + std::to_string(i) + ": n must be >= 1");
        if (kind == GraphKind::gnp) {
          const double p = require(c.p, "p", i);
          if (!(p > 0.0 && p < 1.0)) throw ConfigError("cell " + std::to_string(i) + ": p must lie in (0, 1)");
        } else if (kind == GraphKind::gnm) {
          const auto M = require(c.M, "M", i);
          const auto n = static_cast<std::int64_t>(*c.n);
          if (M < 1 || M > n * (n - 1) / 2) {
            throw ConfigError("cell " + std::to_string(i) + ": M out of range");
          }
        } else if (require(c.v, "v", i) < 1) {
          throw ConfigError("cell " + std::to_string(i) + ": v must be >= 1");
        }
        break;
      }
    }
  }
}

namespace {

TrialRecord base_record(const SweepConfig& cfg, std::size_t cell_index, int trial) {
  const Cell& c = cfg.cells[cell_index];
  TrialRecord r;
  r.experiment = to_string(cfg.kind);
  r.model = c.model;
  r.n = c.n;
  r.m = c.m;
  r.l = c.l;
  r.d = c.d;
  r.v = c.v;
  r.M = c.M;
  r.p = c.p;
  r.trial = trial;
  r.seed = derive_seed(cfg.master_seed, cell_index, static_cast<std::uint64_t>(trial));
  return r;
}

void fill_spectral(TrialRecord& r, const SpectralReport& s) {
  r.lambda1 = s.lambda1;
  r.connected = s.connected;
  r.min_degree = s.min_degree;
  r.max_degree = s.max_degree;
  r.mean_degree = s.mean_degree;
}

void criterion_trial(const SweepConfig&, const Cell& c, TrialRecord& r, Rng& rng) {
  const bool positive = c.model == "triangular_positive";
  const Presentation p = sample_triangular(*c.m, *c.d, rng, positive);
  const LinkGraph link = build_link_graph(p);
  const SpectralReport s = spectral_report(link.graph);
  fill_spectral(r, s);
  r.criterion = s.criterion;
  r.bipartite = is_bipartite(link.graph);
  r.edges = static_cast<std::int64_t>(link.graph.edge_count());
  r.duplicates = static_cast<std::int64_t>(collapse_duplicates(link.graph).removed.edge_count());
}

void matching_trial(const SweepConfig& cfg, const Cell& c, TrialRecord& r, Rng& rng) {
  const bool reduced = c.model == "G3_reduced";
  const RelatorHypergraph h = sample_hypergraph(*c.n, *c.M, reduced, rng);
  const MatchResult result = find_perfect_matching(h, cfg.mode, rng, cfg.budget);
  r.matching = to_string(result.status);
  r.edges = static_cast<std::int64_t>(h.edges.size());
}

void gap_trial(const SweepConfig& cfg, const Cell& c, TrialRecord& r, Rng& rng) {
  const GraphKind kind = parse_graph_kind(c.model);
  GraphParams params{kind, *c.n, c.v.value_or(0), c.p.value_or(0.0), c.M.value_or(0)};
  const Multigraph g = sample_graph(params, rng);
  const SpectralReport s = spectral_report(g);
  fill_spectral(r, s);
  r.edges = static_cast<std::int64_t>(g.edge_count());
  switch (kind) {
    case GraphKind::configuration:
    case GraphKind::configuration_reduced:
      r.bound = bound(FriedmanBound{*c.v, cfg.friedman_c});
      break;
    case GraphKind::bipartite_regular:
      r.bound = bound(FriedmanBipartiteBound{*c.v, cfg.bipartite_eps});
      break;
    case GraphKind::gnp:
      r.bound = bound(ChungBound{static_cast<double>(*c.n), *c.p, cfg.chung_g});
      break;
    case GraphKind::gnm: {
      const double pairs = 0.5 * static_cast<double>(*c.n) * (*c.n - 1);
      const double p = static_cast<double>(*c.M) / pairs;
      if (p < 1.0) r.bound = bound(ChungBound{static_cast<double>(*c.n), p, cfg.chung_g});
      break;
    }
  }
}

void duplicate_trial(const SweepConfig&, const Cell& c, TrialRecord& r, Rng& rng) {
  const Presentation p = sample_triangular(*c.m, *c.d, rng, c.model == "triangular_positive");
  const LinkParts parts = split_link_parts(p);
  std::int64_t duplicates = 0;
  std::int64_t edges = 0;
  int removed_max = 0;
  for (const Multigraph& part : parts.parts) {
    const CollapsedGraph collapsed = collapse_duplicates(part);
    duplicates += static_cast<std::int64_t>(collapsed.removed.edge_count());
    edges += static_cast<std::int64_t>(part.edge_count());
    const auto deg = collapsed.removed.degrees();
    if (!deg.empty()) removed_max = std::max(removed_max, *std::max_element(deg.begin(), deg.end()));
  }
  r.duplicates = duplicates;
  r.edges = edges;
  r.removed_max_degree = removed_max;
}

}  // namespace

TrialRecord run_trial(const SweepConfig& cfg, std::size_t cell_index, int trial) {
  TrialRecord r = base_record(cfg, cell_index, trial);
  Rng rng(r.seed);
  const Cell& c = cfg.cells[cell_index];
  const auto start = std::chrono::steady_clock::now();
  switch (cfg.kind) {
    case ExperimentKind::criterion: criterion_trial(cfg, c, r, rng); break;
    case ExperimentKind::matching: matching_trial(cfg, c, r, rng); break;
    case ExperimentKind::gap: gap_trial(cfg, c, r, rng); break;
    case ExperimentKind::duplicates: duplicate_trial(cfg, c, r, rng); break;
  }
  if (cfg.record_runtime) {
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

std::vector<TrialRecord> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const std::size_t total = cfg.cells.size() * static_cast<std::size_t>(cfg.trials);
  std::vector<TrialRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      try {
        records[task] = run_trial(cfg, task / static_cast<std::size_t>(cfg.trials),
                                  static_cast<int>(task % static_cast<std::size_t>(cfg.trials)));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

namespace {

std::vector<TrialRecord> run_kind(SweepConfig cfg, ExperimentKind kind) {
  cfg.kind = kind;
  return run_sweep(cfg);
}

}  // namespace

std::vector<TrialRecord> run_criterion_sweep(const SweepConfig& cfg) {
  return run_kind(cfg, ExperimentKind::criterion);
}
std::vector<TrialRecord> run_matching_sweep(const SweepConfig& cfg) {
  return run_kind(cfg, ExperimentKind::matching);
}
std::vector<TrialRecord> run_gap_sweep(const SweepConfig& cfg) {
  return run_kind(cfg, ExperimentKind::gap);
}
std::vector<TrialRecord> run_duplicate_stats(const SweepConfig& cfg) {
  return run_kind(cfg, ExperimentKind::duplicates);
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns{
      "experiment", "model",      "n",          "m",           "l",
      "d",          "v",          "M",          "p",           "trial",
      "seed",       "lambda1",    "connected",  "criterion",   "matching",
      "duplicates", "runtime_ms", "min_degree", "max_degree",  "mean_degree",
      "bound",      "edges",      "removed_max_degree",        "bipartite"};
  return columns;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <typename T>
std::string cell_text(const std::optional<T>& x) {
  if (!x) return "";
  if constexpr (std::is_same_v<T, double>) {
    return fmt(*x);
  } else if constexpr (std::is_same_v<T, bool>) {
    return *x ? "true" : "false";
  } else if constexpr (std::is_same_v<T, std::string>) {
    return *x;
  } else {
    return std::to_string(*x);
  }
}

std::vector<std::string> row(const TrialRecord& r) {
  return {r.experiment,
          r.model,
          cell_text(r.n),
          cell_text(r.m),
          cell_text(r.l),
          cell_text(r.d),
          cell_text(r.v),
          cell_text(r.M),
          cell_text(r.p),
          std::to_string(r.trial),
          std::to_string(r.seed),
          cell_text(r.lambda1),
          cell_text(r.connected),
          cell_text(r.criterion),
          cell_text(r.matching),
          cell_text(r.duplicates),
          cell_text(r.runtime_ms),
          cell_text(r.min_degree),
          cell_text(r.max_degree),
          cell_text(r.mean_degree),
          cell_text(r.bound),
          cell_text(r.edges),
          cell_text(r.removed_max_degree),
          cell_text(r.bipartite)};
}

template <typename T>
nlohmann::ordered_json json_value(const std::optional<T>& x) {
  if (!x) return nullptr;
  return nlohmann::ordered_json(*x);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const TrialRecord& r : records) {
    const auto cells = row(r);
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }
}

void write_jsonl(std::ostream& out, const std::vector<TrialRecord>& records) {
  for (const TrialRecord& r : records) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    j["model"] = r.model;
    j["n"] = json_value(r.n);
    j["m"] = json_value(r.m);
    j["l"] = json_value(r.l);
    j["d"] = json_value(r.d);
    j["v"] = json_value(r.v);
    j["M"] = json_value(r.M);
    j["p"] = json_value(r.p);
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["lambda1"] = json_value(r.lambda1);
    j["connected"] = json_value(r.connected);
    j["criterion"] = json_value(r.criterion);
    j["matching"] = json_value(r.matching);
    j["duplicates"] = json_value(r.duplicates);
    j["runtime_ms"] = json_value(r.runtime_ms);
    j["min_degree"] = json_value(r.min_degree);
    j["max_degree"] = json_value(r.max_degree);
    j["mean_degree"] = json_value(r.mean_degree);
    j["bound"] = json_value(r.bound);
    j["edges"] = json_value(r.edges);
    j["removed_max_degree"] = json_value(r.removed_max_degree);
    j["bipartite"] = json_value(r.bipartite);
    out << j.dump() << '\n';
  }
}

std::vector<CellSummary> summarize(const SweepConfig& cfg, const std::vector<TrialRecord>& records) {
  std::vector<CellSummary> out(cfg.cells.size());
  std::vector<std::vector<double>> lambdas(cfg.cells.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].cell_index = i;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const TrialRecord& r = records[k];
    const std::size_t i = k / static_cast<std::size_t>(cfg.trials);
    CellSummary& s = out[i];
    ++s.trials;
    const bool success = r.criterion.value_or(false) || r.matching.value_or("") == "found";
    s.success_fraction += success ? 1.0 : 0.0;
    s.connected_fraction += r.connected.value_or(false) ? 1.0 : 0.0;
    s.mean_duplicates += static_cast<double>(r.duplicates.value_or(0));
    if (r.lambda1) lambdas[i].push_back(*r.lambda1);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    CellSummary& s = out[i];
    if (s.trials == 0) continue;
    s.success_fraction /= s.trials;
    s.connected_fraction /= s.trials;
    s.mean_duplicates /= s.trials;
    auto& ls = lambdas[i];
    if (!ls.empty()) {
      std::sort(ls.begin(), ls.end());
      const std::size_t h = ls.size() / 2;
      s.median_lambda1 = ls.size() % 2 ? ls[h] : 0.5 * (ls[h - 1] + ls[h]);
    }
  }
  return out;
}

std::vector<std::size_t> monotonicity_violations(const SweepConfig& cfg,
                                                 const std::vector<CellSummary>& summary) {
  const double tolerance = 2.0 / std::sqrt(static_cast<double>(cfg.trials));
  std::vector<std::size_t> order(summary.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Cell& ca = cfg.cells[a];
    const Cell& cb = cfg.cells[b];
    return std::tie(ca.model, ca.m, ca.n, ca.d, ca.M) < std::tie(cb.model, cb.m, cb.n, cb.d, cb.M);
  });
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Cell& prev = cfg.cells[order[k - 1]];
    const Cell& cur = cfg.cells[order[k]];
    if (prev.model != cur.model || prev.m != cur.m || prev.n != cur.n) continue;
    if (summary[order[k]].success_fraction + tolerance < summary[order[k - 1]].success_fraction) {
      out.push_back(order[k]);
    }
  }
  return out;
}

}  // namespace kazhdan
