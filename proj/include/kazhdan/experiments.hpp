#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kazhdan/matching.hpp"
#include "kazhdan/models.hpp"

namespace kazhdan {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { criterion, matching, gap, duplicates };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

// One grid point. Only the fields meaningful for the experiment are set.
struct Cell {
  std::string model;  // triangular, triangular_positive, G3, G3_reduced, or a GraphKind name
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> l;
  std::optional<double> d;
  std::optional<int> v;
  std::optional<std::int64_t> M;
  std::optional<double> p;
};

struct SweepConfig {
  ExperimentKind kind = ExperimentKind::criterion;
  std::vector<Cell> cells;
  int trials = 20;
  std::uint64_t master_seed = 1;
  int jobs = 1;
  bool record_runtime = false;  // runtime_ms breaks byte-identical output when set
  MatchMode mode = MatchMode::heuristic;
  MatchBudget budget;
  double friedman_c = 0.0;
  double bipartite_eps = 0.0;
  double chung_g = 0.0;
};

void validate(const SweepConfig& cfg);

struct TrialRecord {
  std::string experiment;
  std::string model;
  std::optional<int> n, m, l;
  std::optional<double> d;
  std::optional<int> v;
  std::optional<std::int64_t> M;
  std::optional<double> p;
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> lambda1;
  std::optional<bool> connected;
  std::optional<bool> criterion;
  std::optional<std::string> matching;
  std::optional<std::int64_t> duplicates;
  std::optional<double> runtime_ms;
  // Columns after the fixed block.
  std::optional<double> min_degree, max_degree, mean_degree;
  std::optional<double> bound;
  std::optional<std::int64_t> edges;
  std::optional<int> removed_max_degree;
  std::optional<bool> bipartite;
};

std::uint64_t splitmix64(std::uint64_t x);

// splitmix64(master ^ splitmix64(cell ^ splitmix64(trial)))
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t cell, std::uint64_t trial);

// Records in canonical (cell, trial) order.
std::vector<TrialRecord> run_criterion_sweep(const SweepConfig& cfg);
std::vector<TrialRecord> run_matching_sweep(const SweepConfig& cfg);
std::vector<TrialRecord> run_gap_sweep(const SweepConfig& cfg);
std::vector<TrialRecord> run_duplicate_stats(const SweepConfig& cfg);
std::vector<TrialRecord> run_sweep(const SweepConfig& cfg);

// Single trial, for reproducing one record from its seed.
TrialRecord run_trial(const SweepConfig& cfg, std::size_t cell_index, int trial);

const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_jsonl(std::ostream& out, const std::vector<TrialRecord>& records);

struct CellSummary {
  std::size_t cell_index = 0;
  int trials = 0;
  double success_fraction = 0.0;  // criterion true, or matching found
  double connected_fraction = 0.0;
  std::optional<double> median_lambda1;
  double mean_duplicates = 0.0;
};

std::vector<CellSummary> summarize(const SweepConfig& cfg, const std::vector<TrialRecord>& records);

// Cells whose success fraction drops by more than 2/sqrt(trials) from the
// previous cell of the same model and size, ordered by d, then M.
std::vector<std::size_t> monotonicity_violations(const SweepConfig& cfg,
                                                 const std::vector<CellSummary>& summary);

}  // namespace kazhdan
