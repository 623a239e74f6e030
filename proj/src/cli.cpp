#include "kazhdan/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "kazhdan/embed.hpp"
#include "kazhdan/linkgraph.hpp"
#include "kazhdan/matching.hpp"
#include "kazhdan/spectral.hpp"

namespace kazhdan::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& flag, const std::string& text) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) {
    throw UsageError(flag, "cannot parse '" + text + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& flag, const std::string& text) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<T>(flag, item));
  return out;
}

double checked_density(const std::string& flag, double d) {
  if (!(d > 0.0 && d < 1.0)) throw UsageError(flag, "d must lie in (0, 1)");
  return d;
}

// "<k>nlogn" means floor(k * n * ln n).
std::int64_t parse_edge_count(const std::string& text, int n) {
  const std::string suffix = "nlogn";
  if (text.size() > suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
    const double k = parse_number<double>("--M", text.substr(0, text.size() - suffix.size()));
    return static_cast<std::int64_t>(std::floor(k * n * std::log(static_cast<double>(n))));
  }
  if (text == "n/2") return n / 2;
  return parse_number<std::int64_t>("--M", text);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

}  // namespace

NormalizedSweep validate_config(const SweepFlags& flags) {
  NormalizedSweep out;
  SweepConfig& cfg = out.config;
  if (flags.experiment.empty()) throw UsageError("--experiment", "required");
  try {
    cfg.kind = parse_experiment_kind(flags.experiment);
  } catch (const ConfigError& e) {
    throw UsageError("--experiment", e.what());
  }
  cfg.trials = flags.trials.empty() ? 20 : parse_number<int>("--trials", flags.trials);
  if (cfg.trials < 1) throw UsageError("--trials", "must be >= 1");
  cfg.master_seed = flags.seed.empty() ? 1 : parse_number<std::uint64_t>("--seed", flags.seed);
  cfg.jobs = flags.jobs.empty() ? 1 : parse_number<int>("--jobs", flags.jobs);
  if (cfg.jobs < 1) throw UsageError("--jobs", "must be >= 1");
  const std::string mode = flags.mode.empty() ? "heuristic" : flags.mode;
  if (mode != "heuristic" && mode != "exact") throw UsageError("--mode", "must be exact or heuristic");
  cfg.mode = mode == "exact" ? MatchMode::exact : MatchMode::heuristic;
  out.format = flags.format.empty() ? "csv" : flags.format;
  if (out.format != "csv" && out.format != "jsonl") throw UsageError("--format", "must be csv or jsonl");
  cfg.record_runtime = flags.timing;
  if (!flags.friedman_c.empty()) cfg.friedman_c = parse_number<double>("--c", flags.friedman_c);
  if (!flags.bipartite_eps.empty()) cfg.bipartite_eps = parse_number<double>("--eps", flags.bipartite_eps);
  if (!flags.chung_g.empty()) cfg.chung_g = parse_number<double>("--g", flags.chung_g);
  if (cfg.friedman_c < 0) throw UsageError("--c", "must be >= 0");
  if (cfg.bipartite_eps < 0) throw UsageError("--eps", "must be >= 0");
  if (cfg.chung_g < 0) throw UsageError("--g", "must be >= 0");

  std::vector<std::string> models;
  switch (cfg.kind) {
    case ExperimentKind::criterion:
    case ExperimentKind::duplicates: {
      models = split_list(flags.model.empty() ? "triangular" : flags.model);
      for (const auto& model : models) {
        if (model != "triangular" && model != "triangular_positive") {
          throw UsageError("--model", "'" + model + "' is not triangular or triangular_positive");
        }
      }
      if (flags.m.empty()) throw UsageError("--m", "required for experiment " + flags.experiment);
      const auto ms = parse_list<int>("--m", flags.m);
      std::vector<double> ds = flags.d.empty() ? std::vector<double>{0.40, 0.45, 0.48}
                                               : parse_list<double>("--d", flags.d);
      for (const auto& model : models) {
        for (int m : ms) {
          if (m < 2) throw UsageError("--m", "must be >= 2");
          for (double d : ds) cfg.cells.push_back({model, {}, m, {}, checked_density("--d", d), {}, {}, {}});
        }
      }
      out.echo.push_back("m=" + join(split_list(flags.m)));
      out.echo.push_back("d=" + (flags.d.empty() ? std::string("0.4,0.45,0.48") : join(split_list(flags.d))));
      break;
    }
    case ExperimentKind::matching: {
      models = split_list(flags.model.empty() ? "G3" : flags.model);
      if (flags.n.empty()) throw UsageError("--n", "required for experiment matching");
      if (flags.M.empty()) throw UsageError("--M", "required for experiment matching");
      const auto ns = parse_list<int>("--n", flags.n);
      for (const auto& model : models) {
        if (model != "G3" && model != "G3_reduced") throw UsageError("--model", "'" + model + "' is not G3 or G3_reduced");
        for (int n : ns) {
          if (n < 1) throw UsageError("--n", "must be >= 1");
          if (model == "G3_reduced" && n % 2) throw UsageError("--n", "G3_reduced needs an even part size");
          for (const auto& token : split_list(flags.M)) {
            const std::int64_t M = parse_edge_count(token, n);
            if (M < 0) throw UsageError("--M", "must be >= 0");
            cfg.cells.push_back({model, n, {}, {}, {}, {}, M, {}});
          }
        }
      }
      out.echo.push_back("n=" + join(split_list(flags.n)));
      out.echo.push_back("M=" + join(split_list(flags.M)));
      break;
    }
    case ExperimentKind::gap: {
      if (flags.model.empty()) throw UsageError("--model", "required for experiment gap");
      models = split_list(flags.model);
      if (flags.n.empty()) throw UsageError("--n", "required for experiment gap");
      const auto ns = parse_list<int>("--n", flags.n);
      for (const auto& model : models) {
        GraphKind kind{};
        try {
          kind = parse_graph_kind(model);
        } catch (const ModelError& e) {
          throw UsageError("--model", e.what());
        }
        for (int n : ns) {
          if (n < 1) throw UsageError("--n", "must be >= 1");
          if (kind == GraphKind::gnp) {
            if (flags.p.empty()) throw UsageError("--p", "required for gnp");
            for (double p : parse_list<double>("--p", flags.p)) {
              if (!(p > 0.0 && p < 1.0)) throw UsageError("--p", "must lie in (0, 1)");
              cfg.cells.push_back({model, n, {}, {}, {}, {}, {}, p});
            }
          } else if (kind == GraphKind::gnm) {
            if (flags.M.empty()) throw UsageError("--M", "required for gnm");
            for (const auto& token : split_list(flags.M)) {
              const std::int64_t M = parse_edge_count(token, n);
              if (M < 1 || M > static_cast<std::int64_t>(n) * (n - 1) / 2) {
                throw UsageError("--M", "out of range for n=" + std::to_string(n));
              }
              cfg.cells.push_back({model, n, {}, {}, {}, {}, M, {}});
            }
          } else {
            if (flags.v.empty()) throw UsageError("--v", "required for " + model);
            for (int v : parse_list<int>("--v", flags.v)) {
              if (v < 1) throw UsageError("--v", "must be >= 1");
              cfg.cells.push_back({model, n, {}, {}, {}, v, {}, {}});
            }
          }
        }
      }
      out.echo.push_back("n=" + join(split_list(flags.n)));
      if (!flags.v.empty()) out.echo.push_back("v=" + join(split_list(flags.v)));
      if (!flags.M.empty()) out.echo.push_back("M=" + join(split_list(flags.M)));
      if (!flags.p.empty()) out.echo.push_back("p=" + join(split_list(flags.p)));
      out.echo.push_back("c=" + std::to_string(cfg.friedman_c));
      out.echo.push_back("eps=" + std::to_string(cfg.bipartite_eps));
      out.echo.push_back("g=" + std::to_string(cfg.chung_g));
      break;
    }
  }
  if (cfg.cells.empty()) throw UsageError("--" + std::string(cfg.kind == ExperimentKind::gap ? "n" : "m"), "parameter grid is empty");
  out.echo.insert(out.echo.begin(), {"experiment=" + flags.experiment, "model=" + join(models),
                                     "trials=" + std::to_string(cfg.trials),
                                     "seed=" + std::to_string(cfg.master_seed), "mode=" + mode,
                                     "format=" + out.format});
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw UsageError("--" + flags.experiment, e.what());
  }
  return out;
}

namespace {

struct ModelFlags {
  std::string model;
  std::optional<int> m, n, l, v;
  std::optional<std::string> M;
  std::optional<double> d, p;
  std::optional<double> scale;
  std::optional<std::uint64_t> count;
  std::uint64_t seed = 1;
};

void add_model_flags(CLI::App* sub, ModelFlags& f) {
  sub->add_option("--model", f.model, "Model name");
  sub->add_option("--m", f.m, "Generator count (triangular models)");
  sub->add_option("--n", f.n, "Generator count / graph size / part size");
  sub->add_option("--l", f.l, "Relator length");
  sub->add_option("--d", f.d, "Density in (0, 1)");
  sub->add_option("--v", f.v, "Number of permutations / pairs");
  sub->add_option("--M", f.M, "Edge count (integer, or <k>nlogn)");
  sub->add_option("--p", f.p, "Edge probability");
  sub->add_option("--scale", f.scale, "Relator count scale (gromov_restricted)");
  sub->add_option("--count", f.count, "Override the relator count");
  sub->add_option("--seed", f.seed, "RNG seed");
}

template <typename T>
T need(const std::optional<T>& x, const std::string& flag, const std::string& model) {
  if (!x) throw UsageError(flag, "required for model " + model);
  return *x;
}

int need_at_least(const std::optional<int>& x, const std::string& flag, const std::string& model, int lo) {
  const int value = need(x, flag, model);
  if (value < lo) throw UsageError(flag, "must be >= " + std::to_string(lo));
  return value;
}

int check_block_length(const std::optional<int>& l, const std::string& model, int minimum) {
  const int value = need(l, "--l", model);
  if (value < minimum || value % 3 != 0) {
    throw UsageError("--l", "must be a multiple of 3 and >= " + std::to_string(minimum) +
                                " for the embedding (got " + std::to_string(value) + ")");
  }
  return value;
}

struct Sampled {
  std::optional<Presentation> presentation;
  std::optional<Multigraph> graph;
  std::optional<RelatorHypergraph> hypergraph;
};

bool is_graph_model(const std::string& model) {
  try {
    parse_graph_kind(model);
    return true;
  } catch (const ModelError&) {
    return false;
  }
}

Sampled sample_model(const ModelFlags& f) {
  const std::string& model = f.model;
  if (model.empty()) throw UsageError("--model", "required");
  Rng rng(f.seed);
  Sampled out;
  if (model == "gromov") {
    const int n = need_at_least(f.n, "--n", model, 2);
    const int l = need_at_least(f.l, "--l", model, 1);
    const double d = checked_density("--d", need(f.d, "--d", model));
    out.presentation = sample_gromov(n, l, d, rng, f.count);
  } else if (model == "triangular" || model == "triangular_positive") {
    const int m = need_at_least(f.m, "--m", model, 2);
    const double d = checked_density("--d", need(f.d, "--d", model));
    out.presentation = sample_triangular(m, d, rng, model == "triangular_positive", f.count);
  } else if (model == "permutation" || model == "permutation_reduced") {
    const int n = need_at_least(f.n, "--n", model, 1);
    const int v = need_at_least(f.v, "--v", model, 1);
    out.presentation = sample_permutation_model(n, v, rng, model == "permutation_reduced").first;
  } else if (model == "gromov_restricted") {
    const int n = need_at_least(f.n, "--n", model, 2);
    const int l = check_block_length(f.l, model, 3);
    const double d = checked_density("--d", need(f.d, "--d", model));
    const double scale = f.scale.value_or(0.5);
    if (!(scale > 0.0)) throw UsageError("--scale", "must be positive");
    out.presentation = sample_gromov_restricted(WordTable(n, l), d, scale, rng);
  } else if (model == "G3" || model == "G3_reduced") {
    const int n = need_at_least(f.n, "--n", model, 1);
    if (model == "G3_reduced" && n % 2) throw UsageError("--n", "G3_reduced needs an even part size");
    const std::int64_t M = parse_edge_count(need(f.M, "--M", model), n);
    out.hypergraph = sample_hypergraph(n, M, model == "G3_reduced", rng);
  } else if (is_graph_model(model)) {
    GraphParams params;
    params.kind = parse_graph_kind(model);
    params.n = need_at_least(f.n, "--n", model, 1);
    switch (params.kind) {
      case GraphKind::gnp: {
        params.p = need(f.p, "--p", model);
        if (!(params.p >= 0.0 && params.p <= 1.0)) throw UsageError("--p", "must lie in [0, 1]");
        break;
      }
      case GraphKind::gnm:
        params.M = parse_edge_count(need(f.M, "--M", model), params.n);
        if (params.M < 0 || params.M > static_cast<std::int64_t>(params.n) * (params.n - 1) / 2) {
          throw UsageError("--M", "out of range");
        }
        break;
      default:
        params.v = need_at_least(f.v, "--v", model, 1);
    }
    out.graph = sample_graph(params, rng);
  } else {
    throw UsageError("--model", "unknown model '" + model + "'");
  }
  return out;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_presentation(in);
}

// Presentation from --presentation, else sampled from the model flags.
Presentation presentation_input(const std::string& path, const ModelFlags& f) {
  if (!path.empty()) return load_presentation(path);
  Sampled s = sample_model(f);
  if (!s.presentation) throw UsageError("--model", "'" + f.model + "' does not produce a presentation");
  return *s.presentation;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random group presentations, link-graph spectra and the lambda1 > 1/2 criterion"};
  app.require_subcommand(1);

  ModelFlags model_flags;
  std::string out_path, presentation_path, graph_path, hypergraph_path;

  auto* sample = app.add_subcommand("sample", "Sample a presentation, graph or hypergraph");
  add_model_flags(sample, model_flags);
  sample->add_option("--out", out_path);

  int part = 0;
  bool collapse = false;
  auto* link = app.add_subcommand("link", "Build the link graph L(S) or one of its parts");
  add_model_flags(link, model_flags);
  link->add_option("--presentation", presentation_path);
  link->add_option("--part", part, "1, 2 or 3 selects L_i")->check(CLI::Range(0, 3));
  link->add_flag("--collapse", collapse, "Collapse duplicate edges");
  link->add_option("--out", out_path);

  std::string kind_name = "normalized";
  bool as_json = false;
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum of a graph");
  add_model_flags(spectrum, model_flags);
  spectrum->add_option("--graph", graph_path);
  spectrum->add_option("--presentation", presentation_path);
  spectrum->add_option("--kind", kind_name)->check(CLI::IsMember({"normalized", "walk"}));
  spectrum->add_flag("--json", as_json, "Emit the full spectral report");
  spectrum->add_option("--out", out_path);

  auto* criterion = app.add_subcommand("criterion", "Check connected L(S) with lambda1 > 1/2");
  add_model_flags(criterion, model_flags);
  criterion->add_option("--presentation", presentation_path);
  criterion->add_option("--out", out_path);

  std::string mode_name = "heuristic";
  std::optional<int> extract_v;
  MatchBudget budget;
  auto* match = app.add_subcommand("match", "Perfect matching in a relator hypergraph");
  add_model_flags(match, model_flags);
  match->add_option("--hypergraph", hypergraph_path);
  match->add_option("--presentation", presentation_path);
  match->add_option("--mode", mode_name)->check(CLI::IsMember({"exact", "heuristic"}));
  match->add_option("--extract", extract_v, "Extract v permutation pairs from the presentation");
  match->add_option("--restarts", budget.restarts);
  match->add_option("--nodes", budget.exact_nodes);
  match->add_option("--out", out_path);

  bool table_only = false;
  bool restricted = false;
  std::optional<std::string> word_text;
  auto* embed = app.add_subcommand("embed", "Word table, phi images and coset normal forms");
  add_model_flags(embed, model_flags);
  embed->add_flag("--table", table_only, "Print the word table");
  embed->add_option("--word", word_text, "Reduced word for the coset normal form");
  embed->add_option("--presentation", presentation_path, "Positive triangular presentation to map");
  embed->add_flag("--restricted", restricted, "Sample a Gromov presentation restricted to W'_l");
  embed->add_option("--out", out_path);

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "Seeded Monte Carlo sweep");
  sweep->add_option("--experiment", sweep_flags.experiment);
  sweep->add_option("--model", sweep_flags.model);
  sweep->add_option("--m", sweep_flags.m);
  sweep->add_option("--n", sweep_flags.n);
  sweep->add_option("--d", sweep_flags.d);
  sweep->add_option("--v", sweep_flags.v);
  sweep->add_option("--M", sweep_flags.M);
  sweep->add_option("--p", sweep_flags.p);
  sweep->add_option("--trials", sweep_flags.trials);
  sweep->add_option("--seed", sweep_flags.seed);
  sweep->add_option("--jobs", sweep_flags.jobs);
  sweep->add_option("--mode", sweep_flags.mode);
  sweep->add_option("--format", sweep_flags.format);
  sweep->add_option("--c", sweep_flags.friedman_c);
  sweep->add_option("--eps", sweep_flags.bipartite_eps);
  sweep->add_option("--g", sweep_flags.chung_g);
  sweep->add_flag("--timing", sweep_flags.timing, "Record runtime_ms (output no longer reproducible)");
  sweep->add_option("--out", out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return exit_ok;
    }
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (sample->parsed()) {
      Sampled s = sample_model(model_flags);
      Output o(out_path, out);
      if (s.presentation) {
        write_presentation(o.get(), *s.presentation);
        err << model_flags.model << ": " << s.presentation->relators.size() << " relators\n";
      } else if (s.graph) {
        write_graph(o.get(), *s.graph);
        err << model_flags.model << ": " << s.graph->vertex_count() << " vertices, "
            << s.graph->edge_count() << " edges\n";
      } else {
        write_hypergraph(o.get(), *s.hypergraph);
        err << model_flags.model << ": " << s.hypergraph->edges.size() << " edges\n";
      }
      return exit_ok;
    }

    if (link->parsed()) {
      const Presentation p = presentation_input(presentation_path, model_flags);
      Multigraph g;
      int ignored = 0;
      if (part == 0) {
        LinkGraph lg = build_link_graph(p);
        g = std::move(lg.graph);
        ignored = lg.ignored_relators;
      } else {
        LinkParts parts = split_link_parts(p);
        g = std::move(parts.parts[static_cast<std::size_t>(part - 1)]);
        ignored = parts.ignored_relators;
      }
      if (collapse) g = collapse_duplicates(g).simple;
      Output o(out_path, out);
      write_graph(o.get(), g);
      err << "link graph: " << g.vertex_count() << " vertices, " << g.edge_count()
          << " edges, connected=" << (is_connected(g) ? "true" : "false")
          << ", ignored relators=" << ignored << '\n';
      return exit_ok;
    }

    if (spectrum->parsed()) {
      Multigraph g;
      if (!graph_path.empty()) {
        std::ifstream in(graph_path);
        if (!in) throw std::runtime_error("cannot open '" + graph_path + "'");
        g = read_graph(in);
      } else if (!presentation_path.empty()) {
        g = build_link_graph(load_presentation(presentation_path)).graph;
      } else {
        Sampled s = sample_model(model_flags);
        if (s.graph) {
          g = std::move(*s.graph);
        } else if (s.presentation) {
          g = build_link_graph(*s.presentation).graph;
        } else {
          throw UsageError("--model", "'" + model_flags.model + "' does not produce a graph");
        }
      }
      Output o(out_path, out);
      if (as_json) {
        o.get() << report_to_json(spectral_report(g)) << '\n';
      } else {
        const auto kind = kind_name == "walk" ? LaplacianKind::walk : LaplacianKind::normalized;
        for (double x : laplacian_spectrum(g, kind)) o.get() << number(x) << '\n';
      }
      const Lambda1 l1 = lambda1(g);
      err << "lambda1=" << number(l1.value) << " connected=" << (l1.connected ? "true" : "false") << '\n';
      return exit_ok;
    }

    if (criterion->parsed()) {
      const Presentation p = presentation_input(presentation_path, model_flags);
      const CriterionResult result = spectral_criterion(p);
      Output o(out_path, out);
      o.get() << report_to_json(result.report) << '\n';
      err << (result.holds ? "criterion holds" : "criterion does not hold");
      if (result.report.lambda1) err << ": lambda1=" << number(*result.report.lambda1);
      if (!result.report.reason.empty()) err << " (" << result.report.reason << ")";
      err << '\n';
      return exit_ok;
    }

    if (match->parsed()) {
      const MatchMode mode = mode_name == "exact" ? MatchMode::exact : MatchMode::heuristic;
      Rng rng(model_flags.seed);
      Output o(out_path, out);
      if (extract_v) {
        if (*extract_v < 1) throw UsageError("--extract", "must be >= 1");
        const Presentation p = presentation_input(presentation_path, model_flags);
        const ExtractResult r = extract_permutation_subsets(p, *extract_v, mode, rng, budget);
        o.get() << "status=" << (r.status == ExtractStatus::found ? "found" : "not_found") << '\n';
        if (r.pairs) {
          const int n = r.pairs->generator_count;
          for (std::size_t k = 0; k < r.pairs->pairs.size(); ++k) {
            for (const auto* perm : {&r.pairs->pairs[k].first, &r.pairs->pairs[k].second}) {
              o.get() << "pair" << k + 1 << (perm == &r.pairs->pairs[k].first ? " pi1" : " pi2");
              for (int x : *perm) o.get() << ' ' << to_string(Letter::from_symbol_index(x, n));
              o.get() << '\n';
            }
          }
        }
        err << "extraction " << (r.status == ExtractStatus::found ? "found" : "not found") << '\n';
        return exit_ok;
      }
      RelatorHypergraph h;
      if (!hypergraph_path.empty()) {
        std::ifstream in(hypergraph_path);
        if (!in) throw std::runtime_error("cannot open '" + hypergraph_path + "'");
        h = read_hypergraph(in);
      } else if (!presentation_path.empty()) {
        h = build_hypergraph(load_presentation(presentation_path));
      } else {
        Sampled s = sample_model(model_flags);
        if (s.hypergraph) {
          h = std::move(*s.hypergraph);
        } else if (s.presentation) {
          h = build_hypergraph(*s.presentation);
        } else {
          throw UsageError("--model", "'" + model_flags.model + "' does not produce a hypergraph");
        }
      }
      const MatchResult r = find_perfect_matching(h, mode, rng, budget);
      if (r.status == MatchStatus::budget_exhausted) {
        err << "error: exact search budget exhausted\n";
        return exit_runtime;
      }
      o.get() << "status=" << to_string(r.status) << '\n';
      if (r.matching) {
        RelatorHypergraph shown{h.part_size, r.matching->edges};
        std::ostringstream body;
        write_hypergraph(body, shown);
        o.get() << body.str().substr(body.str().find('\n') + 1);
      }
      err << "matching " << to_string(r.status);
      if (r.matching) err << (r.matching->reduced ? " (reduced)" : " (not reduced)");
      err << '\n';
      return exit_ok;
    }

    if (embed->parsed()) {
      const int n = need_at_least(model_flags.n, "--n", "embed", word_text ? 2 : 1);
      const int l = check_block_length(model_flags.l, "embed", word_text ? 9 : 3);
      const WordTable table(n, l);
      Output o(out_path, out);
      if (word_text) {
        const Word w = parse_word(*word_text);
        if (!is_reduced(w)) throw UsageError("--word", "word is not reduced");
        const CosetForm form = coset_normal_form(w, table);
        o.get() << "prefix=" << to_string(form.prefix) << '\n';
        o.get() << "factors=" << factors_to_string(form.factors) << '\n';
        err << "coset form: prefix length " << form.prefix.size() << ", " << form.factors.size()
            << " factors\n";
      } else if (restricted) {
        Rng rng(model_flags.seed);
        const double d = checked_density("--d", need(model_flags.d, "--d", "gromov_restricted"));
        const double scale = model_flags.scale.value_or(0.5);
        if (!(scale > 0.0)) throw UsageError("--scale", "must be positive");
        const Presentation p = sample_gromov_restricted(table, d, scale, rng);
        write_presentation(o.get(), p);
        err << "restricted gromov: " << p.relators.size() << " relators from W'_" << l << '\n';
      } else if (!presentation_path.empty() || model_flags.model == "triangular_positive") {
        Presentation source;
        if (!presentation_path.empty()) {
          source = load_presentation(presentation_path);
        } else {
          Rng rng(model_flags.seed);
          const double d = checked_density("--d", need(model_flags.d, "--d", "triangular_positive"));
          source = sample_triangular(table.size(), d, rng, true, model_flags.count);
        }
        const Presentation image = phi_map(source, table);
        write_presentation(o.get(), image);
        err << "phi: " << image.relators.size() << " relators of length " << l << '\n';
      } else {
        for (std::size_t i = 0; i < table.words().size(); ++i) {
          o.get() << i + 1 << ' ' << to_string(table.words()[i]) << '\n';
        }
        err << "word table: " << table.size() << " words of length " << table.block_length() << '\n';
      }
      return exit_ok;
    }

    if (sweep->parsed()) {
      const NormalizedSweep normalized = validate_config(sweep_flags);
      const auto records = run_sweep(normalized.config);
      Output o(out_path, out);
      for (const auto& line : normalized.echo) o.get() << "# " << line << '\n';
      if (normalized.format == "csv") {
        write_csv(o.get(), records);
      } else {
        write_jsonl(o.get(), records);
      }
      const auto summary = summarize(normalized.config, records);
      for (const CellSummary& s : summary) {
        err << "cell " << s.cell_index << ": success=" << number(s.success_fraction)
            << " connected=" << number(s.connected_fraction);
        if (s.median_lambda1) err << " median_lambda1=" << number(*s.median_lambda1);
        err << '\n';
      }
      return exit_ok;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_runtime;
  }
  return exit_usage;
}

}  // namespace kazhdan::cli
