#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kazhdan/cli.hpp"
#include "kazhdan/matching.hpp"

using namespace kazhdan;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "kazhdan_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("criterion one-shot") {
  const auto r = run({"criterion", "--model", "triangular", "--m", "150", "--d", "0.45", "--seed", "7"});
  CHECK(r.code == cli::exit_ok);
  CHECK(r.out.find("\"lambda1\"") != std::string::npos);
  CHECK(r.err.rfind("criterion ", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("sample then criterion equals the fused run") {
  const auto file = scratch("tri.txt");
  const std::vector<std::string> model{"--model", "triangular", "--m", "60", "--d", "0.45", "--seed", "19"};
  auto sample_args = std::vector<std::string>{"sample"};
  sample_args.insert(sample_args.end(), model.begin(), model.end());
  sample_args.insert(sample_args.end(), {"--out", file.string()});
  REQUIRE(run(sample_args).code == cli::exit_ok);
  auto fused = std::vector<std::string>{"criterion"};
  fused.insert(fused.end(), model.begin(), model.end());
  const auto a = run({"criterion", "--presentation", file.string()});
  const auto b = run(fused);
  CHECK(a.code == cli::exit_ok);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}

TEST_CASE("six-cycle spectrum from a graph file") {
  const auto file = scratch("sixcycle.txt");
  {
    std::ofstream out(file);
    out << "vertices=6\n0 4\n4 5\n5 3\n3 1\n1 2\n2 0\n";
  }
  const auto r = run({"spectrum", "--graph", file.string()});
  REQUIRE(r.code == cli::exit_ok);
  std::istringstream in(r.out);
  std::vector<double> values;
  for (double x; in >> x;) values.push_back(x);
  REQUIRE(values.size() == 6);
  CHECK(values[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("usage errors name the flag") {
  auto r = run({"sample", "--model", "gromov_restricted", "--n", "2", "--l", "5", "--d", "0.4"});
  CHECK(r.code == cli::exit_usage);
  CHECK(r.err.find("--l") != std::string::npos);

  r = run({"sweep", "--experiment", "criterion", "--model", "triangular", "--d", "0.4"});
  CHECK(r.code == cli::exit_usage);
  CHECK(r.err.find("--m") != std::string::npos);

  r = run({"sweep", "--experiment", "criterion", "--model", "triangular", "--m", "50", "--d", "1.5"});
  CHECK(r.code == cli::exit_usage);
  CHECK(r.err.find("--d") != std::string::npos);

  r = run({"criterion", "--model", "triangular", "--m", "x", "--d", "0.4"});
  CHECK(r.code == cli::exit_usage);
  CHECK(r.err.find("--m") != std::string::npos);

  r = run({"frobnicate"});
  CHECK(r.code == cli::exit_usage);
}

TEST_CASE("runtime errors exit with 2") {
  const auto r = run({"criterion", "--presentation", scratch("missing.txt").string()});
  CHECK(r.code == cli::exit_runtime);
  const auto file = scratch("big.hg");
  {
    Rng rng(4);
    std::ofstream out(file);
    write_hypergraph(out, sample_hypergraph(30, 900, false, rng));
  }
  const auto b = run({"match", "--hypergraph", file.string(), "--mode", "exact", "--nodes", "2"});
  CHECK(b.code == cli::exit_runtime);
  CHECK(b.err.find("budget exhausted") != std::string::npos);
}

TEST_CASE("sweep defaults are echoed") {
  cli::SweepFlags f;
  f.experiment = "criterion";
  f.model = "triangular";
  f.m = "30";
  f.d = "0.45";
  const auto n = cli::validate_config(f);
  CHECK(n.format == "csv");
  CHECK(n.config.trials == 20);
  CHECK(n.config.mode == MatchMode::heuristic);
  CHECK(std::find(n.echo.begin(), n.echo.end(), "trials=20") != n.echo.end());
  CHECK(std::find(n.echo.begin(), n.echo.end(), "mode=heuristic") != n.echo.end());
  CHECK(std::find(n.echo.begin(), n.echo.end(), "format=csv") != n.echo.end());

  f.M = "";
  f.experiment = "matching";
  f.model = "G3";
  f.n = "100";
  f.M = "5nlogn,n/2";
  const auto m = cli::validate_config(f);
  REQUIRE(m.config.cells.size() == 2);
  CHECK(*m.config.cells[0].M == 2302);
  CHECK(*m.config.cells[1].M == 50);
}

TEST_CASE("sweep output is identical across job counts") {
  const std::vector<std::string> base{"sweep", "--experiment", "criterion", "--model", "triangular",
                                      "--m", "40", "--d", "0.3,0.45", "--trials", "4", "--seed", "3"};
  auto one = base;
  one.insert(one.end(), {"--jobs", "1"});
  auto four = base;
  four.insert(four.end(), {"--jobs", "4"});
  const auto a = run(one);
  const auto b = run(four);
  REQUIRE(a.code == cli::exit_ok);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# experiment=criterion", 0) == 0);
}

TEST_CASE("formats round-trip through the CLI") {
  const std::vector<std::vector<std::string>> models{
      {"--model", "gromov", "--n", "3", "--l", "6", "--d", "0.3"},
      {"--model", "triangular_positive", "--m", "12", "--d", "0.4"},
      {"--model", "permutation_reduced", "--n", "4", "--v", "2"},
      {"--model", "configuration", "--n", "30", "--v", "3"},
      {"--model", "gnp", "--n", "25", "--p", "0.2"},
      {"--model", "G3", "--n", "7", "--M", "40"},
      {"--model", "G3_reduced", "--n", "8", "--M", "60"},
  };
  const auto first = scratch("first.txt");
  for (int seed = 0; seed < 100; ++seed) {
    const auto& m = models[static_cast<std::size_t>(seed) % models.size()];
    std::vector<std::string> args{"sample", "--seed", std::to_string(seed), "--out", first.string()};
    args.insert(args.end(), m.begin(), m.end());
    REQUIRE(run(args).code == cli::exit_ok);
    const std::string text = slurp(first);
    std::istringstream in(text);
    std::ostringstream again;
    const bool graph = text.rfind("vertices=", 0) == 0;
    const bool hyper = text.rfind("parts=", 0) == 0;
    if (graph) {
      write_graph(again, read_graph(in));
    } else if (hyper) {
      write_hypergraph(again, read_hypergraph(in));
    } else {
      write_presentation(again, read_presentation(in));
    }
    CHECK(again.str() == text);
  }
}

TEST_CASE("embed subcommand") {
  auto r = run({"embed", "--n", "2", "--l", "9", "--table"});
  REQUIRE(r.code == cli::exit_ok);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 10);
  r = run({"embed", "--n", "2", "--l", "9", "--word", "a1 a1 a1 A2 A2 A2"});
  CHECK(r.code == cli::exit_ok);
  r = run({"embed", "--n", "2", "--l", "8", "--table"});
  CHECK(r.code == cli::exit_usage);
  CHECK(r.err.find("--l") != std::string::npos);
}

TEST_CASE("match and link subcommands") {
  const auto file = scratch("perm.txt");
  REQUIRE(run({"sample", "--model", "permutation_reduced", "--n", "5", "--v", "2", "--seed", "1", "--out",
               file.string()})
              .code == cli::exit_ok);
  auto r = run({"match", "--presentation", file.string(), "--extract", "2", "--mode", "exact"});
  CHECK(r.code == cli::exit_ok);
  CHECK(r.out.rfind("status=found", 0) == 0);
  r = run({"link", "--presentation", file.string(), "--part", "2"});
  CHECK(r.code == cli::exit_ok);
  CHECK(r.out.rfind("vertices=10", 0) == 0);
  r = run({"link", "--presentation", file.string(), "--part", "4"});
  CHECK(r.code == cli::exit_usage);
}
