#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "effres/error.hpp"

namespace {

int with_output(const std::string& path, const std::function<int(std::ostream&)>& run) {
  if (path.empty()) return run(std::cout);
  std::ofstream file(path);
  if (!file) {
    std::cerr << "cannot open " << path << " for writing\n";
    return 1;
  }
  return run(file);
}

bool open(std::ifstream& in, const std::string& path) {
  in.open(path);
  if (!in) std::cerr << "cannot open " << path << '\n';
  return static_cast<bool>(in);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace effres;
  CLI::App app{"Dynamic effective resistance on separable graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::RunConfig config;
  std::string separator = "bfs";
  std::string out_path;
  app.add_option("--epsilon", config.epsilon, "query accuracy in (0,1)")->capture_default_str();
  app.add_option("--seed", config.seed, "master random seed")->capture_default_str();
  app.add_option("--separator", separator, "grid | bfs | spectral")
      ->check(CLI::IsMember({"grid", "bfs", "spectral"}))
      ->capture_default_str();
  app.add_option("--rebuild-coeff", config.rebuild_coeff, "rebuild every ceil(rho sqrt n) updates")
      ->capture_default_str();
  app.add_flag("--with-oracle", config.with_oracle, "add an exact oracle column");
  app.add_flag("--timings", config.timings, "add an elapsed_ns column");
  app.add_option("--out", out_path, "output file (default stdout)");

  auto* replay = app.add_subcommand("replay", "run an update stream against a graph");
  std::string graph_path, stream_path;
  replay->add_option("graph", graph_path, "graph file ('n m' then 'u v w' lines)")->required();
  replay->add_option("stream", stream_path, "update stream")->required();

  auto* bench = app.add_subcommand("bench", "update/query latency on grids");
  cli::BenchConfig bench_config;
  bench->add_option("--ladder", bench_config.ladder, "grid sizes (perfect squares)")->delimiter(',');
  bench->add_option("--ops", bench_config.ops, "updates and queries per size (about)")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "build a separator tree and check its invariants");
  cli::ValidateConfig validate_config;
  std::string validate_graph;
  validate->add_option("graph", validate_graph, "graph file")->required();
  validate->add_option("--fuzz", validate_config.fuzz_ops, "random updates to check edge location after");
  validate->add_option("--plant", validate_config.plant, "plant a fault: duplicate-edge | boundary");

  auto* reduction = app.add_subcommand("verify-reduction", "check the uMv reductions in exact arithmetic");
  cli::ReductionConfig reduction_config;
  std::string mode = "separable";
  reduction->add_option("--mode", mode, "separable | general")
      ->check(CLI::IsMember({"separable", "general"}))
      ->capture_default_str();
  reduction->add_option("--n0", reduction_config.n0, "matrix dimension (1..4)")->capture_default_str();
  auto* exhaustive = reduction->add_flag("--exhaustive", reduction_config.exhaustive, "every instance");
  reduction->add_option("--samples", reduction_config.samples, "random instances")
      ->excludes(exhaustive)
      ->capture_default_str();

  auto* generate = app.add_subcommand("generate", "write a grid graph and a random update stream");
  std::size_t rows = 16, cols = 16, ops = 100;
  double query_fraction = 0.3;
  std::string gen_graph, gen_stream;
  generate->add_option("--rows", rows)->capture_default_str();
  generate->add_option("--cols", cols)->capture_default_str();
  generate->add_option("--ops", ops)->capture_default_str();
  generate->add_option("--query-fraction", query_fraction)->capture_default_str();
  generate->add_option("--graph-out", gen_graph)->required();
  generate->add_option("--stream-out", gen_stream)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    config.strategy = parse_strategy(separator);
    config.validate();
    if (replay->parsed()) {
      std::ifstream graph_in, stream_in;
      if (!open(graph_in, graph_path) || !open(stream_in, stream_path)) return 1;
      return with_output(out_path, [&](std::ostream& out) { return cli::replay(graph_in, stream_in, config, out, std::cerr); });
    }
    if (bench->parsed()) {
      return with_output(out_path, [&](std::ostream& out) { return cli::bench(config, bench_config, out, std::cerr); });
    }
    if (validate->parsed()) {
      std::ifstream graph_in;
      if (!open(graph_in, validate_graph)) return 1;
      return with_output(out_path, [&](std::ostream& out) {
        return cli::validate(graph_in, config, validate_config, out, std::cerr);
      });
    }
    if (reduction->parsed()) {
      reduction_config.mode = parse_mode(mode);
      return with_output(out_path, [&](std::ostream& out) {
        return cli::verify_reduction(config, reduction_config, out, std::cerr);
      });
    }
    if (generate->parsed()) {
      const cli::Workload w = cli::grid_workload(rows, cols, ops, query_fraction, config.seed);
      std::ofstream g(gen_graph), s(gen_stream);
      if (!g || !s) {
        std::cerr << "cannot open output files\n";
        return 1;
      }
      write_graph(g, w.graph);
      cli::write_stream(s, w.ops);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
  return 1;
}
