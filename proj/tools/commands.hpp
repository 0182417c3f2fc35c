#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "effres/graph.hpp"
#include "effres/reduction.hpp"
#include "effres/separator.hpp"

namespace effres::cli {

struct RunConfig {
  double epsilon = 0.25;
  std::uint64_t seed = 42;
  SeparatorStrategy::Kind strategy = SeparatorStrategy::Kind::BfsLevel;
  double rebuild_coeff = 1.0;
  bool with_oracle = false;
  bool timings = false;

  /// Throws InvalidArgument for out-of-range values.
  void validate() const;
};

struct StreamOp {
  char kind = 'Q';  // I D T Q R
  Vertex a = 0;
  Vertex b = 0;
  double w = 0.0;
  std::size_t line = 0;
};

/// Update-stream lines: "I u v w" | "D u v" | "T u" | "Q s t" | "R". Blank
/// lines and '#' comments are skipped. Throws Parse with the line number.
std::vector<StreamOp> read_stream(std::istream& in);
void write_stream(std::ostream& out, const std::vector<StreamOp>& ops);

/// Executes the stream on a fresh index; one CSV row per Q. Returns the exit
/// code (0 iff no operation failed).
int replay(std::istream& graph, std::istream& stream, const RunConfig& config, std::ostream& out, std::ostream& err);

struct BenchConfig {
  std::vector<std::size_t> ladder{256, 1024, 4096};
  std::size_t ops = 200;
};
int bench(const RunConfig& config, const BenchConfig& bench, std::ostream& out, std::ostream& err);

struct ValidateConfig {
  std::size_t fuzz_ops = 0;      // random updates checked for edge location
  std::string plant;             // "", "duplicate-edge" or "boundary"
};
int validate(std::istream& graph, const RunConfig& config, const ValidateConfig& vc, std::ostream& out,
             std::ostream& err);

struct ReductionConfig {
  ReductionMode mode = ReductionMode::Separable;
  std::size_t n0 = 2;
  bool exhaustive = false;
  std::size_t samples = 20;
};
int verify_reduction(const RunConfig& config, const ReductionConfig& rc, std::ostream& out, std::ostream& err);

/// Grid graph plus a random stream of local inserts, deletes of inserted
/// edges, and queries, all drawn from `seed`.
struct Workload {
  WeightedGraph graph;
  std::vector<StreamOp> ops;
};
Workload grid_workload(std::size_t rows, std::size_t cols, std::size_t ops, double query_fraction,
                       std::uint64_t seed);

}  // namespace effres::cli
