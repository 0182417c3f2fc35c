#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include "effres/dynamic_index.hpp"
#include "effres/eff_res.hpp"
#include "effres/error.hpp"
#include "effres/generators.hpp"
#include "effres/random.hpp"
#include "effres/separator_tree.hpp"

namespace effres::cli {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count();
}

IndexParams index_params(const RunConfig& config) {
  IndexParams p = index_params_for(QueryParams{config.epsilon});
  p.seed = config.seed;
  p.rho = config.rebuild_coeff;
  p.tree.strategy.kind = config.strategy;
  return p;
}

// Error::what() already leads with the code name
std::string error_text(const std::exception& e) {
  if (dynamic_cast<const Error*>(&e)) return e.what();
  return std::string("internal: ") + e.what();
}

}  // namespace

void RunConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidArgument, "--epsilon must lie in (0, 1)");
  if (!(rebuild_coeff > 0.0)) throw Error(ErrorCode::InvalidArgument, "--rebuild-coeff must be positive");
}

std::vector<StreamOp> read_stream(std::istream& in) {
  std::vector<StreamOp> ops;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    StreamOp op;
    op.line = line_no;
    if (tag.size() != 1) fail("unknown operation '" + tag + "'");
    op.kind = tag[0];
    long long a = 0, b = 0;
    auto vertex = [&](long long x) {
      if (x < 0 || x > static_cast<long long>(UINT32_MAX)) fail("vertex id out of range");
      return static_cast<Vertex>(x);
    };
    switch (op.kind) {
      case 'I':
        if (!(ls >> a >> b >> op.w)) fail("expected 'I u v w'");
        op.a = vertex(a);
        op.b = vertex(b);
        break;
      case 'D':
      case 'Q':
        if (!(ls >> a >> b)) fail(std::string("expected '") + op.kind + " u v'");
        op.a = vertex(a);
        op.b = vertex(b);
        break;
      case 'T':
        if (!(ls >> a)) fail("expected 'T u'");
        op.a = vertex(a);
        break;
      case 'R': break;
      default: fail("unknown operation '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing input '" + extra + "'");
    ops.push_back(op);
  }
  return ops;
}

void write_stream(std::ostream& out, const std::vector<StreamOp>& ops) {
  for (const StreamOp& op : ops) {
    switch (op.kind) {
      case 'I': out << "I " << op.a << ' ' << op.b << ' ' << fmt(op.w) << '\n'; break;
      case 'D': out << "D " << op.a << ' ' << op.b << '\n'; break;
      case 'Q': out << "Q " << op.a << ' ' << op.b << '\n'; break;
      case 'T': out << "T " << op.a << '\n'; break;
      default: out << "R\n"; break;
    }
  }
}

int replay(std::istream& graph_in, std::istream& stream_in, const RunConfig& config, std::ostream& out,
           std::ostream& err) {
  WeightedGraph graph;
  std::vector<StreamOp> ops;
  try {
    config.validate();
    graph = read_graph(graph_in);
  } catch (const std::exception& e) {
    err << "graph: " << error_text(e) << '\n';
    return 1;
  }
  try {
    ops = read_stream(stream_in);
  } catch (const std::exception& e) {
    err << "stream: " << error_text(e) << '\n';
    return 1;
  }
  std::optional<DynamicIndex> index;
  try {
    index.emplace(graph, std::span<const Vertex>{}, index_params(config));
  } catch (const std::exception& e) {
    err << "init: " << error_text(e) << '\n';
    return 1;
  }

  out << "op_index,s,t,psi";
  if (config.with_oracle) out << ",oracle";
  if (config.timings) out << ",elapsed_ns";
  out << '\n';
  std::optional<ResistanceOracle> oracle;
  int status = 0;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const StreamOp& op = ops[k];
    try {
      switch (op.kind) {
        case 'I':
          index->insert(op.a, op.b, op.w);
          graph.add_edge(op.a, op.b, op.w);
          oracle.reset();
          break;
        case 'D':
          index->erase(op.a, op.b);
          graph.remove_edge(op.a, op.b);
          oracle.reset();
          break;
        case 'T': index->add_terminal(op.a); break;
        case 'R': index->rebuild(); break;
        case 'Q': {
          const auto start = Clock::now();
          const double psi = query(*index, op.a, op.b);
          const auto ns = elapsed_ns(start);
          out << k << ',' << op.a << ',' << op.b << ',' << fmt(psi);
          if (config.with_oracle) {
            if (!oracle) oracle.emplace(graph);
            out << ',' << fmt(oracle->resistance(op.a, op.b));
          }
          if (config.timings) out << ',' << ns;
          out << '\n';
          break;
        }
      }
    } catch (const std::exception& e) {
      err << "op " << k << " (line " << op.line << "): " << error_text(e) << '\n';
      status = 1;
    }
  }
  return status;
}

Workload grid_workload(std::size_t rows, std::size_t cols, std::size_t count, double query_fraction,
                       std::uint64_t seed) {
  Workload w{gen::grid(rows, cols, 1.0), {}};
  Rng rng(seed);
  WeightedGraph current = w.graph;
  const std::size_t n = rows * cols;
  std::vector<std::pair<Vertex, Vertex>> inserted;
  auto stays_connected_without = [&](Vertex a, Vertex b) {
    WeightedGraph probe = current;
    probe.remove_edge(a, b);
    DisjointSets dsu(n);
    for (const Edge& e : probe.edges()) dsu.unite(e.u, e.v);
    return dsu.same(a, b);
  };
  for (std::size_t k = 0; k < count; ++k) {
    StreamOp op;
    const double roll = rng.uniform();
    if (roll < query_fraction) {
      op.kind = 'Q';
      op.a = static_cast<Vertex>(rng.below(n));
      do op.b = static_cast<Vertex>(rng.below(n)); while (op.b == op.a);
    } else if (roll < query_fraction + (1.0 - query_fraction) * 0.6 || current.edge_count() == 0) {
      // local edge: grid distance 1 or 2 keeps the graph separable
      op.kind = 'I';
      const auto r = static_cast<long>(rng.below(rows));
      const auto c = static_cast<long>(rng.below(cols));
      long r2 = r, c2 = c;
      do {
        r2 = r + static_cast<long>(rng.below(5)) - 2;
        c2 = c + static_cast<long>(rng.below(5)) - 2;
      } while ((r2 == r && c2 == c) || std::labs(r2 - r) + std::labs(c2 - c) > 2 || r2 < 0 || c2 < 0 ||
               r2 >= static_cast<long>(rows) || c2 >= static_cast<long>(cols));
      op.a = static_cast<Vertex>(r * static_cast<long>(cols) + c);
      op.b = static_cast<Vertex>(r2 * static_cast<long>(cols) + c2);
      op.w = rng.uniform(0.5, 2.0);
      current.add_edge(op.a, op.b, op.w);
      inserted.emplace_back(op.a, op.b);
    } else {
      op.kind = 'D';
      bool found = false;
      if (!inserted.empty() && rng.uniform() < 0.7) {
        const std::size_t pick = rng.below(inserted.size());
        std::tie(op.a, op.b) = inserted[pick];
        inserted.erase(inserted.begin() + static_cast<long>(pick));
        found = true;
      } else {
        for (int attempt = 0; attempt < 8 && !found; ++attempt) {
          const Edge e = current.edges()[rng.below(current.edge_count())];
          if (stays_connected_without(e.u, e.v)) {
            op.a = e.u;
            op.b = e.v;
            found = true;
          }
        }
        if (found) {
          auto it = std::find_if(inserted.rbegin(), inserted.rend(), [&](const auto& p) {
            return (p.first == op.a && p.second == op.b) || (p.first == op.b && p.second == op.a);
          });
          if (it != inserted.rend()) inserted.erase(std::next(it).base());
        }
      }
      if (!found) {
        --k;
        continue;
      }
      current.remove_edge(op.a, op.b);
    }
    w.ops.push_back(op);
  }
  return w;
}

int bench(const RunConfig& config, const BenchConfig& bc, std::ostream& out, std::ostream& err) {
  config.validate();
  out << "n,update_ns_p50,query_ns_p50,rebuild_ns\n";
  auto median = [](std::vector<std::int64_t> xs) {
    if (xs.empty()) return std::int64_t{0};
    std::nth_element(xs.begin(), xs.begin() + static_cast<long>(xs.size() / 2), xs.end());
    return xs[xs.size() / 2];
  };
  std::vector<double> log_n, log_update;
  for (std::size_t n : bc.ladder) {
    const auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
    if (side * side != n) {
      err << "bench: ladder entry " << n << " is not a square\n";
      return 1;
    }
    Workload w = grid_workload(side, side, 2 * bc.ops, 0.5, derive_seed(config.seed, {n}));
    DynamicIndex index(w.graph, {}, index_params(config));
    std::vector<std::int64_t> updates, queries;
    for (const StreamOp& op : w.ops) {
      const auto start = Clock::now();
      try {
        if (op.kind == 'I') {
          index.insert(op.a, op.b, op.w);
          updates.push_back(elapsed_ns(start));
        } else if (op.kind == 'D') {
          index.erase(op.a, op.b);
          updates.push_back(elapsed_ns(start));
        } else if (op.kind == 'Q') {
          (void)query(index, op.a, op.b);
          queries.push_back(elapsed_ns(start));
        }
      } catch (const std::exception& e) {
        err << "bench n=" << n << ": " << error_text(e) << '\n';
        return 1;
      }
    }
    const auto start = Clock::now();
    index.rebuild();
    const auto rebuild_ns = elapsed_ns(start);
    const auto up = median(updates);
    out << n << ',' << up << ',' << median(queries) << ',' << rebuild_ns << '\n';
    log_n.push_back(std::log(static_cast<double>(n)));
    log_update.push_back(std::log(static_cast<double>(std::max<std::int64_t>(up, 1))));
  }
  if (log_n.size() >= 2) {
    const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / static_cast<double>(log_n.size());
    const double my = std::accumulate(log_update.begin(), log_update.end(), 0.0) / static_cast<double>(log_n.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      sxy += (log_n[i] - mx) * (log_update[i] - my);
      sxx += (log_n[i] - mx) * (log_n[i] - mx);
    }
    err << "update latency log-log slope: " << fmt(sxy / sxx) << '\n';
  }
  return 0;
}

int validate(std::istream& graph_in, const RunConfig& config, const ValidateConfig& vc, std::ostream& out,
             std::ostream& err) {
  WeightedGraph graph;
  try {
    config.validate();
    graph = read_graph(graph_in);
  } catch (const std::exception& e) {
    err << "graph: " << error_text(e) << '\n';
    return 1;
  }
  TreeBuildOptions options;
  options.strategy.kind = config.strategy;
  std::vector<Violation> found;
  try {
    SeparatorTree tree = SeparatorTree::build(graph, {}, options);
    if (vc.plant == "duplicate-edge") {
      // copy one leaf edge into a second list
      for (const TreeNode& h : tree.nodes()) {
        if (h.is_leaf() && !h.edges.empty()) {
          tree.node(h.id).extra.push_back(h.edges.front());
          break;
        }
      }
    } else if (vc.plant == "boundary") {
      for (const TreeNode& h : tree.nodes()) {
        if (!h.is_leaf() || h.vertices.empty()) continue;
        auto missing = std::find_if(h.vertices.begin(), h.vertices.end(), [&](Vertex v) { return !h.in_boundary(v); });
        if (missing != h.vertices.end()) {
          tree.add_boundary_vertex(h.id, *missing);
          break;
        }
      }
    } else if (!vc.plant.empty()) {
      err << "unknown fault '" << vc.plant << "'\n";
      return 1;
    }
    out << "nodes " << tree.nodes().size() << ", height " << tree.height() << ", leaves "
        << std::count_if(tree.nodes().begin(), tree.nodes().end(), [](const TreeNode& h) { return h.is_leaf(); })
        << '\n';
    found = effres::validate(tree, {});

    if (vc.fuzz_ops > 0) {
      IndexParams p = index_params(config);
      p.check_invariants = true;
      DynamicIndex index(graph, {}, p);
      Rng rng(derive_seed(config.seed, {0xf022}));
      std::vector<std::pair<Vertex, Vertex>> inserted;
      const std::size_t n = graph.vertex_count();
      for (std::size_t k = 0; k < vc.fuzz_ops && n >= 2; ++k) {
        if (!inserted.empty() && rng.uniform() < 0.4) {
          const std::size_t pick = rng.below(inserted.size());
          index.erase(inserted[pick].first, inserted[pick].second);
          inserted.erase(inserted.begin() + static_cast<long>(pick));
        } else {
          // parallel copies of existing edges keep the graph separable
          const Edge e = graph.edges()[rng.below(std::max<std::size_t>(graph.edge_count(), 1))];
          index.insert(e.u, e.v, rng.uniform(0.5, 2.0));
          inserted.emplace_back(e.u, e.v);
        }
        for (const Violation& v : index.check()) {
          if (v.property == 8) found.push_back(v);
        }
      }
      out << "fuzzed " << vc.fuzz_ops << " updates\n";
    }
  } catch (const std::exception& e) {
    err << "validate: " << error_text(e) << '\n';
    return 1;
  }
  out << "violations " << found.size() << '\n';
  for (const Violation& v : found) out << describe(v) << '\n';
  return found.empty() ? 0 : 1;
}

int verify_reduction(const RunConfig& config, const ReductionConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.n0 < 1 || rc.n0 > 4) {
    err << "--n0 must lie in [1, 4]\n";
    return 1;
  }
  const std::uint64_t total = UmvInstance::count(rc.n0);
  std::vector<std::uint64_t> indices;
  if (rc.exhaustive) {
    for (std::uint64_t i = 0; i < total; ++i) indices.push_back(i);
  } else {
    Rng rng(derive_seed(config.seed, {rc.n0, rc.mode == ReductionMode::Separable ? 1U : 2U}));
    for (std::size_t k = 0; k < rc.samples; ++k) indices.push_back(rng.below(total));
  }
  out << "mode,index,instance,uMv,detect,classify,lambda,pass\n";
  std::size_t passed = 0;
  for (std::uint64_t idx : indices) {
    const UmvInstance umv = UmvInstance::from_index(rc.n0, idx);
    try {
      const ReductionReport r = verify_reduction(build_gadget(rc.mode, umv));
      out << to_string(rc.mode) << ',' << idx << ',' << umv.to_string() << ',' << r.umv << ',' << r.detect << ','
          << r.classified << ',' << to_decimal(r.lambda, 40) << ',' << (r.pass() ? "yes" : "no") << '\n';
      if (r.pass()) {
        ++passed;
      } else {
        err << "counterexample: " << r.counterexample << '\n';
      }
    } catch (const std::exception& e) {
      err << "instance " << idx << ": " << error_text(e) << '\n';
    }
  }
  err << passed << '/' << indices.size() << " instances passed\n";
  return passed == indices.size() ? 0 : 1;
}

}  // namespace effres::cli
