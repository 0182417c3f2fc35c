#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "effres/graph.hpp"
#include "effres/schur.hpp"
#include "effres/separator_tree.hpp"
#include "effres/sparsifier.hpp"

namespace effres {

struct IndexParams {
  double delta = 0.0625;      // target ASC error of the root, in (0, 1/2)
  double c_log = 1.0;         // delta' = delta / (c_log * log2 n + 1)
  double rho = 1.0;           // rebuild every ceil(rho * sqrt n) updates
  double c_terminals = 1.0;   // |K| <= c_terminals * sqrt n
  double oversample = 4.0;
  std::uint64_t seed = 42;
  TreeBuildOptions tree;
  /// Scan the edge-location invariant after every public operation.
  bool check_invariants = false;

  void validate() const;
};

/// Separator tree with a cached approximate Schur complement per node. Every
/// update recomputes the affected nodes bottom-up; the root's cache
/// approximates the Schur complement of the whole graph onto its boundary.
class DynamicIndex {
 public:
  /// Throws TooManyTerminals, NoBalancedSeparator.
  DynamicIndex(const WeightedGraph& g, std::span<const Vertex> terminals, const IndexParams& params = {});

  /// Throws UnknownVertex, NonPositiveWeight, InvalidArgument (self-loop).
  void insert(Vertex u, Vertex v, double w);
  /// Removes the most recently inserted live copy of {u, v}. Throws NoSuchEdge.
  void erase(Vertex u, Vertex v);
  /// Throws TooManyTerminals once the terminal budget is used up.
  void add_terminal(Vertex u);
  /// Puts u in the boundary of h and of every node below h that contains u.
  /// Throws UnknownVertex when u is not in V(h).
  void add_boundary(Vertex u, NodeId h);
  /// Rebuilds tree and caches from the current edge set. On failure the index
  /// is left unchanged and the error propagates.
  void rebuild();

  /// Journal for query-time changes: rollback() restores boundaries, caches,
  /// recompute counters and the terminal set exactly.
  void begin_transaction();
  void rollback();
  void commit();
  bool in_transaction() const noexcept { return journal_active_; }
  /// add_boundary(u, root) without the terminal budget; only valid inside a
  /// transaction.
  void promote(Vertex u);

  const TerminalGraph& root_asc() const { return tree_.node(tree_.root()).asc; }
  const SeparatorTree& tree() const noexcept { return tree_; }
  std::span<const Vertex> terminals() const noexcept { return terminals_; }
  std::size_t vertex_count() const noexcept { return tree_.vertex_count(); }
  WeightedGraph graph() const { return tree_.current_graph(); }
  const IndexParams& params() const noexcept { return params_; }
  double delta_prime() const noexcept { return delta_prime_; }
  double gamma() const noexcept { return gamma_; }
  std::size_t terminal_budget() const noexcept { return terminal_budget_; }
  std::size_t rebuild_period() const noexcept { return period_; }
  std::size_t op_counter() const noexcept { return ops_; }
  std::uint64_t epoch() const noexcept { return epoch_; }
  /// Longest single update stack of the last operation, and the number of
  /// distinct nodes recomputed by it.
  std::size_t last_stack_size() const noexcept { return last_stack_; }
  std::size_t last_recomputed() const noexcept { return last_recomputed_; }

  /// Structural check in dynamic mode (boundaries may have grown, leaves may
  /// hold up to one period of inserted edges) plus cache coverage.
  std::vector<Violation> check() const;
  /// Byte string of the complete mutable state.
  std::string serialize() const;

 private:
  struct Saved {
    NodeId id;
    std::vector<Vertex> boundary;
    TerminalGraph asc;
    std::uint64_t recomputes;
  };
  void touch(NodeId id);
  std::vector<NodeId> boundary_walk(Vertex u, NodeId start);
  void recompute(std::vector<NodeId> nodes);
  void recompute_node(NodeId id);
  void recompute_all();
  void after_update();
  void check_vertex(Vertex v) const;

  IndexParams params_;
  SeparatorTree tree_;
  std::vector<Vertex> terminals_;
  double delta_prime_ = 0.0;
  double gamma_ = 0.0;
  std::size_t terminal_budget_ = 0;
  std::size_t period_ = 1;
  std::size_t ops_ = 0;
  std::uint64_t epoch_ = 0;
  std::size_t last_stack_ = 0;
  std::size_t last_recomputed_ = 0;

  bool journal_active_ = false;
  std::vector<Saved> journal_;
  std::vector<char> journaled_;
  std::vector<Vertex> saved_terminals_;
};

}  // namespace effres
