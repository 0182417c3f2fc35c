#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "effres/graph.hpp"
#include "effres/schur.hpp"
#include "effres/separator.hpp"

namespace effres {

using EdgeId = std::size_t;
using NodeId = std::size_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct TreeEdge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;
  bool alive = true;
  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

struct TreeNode {
  NodeId id = 0;
  NodeId parent = kNoNode;
  NodeId child[2] = {kNoNode, kNoNode};
  std::size_t depth = 0;
  std::size_t height = 0;            // 0 at leaves
  std::vector<Vertex> vertices;      // V(H), sorted
  std::vector<Vertex> separator;     // S(H), sorted; empty at leaves
  std::vector<Vertex> boundary;      // boundary set, sorted
  std::vector<EdgeId> edges;         // E(H) of a leaf, ascending
  std::vector<EdgeId> extra;         // X(H), ascending
  TerminalGraph asc;                 // cached approximate Schur complement
  std::uint64_t recomputes = 0;

  bool is_leaf() const noexcept { return child[0] == kNoNode; }
  bool contains(Vertex v) const noexcept;
  bool in_boundary(Vertex v) const noexcept;
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeBuildOptions {
  SeparatorStrategy strategy = SeparatorStrategy::bfs();
  std::size_t leaf_floor = 32;  // leaves hold <= max(sqrt n, leaf_floor) edges
};

/// Separator tree over a fixed vertex set 0..n-1. The edge table is shared by
/// all nodes; each live edge sits in exactly one leaf or one X set, recorded in
/// `edge_node` / `edge_in_extra`.
class SeparatorTree {
 public:
  static SeparatorTree build(const WeightedGraph& g, std::span<const Vertex> terminals,
                             const TreeBuildOptions& options = {});

  std::size_t vertex_count() const noexcept { return n_; }
  NodeId root() const noexcept { return 0; }
  std::size_t height() const noexcept { return nodes_.empty() ? 0 : nodes_[0].height; }
  std::size_t leaf_edge_limit() const noexcept { return leaf_limit_; }
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  TreeNode& node(NodeId id) { return nodes_.at(id); }
  std::span<const TreeEdge> edges() const noexcept { return edges_; }
  const TreeEdge& edge(EdgeId id) const { return edges_.at(id); }
  NodeId edge_node(EdgeId id) const { return edge_node_.at(id); }
  bool edge_in_extra(EdgeId id) const { return edge_in_extra_.at(id) != 0; }
  std::size_t live_edge_count() const noexcept { return live_; }

  /// Nodes from the root down to `id`, root first.
  std::vector<NodeId> path_to(NodeId id) const;
  /// Leaf holding vertex v reached by always taking the first child that
  /// contains v.
  NodeId leaf_of(Vertex v) const;
  /// First child of `id` containing both endpoints, or kNoNode.
  NodeId child_containing(NodeId id, Vertex u, Vertex v) const;
  NodeId child_containing(NodeId id, Vertex u) const { return child_containing(id, u, u); }

  /// Edge-table mutations used by the dynamic index.
  EdgeId append_edge(Vertex u, Vertex v, double w, NodeId holder, bool extra);
  void kill_edge(EdgeId id);
  /// Most recent live copy of {u, v}; throws NoSuchEdge.
  EdgeId find_live_edge(Vertex u, Vertex v) const;
  void add_boundary_vertex(NodeId id, Vertex v);

  /// The edges of H: leaf edges and X sets of the subtree, ascending.
  std::vector<EdgeId> subtree_edges(NodeId id) const;
  /// Input graph of the node's Schur step with the raw edges of H and
  /// terminals = boundary (for oracle checks).
  TerminalGraph node_graph(NodeId id) const;
  /// Live edges as a graph on 0..n-1, in edge-table order.
  WeightedGraph current_graph() const;

  friend bool operator==(const SeparatorTree&, const SeparatorTree&) = default;

 private:
  void split(NodeId id, std::vector<EdgeId> edges, const TreeBuildOptions& options,
             std::span<const Vertex> forced);
  std::size_t n_ = 0;
  std::size_t leaf_limit_ = 0;
  std::size_t live_ = 0;
  std::vector<TreeNode> nodes_;
  std::vector<TreeEdge> edges_;
  std::vector<NodeId> edge_node_;
  std::vector<char> edge_in_extra_;
};

struct Violation {
  int property = 0;  // 1..8
  NodeId node = kNoNode;
  std::string message;
};

struct ValidateOptions {
  /// After updates the boundary may grow beyond the recursion, and leaves may
  /// have received up to `leaf_slack` extra edges.
  bool dynamic = false;
  std::size_t leaf_slack = 0;
  double c_boundary = 4.0;  // |boundary| <= c_boundary * sqrt(n)
  double c_height = 3.0;    // height <= c_height * log2(n)
  double c_leaf_edges = 1.0;
  double c_leaf_count = 4.0;
};

/// Checks the eight structural properties (property 8 is the edge-location
/// invariant). Returns one entry per violation.
std::vector<Violation> validate(const SeparatorTree& tree, const ValidateOptions& options = {});
std::string describe(const Violation& v);

}  // namespace effres
