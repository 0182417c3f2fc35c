#include "effres/separator_tree.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

#include "effres/error.hpp"

namespace effres {

namespace {

bool sorted_contains(const std::vector<Vertex>& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

std::vector<Vertex> set_union(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Vertex> set_intersection(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool includes(const std::vector<Vertex>& big, const std::vector<Vertex>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

bool TreeNode::contains(Vertex v) const noexcept { return sorted_contains(vertices, v); }
bool TreeNode::in_boundary(Vertex v) const noexcept { return sorted_contains(boundary, v); }

SeparatorTree SeparatorTree::build(const WeightedGraph& g, std::span<const Vertex> terminals,
                                   const TreeBuildOptions& options) {
  SeparatorTree t;
  t.n_ = g.vertex_count();
  t.leaf_limit_ = std::max<std::size_t>(
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(t.n_)))), options.leaf_floor);
  for (const Edge& e : g.edges()) t.edges_.push_back({e.u, e.v, e.w, true});
  t.live_ = t.edges_.size();
  t.edge_node_.assign(t.edges_.size(), kNoNode);
  t.edge_in_extra_.assign(t.edges_.size(), 0);

  TreeBuildOptions resolved = options;
  if (resolved.strategy.kind == SeparatorStrategy::Kind::Grid && resolved.strategy.grid_cols == 0) {
    resolved.strategy.grid_cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(t.n_))));
  }

  std::vector<Vertex> forced(terminals.begin(), terminals.end());
  std::sort(forced.begin(), forced.end());
  forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
  for (Vertex v : forced) {
    if (v >= t.n_) throw Error(ErrorCode::UnknownVertex, "terminal " + std::to_string(v) + " out of range");
  }

  t.nodes_.emplace_back();
  t.nodes_[0].vertices.resize(t.n_);
  std::iota(t.nodes_[0].vertices.begin(), t.nodes_[0].vertices.end(), Vertex{0});
  std::vector<EdgeId> all(t.edges_.size());
  std::iota(all.begin(), all.end(), EdgeId{0});
  t.split(0, std::move(all), resolved, forced);
  return t;
}

void SeparatorTree::split(NodeId id, std::vector<EdgeId> edges, const TreeBuildOptions& options,
                          std::span<const Vertex> forced) {
  const std::vector<Vertex> forced_set(forced.begin(), forced.end());
  auto make_leaf = [&] {
    TreeNode& h = nodes_[id];
    h.separator = h.parent == kNoNode ? forced_set : std::vector<Vertex>{};
    h.boundary = h.parent == kNoNode ? h.separator
                                     : set_union(h.separator, set_intersection(nodes_[h.parent].boundary, h.vertices));
    h.height = 0;
    h.edges = edges;
    for (EdgeId e : edges) edge_node_[e] = id;
  };
  if (edges.size() <= leaf_limit_) {
    make_leaf();
    return;
  }

  const std::vector<Vertex> vertices = nodes_[id].vertices;
  std::vector<Edge> local;
  local.reserve(edges.size());
  for (EdgeId e : edges) local.push_back({edges_[e].u, edges_[e].v, edges_[e].w});
  const std::vector<Vertex> sep = set_union(find_separator(vertices, local, options.strategy), forced_set);

  // components of H - S, packed into two groups by vertex count
  const std::size_t nv = vertices.size();
  auto pos = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin()); };
  std::vector<char> in_sep(nv, 0);
  for (Vertex v : sep) in_sep[pos(v)] = 1;
  DisjointSets dsu(nv);
  for (const Edge& e : local) {
    const std::size_t a = pos(e.u), b = pos(e.v);
    if (!in_sep[a] && !in_sep[b]) dsu.unite(a, b);
  }
  std::vector<std::size_t> comp_size(nv, 0);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!in_sep[i]) ++comp_size[dsu.find(i)];
  }
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < nv; ++i) {
    if (!in_sep[i] && dsu.find(i) == i) roots.push_back(i);
  }
  std::stable_sort(roots.begin(), roots.end(), [&](std::size_t a, std::size_t b) { return comp_size[a] > comp_size[b]; });
  std::vector<int> group_of_root(nv, -1);
  std::size_t load[2] = {0, 0};
  for (std::size_t r : roots) {
    const int g = load[1] < load[0] ? 1 : 0;
    group_of_root[r] = g;
    load[g] += comp_size[r];
  }
  auto side = [&](Vertex v) -> int {
    const std::size_t p = pos(v);
    return in_sep[p] ? -1 : group_of_root[dsu.find(p)];
  };

  std::vector<EdgeId> part[2];
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const int a = side(local[k].u), b = side(local[k].v);
    part[(a == 1 || b == 1) ? 1 : 0].push_back(edges[k]);
  }
  if (part[0].size() == edges.size() || part[1].size() == edges.size()) {
    make_leaf();
    return;
  }

  {
    TreeNode& h = nodes_[id];
    h.separator = sep;
    h.boundary = h.parent == kNoNode ? sep : set_union(sep, set_intersection(nodes_[h.parent].boundary, vertices));
  }
  for (int c = 0; c < 2; ++c) {
    TreeNode child;
    child.id = nodes_.size();
    child.parent = id;
    child.depth = nodes_[id].depth + 1;
    for (std::size_t i = 0; i < nv; ++i) {
      if (in_sep[i] || group_of_root[dsu.find(i)] == c) child.vertices.push_back(vertices[i]);
    }
    nodes_[id].child[c] = child.id;
    nodes_.push_back(std::move(child));
    split(nodes_[id].child[c], std::move(part[c]), options, {});
  }
  nodes_[id].height = 1 + std::max(nodes_[nodes_[id].child[0]].height, nodes_[nodes_[id].child[1]].height);
}

std::vector<NodeId> SeparatorTree::path_to(NodeId id) const {
  std::vector<NodeId> path;
  for (NodeId x = id; x != kNoNode; x = nodes_.at(x).parent) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

NodeId SeparatorTree::child_containing(NodeId id, Vertex u, Vertex v) const {
  const TreeNode& h = nodes_.at(id);
  for (NodeId c : h.child) {
    if (c != kNoNode && nodes_[c].contains(u) && nodes_[c].contains(v)) return c;
  }
  return kNoNode;
}

NodeId SeparatorTree::leaf_of(Vertex v) const {
  if (v >= n_) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " out of range");
  NodeId id = root();
  while (!nodes_[id].is_leaf()) id = child_containing(id, v);
  return id;
}

EdgeId SeparatorTree::append_edge(Vertex u, Vertex v, double w, NodeId holder, bool extra) {
  const EdgeId id = edges_.size();
  edges_.push_back({u, v, w, true});
  edge_node_.push_back(holder);
  edge_in_extra_.push_back(extra ? 1 : 0);
  (extra ? nodes_.at(holder).extra : nodes_.at(holder).edges).push_back(id);
  ++live_;
  return id;
}

void SeparatorTree::kill_edge(EdgeId id) {
  TreeEdge& e = edges_.at(id);
  if (!e.alive) throw Error(ErrorCode::NoSuchEdge, "edge already removed");
  e.alive = false;
  auto& list = edge_in_extra_[id] ? nodes_[edge_node_[id]].extra : nodes_[edge_node_[id]].edges;
  list.erase(std::lower_bound(list.begin(), list.end(), id));
  edge_node_[id] = kNoNode;
  edge_in_extra_[id] = 0;
  --live_;
}

EdgeId SeparatorTree::find_live_edge(Vertex u, Vertex v) const {
  for (std::size_t k = edges_.size(); k-- > 0;) {
    const TreeEdge& e = edges_[k];
    if (e.alive && ((e.u == u && e.v == v) || (e.u == v && e.v == u))) return k;
  }
  throw Error(ErrorCode::NoSuchEdge, "no edge {" + std::to_string(u) + ", " + std::to_string(v) + "}");
}

void SeparatorTree::add_boundary_vertex(NodeId id, Vertex v) {
  auto& b = nodes_.at(id).boundary;
  auto it = std::lower_bound(b.begin(), b.end(), v);
  if (it == b.end() || *it != v) b.insert(it, v);
}

std::vector<EdgeId> SeparatorTree::subtree_edges(NodeId id) const {
  std::vector<EdgeId> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const TreeNode& h = nodes_.at(stack.back());
    stack.pop_back();
    out.insert(out.end(), h.edges.begin(), h.edges.end());
    out.insert(out.end(), h.extra.begin(), h.extra.end());
    for (NodeId c : h.child) {
      if (c != kNoNode) stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TerminalGraph SeparatorTree::node_graph(NodeId id) const {
  TerminalGraph g;
  g.vertices = nodes_.at(id).vertices;
  g.terminals = nodes_[id].boundary;
  for (EdgeId e : subtree_edges(id)) g.edges.push_back({edges_[e].u, edges_[e].v, edges_[e].w});
  return g;
}

WeightedGraph SeparatorTree::current_graph() const {
  WeightedGraph g(n_);
  for (const TreeEdge& e : edges_) {
    if (e.alive) g.add_edge(e.u, e.v, e.w);
  }
  return g;
}

std::vector<Violation> validate(const SeparatorTree& tree, const ValidateOptions& options) {
  std::vector<Violation> out;
  auto report = [&](int property, NodeId node, std::string message) {
    out.push_back({property, node, std::move(message)});
  };
  const auto nodes = tree.nodes();
  const std::size_t n = tree.vertex_count();
  const double sqrt_n = std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
  if (nodes.empty()) {
    report(1, kNoNode, "tree has no root");
    return out;
  }

  // 1: the root is G
  {
    const TreeNode& r = nodes[0];
    bool full = r.parent == kNoNode && r.vertices.size() == n;
    for (std::size_t i = 0; full && i < n; ++i) full = r.vertices[i] == i;
    if (!full) report(1, 0, "root vertex set is not V(G)");
  }

  std::size_t leaves = 0;
  for (const TreeNode& h : nodes) {
    // 2: children tile H and meet exactly in S(H)
    if (!h.is_leaf()) {
      const TreeNode& c1 = nodes[h.child[0]];
      const TreeNode& c2 = nodes[h.child[1]];
      if (c1.parent != h.id || c2.parent != h.id) {
        report(2, h.id, "child parent pointer mismatch");
      } else if (set_union(c1.vertices, c2.vertices) != h.vertices) {
        report(2, h.id, "V(c1) u V(c2) != V(H)");
      } else if (set_intersection(c1.vertices, c2.vertices) != h.separator) {
        report(2, h.id, "V(c1) n V(c2) != S(H)");
      }
    } else {
      ++leaves;
    }

    // 3: boundary recursion
    const std::vector<Vertex> inherited =
        h.parent == kNoNode ? std::vector<Vertex>{} : set_intersection(nodes[h.parent].boundary, h.vertices);
    const std::vector<Vertex> expected = set_union(h.separator, inherited);
    if (options.dynamic) {
      if (!includes(h.boundary, expected) || !includes(h.vertices, h.boundary)) {
        report(3, h.id, "boundary misses S(H) u (parent boundary n V(H)) or leaves V(H)");
      }
    } else if (h.boundary != expected) {
      report(3, h.id, "boundary != S(H) u (parent boundary n V(H))");
    }

    // 4: children's boundaries cover the parent's
    if (!h.is_leaf() &&
        !includes(set_union(nodes[h.child[0]].boundary, nodes[h.child[1]].boundary), h.boundary)) {
      report(4, h.id, "boundary(c1) u boundary(c2) does not cover boundary(H)");
    }

    // 5: boundary size
    if (static_cast<double>(h.boundary.size()) > options.c_boundary * sqrt_n) {
      report(5, h.id, "|boundary| = " + std::to_string(h.boundary.size()) + " exceeds " +
                          std::to_string(options.c_boundary * sqrt_n));
    }

    // 6: leaf size
    if (h.is_leaf()) {
      const double limit = options.c_leaf_edges * static_cast<double>(tree.leaf_edge_limit()) +
                           static_cast<double>(options.leaf_slack);
      if (static_cast<double>(h.edges.size()) > limit) {
        report(6, h.id, "leaf holds " + std::to_string(h.edges.size()) + " edges, limit " + std::to_string(limit));
      }
    }

    // 7: heights are consistent
    const std::size_t expect_height =
        h.is_leaf() ? 0 : 1 + std::max(nodes[h.child[0]].height, nodes[h.child[1]].height);
    if (h.height != expect_height) report(7, h.id, "stored height is inconsistent");
  }

  const double m = static_cast<double>(tree.live_edge_count());
  const double leaf_cap = options.c_leaf_count * sqrt_n * std::max(1.0, m / std::max(1.0, static_cast<double>(n)));
  if (static_cast<double>(leaves) > leaf_cap) {
    report(6, kNoNode, std::to_string(leaves) + " leaves exceed " + std::to_string(leaf_cap));
  }
  const double height_cap = options.c_height * std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  if (static_cast<double>(tree.height()) > height_cap) {
    report(7, 0, "height " + std::to_string(tree.height()) + " exceeds " + std::to_string(height_cap));
  }

  // 8: every live edge in exactly one leaf or exactly one X set, inside that node
  const auto edges = tree.edges();
  std::vector<std::size_t> count(edges.size(), 0);
  std::vector<NodeId> seen_at(edges.size(), kNoNode);
  std::vector<char> seen_extra(edges.size(), 0);
  for (const TreeNode& h : nodes) {
    for (int pass = 0; pass < 2; ++pass) {
      for (EdgeId e : pass == 0 ? h.edges : h.extra) {
        if (e >= edges.size()) {
          report(8, h.id, "edge id " + std::to_string(e) + " out of range");
          continue;
        }
        ++count[e];
        seen_at[e] = h.id;
        seen_extra[e] = static_cast<char>(pass);
      }
    }
    if (!h.is_leaf() && !h.edges.empty()) report(8, h.id, "non-leaf holds leaf edges");
  }
  for (EdgeId e = 0; e < edges.size(); ++e) {
    const std::string name = "edge " + std::to_string(e) + " {" + std::to_string(edges[e].u) + ", " +
                             std::to_string(edges[e].v) + "}";
    if (!edges[e].alive) {
      if (count[e] != 0) report(8, seen_at[e], name + " is removed but still stored");
      continue;
    }
    if (count[e] != 1) {
      report(8, seen_at[e], name + " is stored " + std::to_string(count[e]) + " times");
    } else if (!nodes[seen_at[e]].contains(edges[e].u) || !nodes[seen_at[e]].contains(edges[e].v)) {
      report(8, seen_at[e], name + " lies outside its node");
    } else if (tree.edge_node(e) != seen_at[e] || tree.edge_in_extra(e) != (seen_extra[e] != 0)) {
      report(8, seen_at[e], name + " location index is stale");
    }
  }
  return out;
}

std::string describe(const Violation& v) {
  std::string s = "property " + std::to_string(v.property);
  if (v.node != kNoNode) s += " at node " + std::to_string(v.node);
  return s + ": " + v.message;
}

}  // namespace effres
