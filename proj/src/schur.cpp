#include "effres/schur.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "effres/error.hpp"

namespace effres {

namespace {

void sort_unique(std::vector<Vertex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<Vertex>& sorted, Vertex v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

TerminalGraph TerminalGraph::from_graph(const WeightedGraph& g, std::span<const Vertex> terminals) {
  TerminalGraph tg;
  tg.vertices.resize(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) tg.vertices[i] = static_cast<Vertex>(i);
  tg.edges.assign(g.edges().begin(), g.edges().end());
  tg.terminals.assign(terminals.begin(), terminals.end());
  tg.normalize();
  return tg;
}

void TerminalGraph::normalize() {
  sort_unique(vertices);
  sort_unique(terminals);
  for (Vertex k : terminals) {
    if (!contains(vertices, k)) throw Error(ErrorCode::UnknownVertex, "terminal " + std::to_string(k) + " not a vertex");
  }
  for (const Edge& e : edges) {
    if (!contains(vertices, e.u) || !contains(vertices, e.v)) {
      throw Error(ErrorCode::UnknownVertex, "edge endpoint not a vertex");
    }
  }
}

bool TerminalGraph::has_vertex(Vertex v) const noexcept { return contains(vertices, v); }
bool TerminalGraph::is_terminal(Vertex v) const noexcept { return contains(terminals, v); }

std::vector<Vertex> TerminalGraph::non_terminals() const {
  std::vector<Vertex> out;
  std::set_difference(vertices.begin(), vertices.end(), terminals.begin(), terminals.end(), std::back_inserter(out));
  return out;
}

std::size_t TerminalGraph::local_index(Vertex v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - vertices.begin());
}

SymmetricMatrix TerminalGraph::laplacian() const { return effres::laplacian(to_weighted_graph()); }

WeightedGraph TerminalGraph::to_weighted_graph() const {
  WeightedGraph g(vertices.size());
  for (const Edge& e : edges) {
    g.add_edge(static_cast<Vertex>(local_index(e.u)), static_cast<Vertex>(local_index(e.v)), e.w);
  }
  return g;
}

std::vector<Edge> merge_parallel_edges(std::span<const Edge> edges) {
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    sorted.push_back(e);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  std::vector<Edge> out;
  for (const Edge& e : sorted) {
    if (!out.empty() && out.back().u == e.u && out.back().v == e.v) {
      out.back().w += e.w;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

TerminalGraph exact_schur(const TerminalGraph& g, double drop_tol) {
  TerminalGraph out;
  out.vertices = g.terminals;
  out.terminals = g.terminals;
  if (g.terminals.empty()) return out;

  // components of g that contain no terminal are discarded up front, so every
  // remaining non-terminal block is nonsingular
  const std::size_t n = g.vertices.size();
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  ends.reserve(g.edges.size());
  for (const Edge& e : g.edges) ends.emplace_back(g.local_index(e.u), g.local_index(e.v));
  DisjointSets sets(n);
  for (const auto& [a, b] : ends) sets.unite(a, b);
  std::vector<char> has_terminal(n, 0);
  for (Vertex k : g.terminals) has_terminal[sets.find(g.local_index(k))] = 1;

  std::vector<std::size_t> keep_local;
  std::vector<Vertex> sub_vertices;
  std::vector<std::size_t> remap(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_terminal[sets.find(i)]) continue;
    remap[i] = sub_vertices.size();
    sub_vertices.push_back(g.vertices[i]);
  }
  const std::size_t m = sub_vertices.size();
  if (m == g.terminals.size()) {
    std::vector<Edge> kept;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (remap[ends[i].first] != SIZE_MAX) kept.push_back(g.edges[i]);
    }
    out.edges = merge_parallel_edges(kept);
    return out;
  }

  SymmetricMatrix lap(m);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const std::size_t a = remap[ends[i].first];
    const std::size_t b = remap[ends[i].second];
    if (a == SIZE_MAX) continue;
    const double w = g.edges[i].w;
    lap.at(a, a) += w;
    lap.at(b, b) += w;
    lap.at(a, b) -= w;
  }
  for (Vertex k : g.terminals) {
    keep_local.push_back(static_cast<std::size_t>(std::lower_bound(sub_vertices.begin(), sub_vertices.end(), k) -
                                                  sub_vertices.begin()));
  }
  const SymmetricMatrix s = schur_block(lap, keep_local);

  double diag = 0.0;
  for (std::size_t i = 0; i < s.order(); ++i) diag = std::max(diag, s(i, i));
  const double floor = drop_tol * diag;
  for (std::size_t a = 0; a < s.order(); ++a) {
    for (std::size_t b = a + 1; b < s.order(); ++b) {
      const double w = -s(a, b);
      if (w > floor) out.edges.push_back({g.terminals[a], g.terminals[b], w});
    }
  }
  return out;
}

double walk_weight(const TerminalGraph& g, std::span<const Vertex> walk) {
  if (walk.size() < 2) throw Error(ErrorCode::NotAWalk, "a walk needs at least one edge");
  for (Vertex v : walk) {
    if (!g.has_vertex(v)) throw Error(ErrorCode::NotAWalk, "walk leaves the graph");
  }
  if (!g.is_terminal(walk.front()) || !g.is_terminal(walk.back())) {
    throw Error(ErrorCode::NotTerminalFree, "walk endpoints must be terminals");
  }
  for (std::size_t i = 1; i + 1 < walk.size(); ++i) {
    if (g.is_terminal(walk[i])) throw Error(ErrorCode::NotTerminalFree, "interior vertex is a terminal");
  }
  const std::vector<Edge> merged = merge_parallel_edges(g.edges);
  auto conductance = [&](Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(merged.begin(), merged.end(), Edge{a, b, 0.0},
                               [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
    return (it != merged.end() && it->u == a && it->v == b) ? it->w : 0.0;
  };
  std::map<Vertex, double> degree;
  for (const Edge& e : merged) {
    degree[e.u] += e.w;
    degree[e.v] += e.w;
  }
  double weight = 1.0;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const double c = conductance(walk[i], walk[i + 1]);
    if (c == 0.0) throw Error(ErrorCode::NotAWalk, "consecutive vertices are not adjacent");
    weight *= c;
  }
  for (std::size_t i = 1; i + 1 < walk.size(); ++i) weight /= degree[walk[i]];
  return weight;
}

TerminalGraph schur_by_walks(const TerminalGraph& g, std::size_t max_len, std::size_t walk_budget) {
  const std::size_t n = g.vertices.size();
  const std::vector<Edge> merged = merge_parallel_edges(g.edges);
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  std::vector<double> degree(n, 0.0);
  std::vector<char> terminal(n, 0);
  for (const Edge& e : merged) {
    const std::size_t a = g.local_index(e.u);
    const std::size_t b = g.local_index(e.v);
    adj[a].push_back({b, e.w});
    adj[b].push_back({a, e.w});
    degree[a] += e.w;
    degree[b] += e.w;
  }
  for (Vertex k : g.terminals) terminal[g.local_index(k)] = 1;

  // walks are enumerated from every terminal; a walk and its reverse both
  // reach the accumulator, so each unordered pair collects twice its weight
  std::map<std::pair<std::size_t, std::size_t>, double> acc;
  std::size_t walks = 0;
  struct Frame {
    std::size_t vertex;
    std::size_t length;
    double weight;
  };
  for (std::size_t start = 0; start < n; ++start) {
    if (!terminal[start]) continue;
    std::vector<Frame> stack{{start, 0, 1.0}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (f.length >= max_len) continue;
      const double scale = f.length == 0 ? 1.0 : 1.0 / degree[f.vertex];
      for (const auto& [next, w] : adj[f.vertex]) {
        const double weight = f.weight * scale * w;
        if (++walks > walk_budget) throw Error(ErrorCode::Budget, "walk enumeration exceeded budget");
        if (terminal[next]) {
          if (next != start) acc[{std::min(start, next), std::max(start, next)}] += weight;
        } else {
          stack.push_back({next, f.length + 1, weight});
        }
      }
    }
  }

  TerminalGraph out;
  out.vertices = g.terminals;
  out.terminals = g.terminals;
  for (const auto& [key, w] : acc) out.edges.push_back({g.vertices[key.first], g.vertices[key.second], 0.5 * w});
  return out;
}

TerminalGraph merge(const TerminalGraph& g1, const TerminalGraph& g2) {
  std::vector<Vertex> shared;
  std::set_intersection(g1.vertices.begin(), g1.vertices.end(), g2.vertices.begin(), g2.vertices.end(),
                        std::back_inserter(shared));
  for (Vertex v : shared) {
    if (!g1.is_terminal(v) || !g2.is_terminal(v)) {
      throw Error(ErrorCode::SharedNonTerminal, "shared vertex " + std::to_string(v) + " is not a terminal in both");
    }
  }
  TerminalGraph out;
  std::set_union(g1.vertices.begin(), g1.vertices.end(), g2.vertices.begin(), g2.vertices.end(),
                 std::back_inserter(out.vertices));
  std::set_union(g1.terminals.begin(), g1.terminals.end(), g2.terminals.begin(), g2.terminals.end(),
                 std::back_inserter(out.terminals));
  out.edges = g1.edges;
  out.edges.insert(out.edges.end(), g2.edges.begin(), g2.edges.end());
  return out;
}

}  // namespace effres
