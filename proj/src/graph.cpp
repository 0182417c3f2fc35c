#include "effres/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "effres/error.hpp"

namespace effres {

WeightedGraph::WeightedGraph(std::size_t n, std::span<const Edge> edges) : degree_(n, 0.0) {
  for (const Edge& e : edges) add_edge(e.u, e.v, e.w);
}

void WeightedGraph::check_vertex(Vertex v) const {
  if (v >= degree_.size()) {
    throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " not in graph");
  }
}

void WeightedGraph::add_edge(Vertex u, Vertex v, double w) {
  check_vertex(u);
  check_vertex(v);
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorCode::NonPositiveWeight, "edge weight must be positive, got " + std::to_string(w));
  }
  if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
  edges_.push_back({u, v, w});
  degree_[u] += w;
  degree_[v] += w;
}

void WeightedGraph::remove_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  for (auto it = edges_.rbegin(); it != edges_.rend(); ++it) {
    if ((it->u == u && it->v == v) || (it->u == v && it->v == u)) {
      degree_[u] -= it->w;
      degree_[v] -= it->w;
      edges_.erase(std::next(it).base());
      return;
    }
  }
  throw Error(ErrorCode::NoSuchEdge, "no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
}

bool WeightedGraph::has_edge(Vertex u, Vertex v) const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return (e.u == u && e.v == v) || (e.u == v && e.v == u);
  });
}

bool WeightedGraph::degrees_consistent(double rel_tol) const {
  std::vector<double> fresh(degree_.size(), 0.0);
  for (const Edge& e : edges_) {
    fresh[e.u] += e.w;
    fresh[e.v] += e.w;
  }
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    if (std::abs(fresh[i] - degree_[i]) > rel_tol * std::max(1.0, std::abs(fresh[i]))) return false;
  }
  return true;
}

DemandVector DemandVector::indicator(std::size_t n, Vertex u) {
  DemandVector d(n);
  d.values_.at(u) = 1.0;
  return d;
}

DemandVector DemandVector::pair(std::size_t n, Vertex s, Vertex t) {
  DemandVector d(n);
  d.values_.at(s) += 1.0;
  d.values_.at(t) -= 1.0;
  return d;
}

double DemandVector::sum() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0.0); }

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) noexcept {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) noexcept {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

std::vector<std::size_t> connected_components(const WeightedGraph& g) {
  DisjointSets sets(g.vertex_count());
  for (const Edge& e : g.edges()) sets.unite(e.u, e.v);
  std::vector<std::size_t> label(g.vertex_count());
  std::vector<std::size_t> root_label(g.vertex_count(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const std::size_t r = sets.find(v);
    if (root_label[r] == SIZE_MAX) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

SymmetricMatrix laplacian(const WeightedGraph& g) {
  SymmetricMatrix l(g.vertex_count());
  for (const Edge& e : g.edges()) {
    l.at(e.u, e.u) += e.w;
    l.at(e.v, e.v) += e.w;
    l.at(e.u, e.v) -= e.w;
  }
  return l;
}

namespace {

void check_pair(const WeightedGraph& g, Vertex s, Vertex t) {
  if (s >= g.vertex_count() || t >= g.vertex_count()) {
    throw Error(ErrorCode::UnknownVertex, "query vertex out of range");
  }
  if (s == t) throw Error(ErrorCode::SameVertex, "s and t must differ");
  DisjointSets sets(g.vertex_count());
  for (const Edge& e : g.edges()) sets.unite(e.u, e.v);
  if (!sets.same(s, t)) {
    throw Error(ErrorCode::Disconnected, std::to_string(s) + " and " + std::to_string(t) + " are disconnected");
  }
}

std::vector<double> potentials(const WeightedGraph& g, Vertex s, Vertex t) {
  const SymmetricMatrix lp = pinv(laplacian(g));
  return lp.multiply(DemandVector::pair(g.vertex_count(), s, t).values());
}

}  // namespace

double effective_resistance_exact(const WeightedGraph& g, Vertex s, Vertex t) {
  check_pair(g, s, t);
  const std::vector<double> phi = potentials(g, s, t);
  return phi[s] - phi[t];
}

double electrical_flow_energy(const WeightedGraph& g, Vertex s, Vertex t) {
  check_pair(g, s, t);
  const std::vector<double> phi = potentials(g, s, t);
  double energy = 0.0;
  for (const Edge& e : g.edges()) {
    const double flow = (phi[e.u] - phi[e.v]) * e.w;  // f = (phi_u - phi_v) / r
    energy += flow * flow / e.w;
  }
  return energy;
}

ResistanceOracle::ResistanceOracle(const WeightedGraph& g)
    : n_(g.vertex_count()), component_(connected_components(g)), local_(g.vertex_count()) {
  const std::size_t count = n_ == 0 ? 0 : *std::max_element(component_.begin(), component_.end()) + 1;
  blocks_.resize(count);
  for (Vertex v = 0; v < n_; ++v) {
    Block& b = blocks_[component_[v]];
    local_[v] = b.vertices.size();
    b.vertices.push_back(v);
  }
  std::vector<std::vector<Eigen::Triplet<double>>> entries(count);
  // local index 0 is the ground: drop its row and column
  for (const Edge& e : g.edges()) {
    auto& m = entries[component_[e.u]];
    const auto a = static_cast<Eigen::Index>(local_[e.u]) - 1;
    const auto b = static_cast<Eigen::Index>(local_[e.v]) - 1;
    if (a >= 0) m.emplace_back(a, a, e.w);
    if (b >= 0) m.emplace_back(b, b, e.w);
    if (a >= 0 && b >= 0) {
      m.emplace_back(a, b, -e.w);
      m.emplace_back(b, a, -e.w);
    }
  }
  for (std::size_t c = 0; c < count; ++c) {
    const auto k = static_cast<Eigen::Index>(blocks_[c].vertices.size()) - 1;
    if (k == 0) continue;
    Eigen::SparseMatrix<double> m(k, k);
    m.setFromTriplets(entries[c].begin(), entries[c].end());
    blocks_[c].factor = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(m);
    if (blocks_[c].factor->info() != Eigen::Success) {
      throw Error(ErrorCode::SingularBlock, "grounded Laplacian is not positive definite");
    }
  }
}

double ResistanceOracle::resistance(Vertex s, Vertex t) const {
  if (s >= n_ || t >= n_) throw Error(ErrorCode::UnknownVertex, "query vertex out of range");
  if (s == t) throw Error(ErrorCode::SameVertex, "s and t must differ");
  if (component_[s] != component_[t]) {
    throw Error(ErrorCode::Disconnected, std::to_string(s) + " and " + std::to_string(t) + " are disconnected");
  }
  const Block& b = blocks_[component_[s]];
  const auto k = static_cast<Eigen::Index>(b.vertices.size()) - 1;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  const auto a = static_cast<Eigen::Index>(local_[s]) - 1;
  const auto c = static_cast<Eigen::Index>(local_[t]) - 1;
  if (a >= 0) rhs(a) += 1.0;
  if (c >= 0) rhs(c) -= 1.0;
  const Eigen::VectorXd phi = b.factor->solve(rhs);
  const double ps = a >= 0 ? phi(a) : 0.0;
  const double pt = c >= 0 ? phi(c) : 0.0;
  return ps - pt;
}

WeightedGraph apply_update(WeightedGraph g, const Update& op) {
  if (op.kind == Update::Kind::Insert) {
    g.add_edge(op.u, op.v, op.w);
  } else {
    g.remove_edge(op.u, op.v);
  }
  return g;
}

}  // namespace effres
