#include "effres/dynamic_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "effres/error.hpp"
#include "effres/random.hpp"

namespace effres {

void IndexParams::validate() const {
  if (!(delta > 0.0 && delta < 0.5)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1/2)");
  if (!(c_log >= 0.0)) throw Error(ErrorCode::InvalidArgument, "c_log must be non-negative");
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rebuild coefficient must be positive");
  if (!(c_terminals > 0.0)) throw Error(ErrorCode::InvalidArgument, "terminal coefficient must be positive");
  if (!(oversample > 0.0)) throw Error(ErrorCode::InvalidArgument, "oversampling constant must be positive");
}

DynamicIndex::DynamicIndex(const WeightedGraph& g, std::span<const Vertex> terminals, const IndexParams& params)
    : params_(params) {
  params_.validate();
  const std::size_t n = g.vertex_count();
  const double nd = static_cast<double>(std::max<std::size_t>(n, 2));
  delta_prime_ = params_.delta / (params_.c_log * std::log2(nd) + 1.0);
  gamma_ = std::min(0.5, 1.0 / (nd * nd * nd));
  terminal_budget_ = static_cast<std::size_t>(std::ceil(params_.c_terminals * std::sqrt(static_cast<double>(n))));
  period_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(params_.rho * std::sqrt(static_cast<double>(n)))));

  terminals_.assign(terminals.begin(), terminals.end());
  std::sort(terminals_.begin(), terminals_.end());
  terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());
  for (Vertex v : terminals_) {
    if (v >= n) throw Error(ErrorCode::UnknownVertex, "terminal " + std::to_string(v) + " out of range");
  }
  if (terminals_.size() > terminal_budget_) {
    throw Error(ErrorCode::TooManyTerminals, std::to_string(terminals_.size()) + " terminals exceed the budget of " +
                                                 std::to_string(terminal_budget_));
  }
  tree_ = SeparatorTree::build(g, terminals_, params_.tree);
  recompute_all();
}

void DynamicIndex::check_vertex(Vertex v) const {
  if (v >= tree_.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " out of range");
}

void DynamicIndex::touch(NodeId id) {
  if (!journal_active_ || journaled_[id]) return;
  journaled_[id] = 1;
  const TreeNode& h = tree_.node(id);
  journal_.push_back({id, h.boundary, h.asc, h.recomputes});
}

void DynamicIndex::recompute_node(NodeId id) {
  touch(id);
  TreeNode& h = tree_.node(id);
  SparsifyParams sp;
  sp.epsilon = delta_prime_;
  sp.gamma = gamma_;
  sp.oversample = params_.oversample;
  sp.seed = derive_seed(params_.seed, {epoch_, static_cast<std::uint64_t>(id), h.recomputes});
  ++h.recomputes;

  TerminalGraph input;
  if (h.is_leaf()) {
    input.vertices = h.vertices;
    for (EdgeId e : h.edges) {
      const TreeEdge& te = tree_.edge(e);
      input.edges.push_back({te.u, te.v, te.w});
    }
  } else {
    input = merge(tree_.node(h.child[0]).asc, tree_.node(h.child[1]).asc);
    for (EdgeId e : h.extra) {
      const TreeEdge& te = tree_.edge(e);
      input.edges.push_back({te.u, te.v, te.w});
    }
  }
  input.terminals = h.boundary;
  input.normalize();
  h.asc = approx_schur(input, sp);
}

void DynamicIndex::recompute(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  // children before parents
  std::stable_sort(nodes.begin(), nodes.end(),
                   [&](NodeId a, NodeId b) { return tree_.node(a).depth > tree_.node(b).depth; });
  for (NodeId id : nodes) recompute_node(id);
  last_recomputed_ = nodes.size();
}

void DynamicIndex::recompute_all() {
  std::vector<NodeId> all(tree_.nodes().size());
  for (NodeId i = 0; i < all.size(); ++i) all[i] = i;
  recompute(std::move(all));
}

std::vector<NodeId> DynamicIndex::boundary_walk(Vertex u, NodeId start) {
  std::vector<NodeId> stack;
  for (NodeId id = start; id != kNoNode;) {
    if (tree_.node(id).in_boundary(u)) break;
    touch(id);
    tree_.add_boundary_vertex(id, u);
    stack.push_back(id);
    id = tree_.node(id).is_leaf() ? kNoNode : tree_.child_containing(id, u);
  }
  return stack;
}

void DynamicIndex::after_update() {
  ++ops_;
  if (ops_ >= period_) {
    rebuild();
  } else if (params_.check_invariants) {
    for (const Violation& v : check()) {
      if (v.property == 8) throw std::logic_error("edge-location invariant broken: " + describe(v));
    }
  }
}

void DynamicIndex::insert(Vertex u, Vertex v, double w) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loop");
  if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::NonPositiveWeight, "weight must be positive");
  if (journal_active_) throw Error(ErrorCode::InvalidArgument, "updates are not allowed inside a transaction");

  std::vector<NodeId> path{tree_.root()};
  NodeId holder = tree_.root();
  while (!tree_.node(holder).is_leaf()) {
    const NodeId next = tree_.child_containing(holder, u, v);
    if (next == kNoNode) break;
    holder = next;
    path.push_back(holder);
  }
  std::vector<NodeId> affected = path;
  last_stack_ = path.size();
  if (tree_.node(holder).is_leaf()) {
    tree_.append_edge(u, v, w, holder, false);
  } else {
    tree_.append_edge(u, v, w, holder, true);
    for (Vertex x : {u, v}) {
      const auto stack = boundary_walk(x, holder);
      last_stack_ = std::max(last_stack_, stack.size());
      affected.insert(affected.end(), stack.begin(), stack.end());
    }
  }
  recompute(std::move(affected));
  after_update();
}

void DynamicIndex::erase(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (journal_active_) throw Error(ErrorCode::InvalidArgument, "updates are not allowed inside a transaction");
  const EdgeId e = tree_.find_live_edge(u, v);
  std::vector<NodeId> path = tree_.path_to(tree_.edge_node(e));
  tree_.kill_edge(e);
  last_stack_ = path.size();
  recompute(std::move(path));
  after_update();
}

void DynamicIndex::add_boundary(Vertex u, NodeId h) {
  check_vertex(u);
  if (!tree_.node(h).contains(u)) {
    throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(u) + " is not in node " + std::to_string(h));
  }
  const auto stack = boundary_walk(u, h);
  last_stack_ = stack.size();
  if (stack.empty()) {
    last_recomputed_ = 0;
    return;
  }
  std::vector<NodeId> affected = tree_.path_to(h);
  affected.insert(affected.end(), stack.begin(), stack.end());
  recompute(std::move(affected));
}

void DynamicIndex::add_terminal(Vertex u) {
  check_vertex(u);
  auto it = std::lower_bound(terminals_.begin(), terminals_.end(), u);
  if (it != terminals_.end() && *it == u) {
    last_stack_ = 0;
    last_recomputed_ = 0;
    return;
  }
  if (terminals_.size() + 1 > terminal_budget_) {
    throw Error(ErrorCode::TooManyTerminals, "terminal budget of " + std::to_string(terminal_budget_) + " is used up");
  }
  terminals_.insert(it, u);
  add_boundary(u, tree_.root());
}

void DynamicIndex::promote(Vertex u) {
  if (!journal_active_) throw Error(ErrorCode::InvalidArgument, "promote() needs an open transaction");
  check_vertex(u);
  auto it = std::lower_bound(terminals_.begin(), terminals_.end(), u);
  if (it == terminals_.end() || *it != u) terminals_.insert(it, u);
  add_boundary(u, tree_.root());
}

void DynamicIndex::rebuild() {
  if (journal_active_) throw Error(ErrorCode::InvalidArgument, "rebuild inside a transaction");
  DynamicIndex fresh = *this;
  fresh.tree_ = SeparatorTree::build(tree_.current_graph(), terminals_, params_.tree);
  ++fresh.epoch_;
  fresh.ops_ = 0;
  fresh.recompute_all();
  fresh.last_stack_ = 0;
  *this = std::move(fresh);
}

void DynamicIndex::begin_transaction() {
  if (journal_active_) throw Error(ErrorCode::InvalidArgument, "transaction already open");
  journal_active_ = true;
  journal_.clear();
  journaled_.assign(tree_.nodes().size(), 0);
  saved_terminals_ = terminals_;
}

void DynamicIndex::rollback() {
  if (!journal_active_) return;
  for (auto& s : journal_) {
    TreeNode& h = tree_.node(s.id);
    h.boundary = std::move(s.boundary);
    h.asc = std::move(s.asc);
    h.recomputes = s.recomputes;
  }
  terminals_ = std::move(saved_terminals_);
  commit();
}

void DynamicIndex::commit() {
  journal_active_ = false;
  journal_.clear();
  journaled_.clear();
  saved_terminals_.clear();
}

std::vector<Violation> DynamicIndex::check() const {
  ValidateOptions opt;
  opt.dynamic = true;
  opt.leaf_slack = period_;
  opt.c_boundary = std::max(opt.c_boundary, static_cast<double>(tree_.vertex_count()));
  auto out = validate(tree_, opt);
  for (const TreeNode& h : tree_.nodes()) {
    if (!std::includes(h.asc.vertices.begin(), h.asc.vertices.end(), h.boundary.begin(), h.boundary.end())) {
      out.push_back({3, h.id, "cached ASC does not cover the boundary"});
    }
  }
  return out;
}

namespace {

struct Writer {
  std::string out;
  template <typename T>
  void raw(const T& value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.append(buf, sizeof(T));
  }
  void u64(std::uint64_t x) { raw(x); }
  void vertices(const std::vector<Vertex>& vs) {
    u64(vs.size());
    for (Vertex v : vs) raw(v);
  }
  void ids(const std::vector<std::size_t>& xs) {
    u64(xs.size());
    for (std::size_t x : xs) u64(x);
  }
  void edges(const std::vector<Edge>& es) {
    u64(es.size());
    for (const Edge& e : es) {
      raw(e.u);
      raw(e.v);
      raw(e.w);
    }
  }
};

}  // namespace

std::string DynamicIndex::serialize() const {
  Writer w;
  w.u64(tree_.vertex_count());
  w.u64(epoch_);
  w.u64(ops_);
  w.vertices(terminals_);
  for (const TreeEdge& e : tree_.edges()) {
    w.raw(e.u);
    w.raw(e.v);
    w.raw(e.w);
    w.raw(static_cast<char>(e.alive));
  }
  for (const TreeNode& h : tree_.nodes()) {
    w.u64(h.id);
    w.u64(h.parent);
    w.u64(h.child[0]);
    w.u64(h.child[1]);
    w.u64(h.depth);
    w.u64(h.height);
    w.vertices(h.vertices);
    w.vertices(h.separator);
    w.vertices(h.boundary);
    w.ids(h.edges);
    w.ids(h.extra);
    w.vertices(h.asc.vertices);
    w.vertices(h.asc.terminals);
    w.edges(h.asc.edges);
    w.u64(h.recomputes);
  }
  return std::move(w.out);
}

}  // namespace effres
