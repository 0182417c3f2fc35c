#include "effres/eff_res.hpp"

#include <cmath>
#include <string>

namespace effres {

void QueryParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  const double hi = (1.0 + 2.0 * delta()) * (1.0 + delta_est());
  const double lo = (1.0 - 2.0 * delta()) * (1.0 - delta_est());
  if (hi > 1.0 + epsilon || lo < 1.0 - epsilon) {
    throw Error(ErrorCode::InvalidArgument, "accuracy split does not compose to epsilon");
  }
}

IndexParams index_params_for(const QueryParams& q, IndexParams base) {
  q.validate();
  base.delta = q.delta();
  return base;
}

double estimate_eff_res(const TerminalGraph& h, Vertex s, Vertex t) {
  if (!h.has_vertex(s)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(s) + " not in graph");
  if (!h.has_vertex(t)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(t) + " not in graph");
  if (s == t) throw Error(ErrorCode::SameVertex, "s and t coincide");
  const std::size_t a = h.local_index(s);
  const std::size_t b = h.local_index(t);
  DisjointSets dsu(h.vertices.size());
  for (const Edge& e : h.edges) dsu.unite(h.local_index(e.u), h.local_index(e.v));
  if (!dsu.same(a, b)) {
    throw Error(ErrorCode::Disconnected, std::to_string(s) + " and " + std::to_string(t) + " are disconnected");
  }
  const SymmetricMatrix lp = pinv(h.laplacian());
  return lp(a, a) + lp(b, b) - 2.0 * lp(a, b);
}

double query(DynamicIndex& index, Vertex s, Vertex t) {
  const std::size_t n = index.vertex_count();
  if (s >= n) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(s) + " out of range");
  if (t >= n) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(t) + " out of range");
  if (s == t) throw Error(ErrorCode::SameVertex, "s and t coincide");
  index.begin_transaction();
  try {
    index.promote(s);
    index.promote(t);
    const double psi = estimate_eff_res(index.root_asc(), s, t);
    index.rollback();
    return psi;
  } catch (...) {
    index.rollback();
    throw;
  }
}

SinglePairTracker::SinglePairTracker(DynamicIndex& index, Vertex s, Vertex t) : index_(index), s_(s), t_(t) {
  if (s == t) throw Error(ErrorCode::SameVertex, "s and t coincide");
  index_.add_terminal(s);
  index_.add_terminal(t);
  refresh();
}

void SinglePairTracker::refresh() {
  try {
    psi_ = estimate_eff_res(index_.root_asc(), s_, t_);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Disconnected) throw;
    psi_.reset();
  }
}

void SinglePairTracker::insert(Vertex u, Vertex v, double w) {
  index_.insert(u, v, w);
  refresh();
}

void SinglePairTracker::erase(Vertex u, Vertex v) {
  index_.erase(u, v);
  refresh();
}

double SinglePairTracker::value() const {
  if (!psi_) {
    throw Error(ErrorCode::Disconnected, std::to_string(s_) + " and " + std::to_string(t_) + " are disconnected");
  }
  return *psi_;
}

}  // namespace effres
