#include "effres/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "effres/error.hpp"
#include "effres/random.hpp"

namespace effres {

void SparsifyParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1/2), got " + std::to_string(epsilon));
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0, 1)");
  if (!(oversample > 0.0)) throw Error(ErrorCode::InvalidArgument, "oversampling constant must be positive");
}

namespace {

double samples_per_unit_leverage(std::size_t n, const SparsifyParams& p) {
  return p.oversample * std::log(static_cast<double>(n) / p.gamma) / (p.epsilon * p.epsilon);
}

constexpr int kMaxRedraws = 64;

}  // namespace

std::size_t sparsifier_edge_budget(std::size_t n, const SparsifyParams& p) {
  if (n == 0) return 0;
  return static_cast<std::size_t>(std::ceil(static_cast<double>(n) * samples_per_unit_leverage(n, p)));
}

TerminalGraph spectral_sparsify(const TerminalGraph& g, const SparsifyParams& p) {
  p.validate();
  TerminalGraph out;
  out.vertices = g.vertices;
  out.terminals = g.terminals;
  const std::vector<Edge> merged = merge_parallel_edges(g.edges);
  const std::size_t n = g.vertices.size();
  if (merged.empty()) return out;
  const double rho = samples_per_unit_leverage(n, p);

  std::vector<std::size_t> a(merged.size());
  std::vector<std::size_t> b(merged.size());
  std::vector<double> degree(n, 0.0);
  for (std::size_t i = 0; i < merged.size(); ++i) {
    a[i] = g.local_index(merged[i].u);
    b[i] = g.local_index(merged[i].v);
    degree[a[i]] += merged[i].w;
    degree[b[i]] += merged[i].w;
  }

  // R_uv >= 1 / min(d_u, d_v) (short every other vertex together), so this
  // lower bound on the leverage already decides p_e = 1 for most edges
  std::vector<double> prob(merged.size(), 1.0);
  bool need_leverage = false;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (rho * merged[i].w / std::min(degree[a[i]], degree[b[i]]) < 1.0) need_leverage = true;
  }
  if (need_leverage) {
    const SymmetricMatrix lp = pinv(g.laplacian());
    for (std::size_t i = 0; i < merged.size(); ++i) {
      const double r = lp(a[i], a[i]) + lp(b[i], b[i]) - 2.0 * lp(a[i], b[i]);
      const double leverage = merged[i].w * std::max(r, 0.0);
      // bridges are kept whatever C is
      prob[i] = leverage >= 1.0 - 1e-9 ? 1.0 : std::min(1.0, rho * leverage);
    }
  }

  const std::size_t budget = sparsifier_edge_budget(n, p);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Rng rng(derive_seed(p.seed, {static_cast<std::uint64_t>(attempt)}));
    out.edges.clear();
    for (std::size_t i = 0; i < merged.size(); ++i) {
      if (prob[i] >= 1.0) {
        out.edges.push_back(merged[i]);
      } else if (prob[i] > 0.0 && rng.uniform() < prob[i]) {
        out.edges.push_back({merged[i].u, merged[i].v, merged[i].w / prob[i]});
      }
    }
    if (out.edges.size() <= budget) return out;
  }
  throw Error(ErrorCode::Budget, "sparsifier exceeded its edge budget on every redraw");
}

WeightedGraph spectral_sparsify(const WeightedGraph& g, const SparsifyParams& p) {
  const TerminalGraph sparse = spectral_sparsify(TerminalGraph::from_graph(g, {}), p);
  return WeightedGraph(g.vertex_count(), sparse.edges);
}

TerminalGraph approx_schur(const TerminalGraph& g, const SparsifyParams& p) {
  return spectral_sparsify(exact_schur(g), p);
}

SpectralBounds spectral_bounds(const WeightedGraph& g, const WeightedGraph& h) {
  if (g.vertex_count() != h.vertex_count()) throw Error(ErrorCode::InvalidArgument, "vertex counts differ");
  // restrict to range(L_G) via its eigenbasis: L_G^{+1/2} L_H L_G^{+1/2}
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g).to_dense());
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> range;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > kRankCutoff * scale) range.push_back(i);
  }
  if (range.empty()) return {1.0, 1.0};
  Eigen::MatrixXd basis(ev.size(), static_cast<Eigen::Index>(range.size()));
  for (std::size_t k = 0; k < range.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(range[k]) / std::sqrt(ev(range[k]));
  }
  const Eigen::MatrixXd reduced = basis.transpose() * laplacian(h).to_dense() * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> inner(reduced, Eigen::EigenvaluesOnly);
  return {inner.eigenvalues().minCoeff(), inner.eigenvalues().maxCoeff()};
}

}  // namespace effres
