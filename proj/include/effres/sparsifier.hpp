#pragma once

#include <cstddef>
#include <cstdint>

#include "effres/graph.hpp"
#include "effres/schur.hpp"

namespace effres {

struct SparsifyParams {
  double epsilon = 0.25;   // relative quadratic-form error, in (0, 1/2)
  double gamma = 0.1;      // failure probability, in (0, 1)
  double oversample = 4.0; // constant C
  std::uint64_t seed = 42;

  /// Throws InvalidArgument when a field is outside its range.
  void validate() const;
};

/// ceil(C * n * eps^-2 * ln(n / gamma)); the hard cap on output edges.
std::size_t sparsifier_edge_budget(std::size_t n, const SparsifyParams& p);

/// Importance sampling by exact leverage scores. Parallel edges are merged
/// first; edge e survives independently with probability
/// p_e = min(1, C eps^-2 ln(n/gamma) w_e R_e) and is reweighted by 1/p_e.
/// Deterministic in (g, p). The terminal set is carried through unchanged.
TerminalGraph spectral_sparsify(const TerminalGraph& g, const SparsifyParams& p);
WeightedGraph spectral_sparsify(const WeightedGraph& g, const SparsifyParams& p);

/// (1 +- eps)-approximate Schur complement of g onto its terminals:
/// exact elimination followed by spectral_sparsify.
TerminalGraph approx_schur(const TerminalGraph& g, const SparsifyParams& p);

/// Extreme ratios x^T L(H) x / x^T L(G) x over x orthogonal to the kernel of
/// L(G), i.e. the extreme generalized eigenvalues of (L(H), L(G)). Both graphs
/// must share a vertex count.
struct SpectralBounds {
  double lower = 0.0;
  double upper = 0.0;
};
SpectralBounds spectral_bounds(const WeightedGraph& g, const WeightedGraph& h);

}  // namespace effres
