#pragma once

#include <optional>

#include "effres/dynamic_index.hpp"
#include "effres/error.hpp"
#include "effres/schur.hpp"

namespace effres {

struct QueryParams {
  double epsilon = 0.25;  // overall accuracy, in (0, 1)

  /// Accuracy requested from the index.
  double delta() const noexcept { return epsilon / 4.0; }
  /// Tolerance granted to the estimator on the root graph.
  double delta_est() const noexcept { return epsilon / 4.0; }
  /// Throws InvalidArgument unless (1 + 2 delta)(1 + delta_est) <= 1 + epsilon
  /// and (1 - 2 delta)(1 - delta_est) >= 1 - epsilon.
  void validate() const;
};

/// Index parameters matching a query accuracy.
IndexParams index_params_for(const QueryParams& q, IndexParams base = {});

/// Effective resistance between s and t in h by a dense pseudo-inverse solve
/// (accurate to round-off, well inside any delta_est).
/// Throws UnknownVertex, SameVertex, Disconnected.
double estimate_eff_res(const TerminalGraph& h, Vertex s, Vertex t);

/// Promotes s and t into the root boundary, estimates on the root cache and
/// undoes every change, leaving the index bit-identical.
/// Throws SameVertex, UnknownVertex, Disconnected.
double query(DynamicIndex& index, Vertex s, Vertex t);

/// Maintains R(s, t) for one fixed pair: s and t stay terminals, each update
/// refreshes the stored answer and value() is a lookup.
class SinglePairTracker {
 public:
  SinglePairTracker(DynamicIndex& index, Vertex s, Vertex t);
  void insert(Vertex u, Vertex v, double w);
  void erase(Vertex u, Vertex v);
  /// Stored answer; throws Disconnected while s and t are separated.
  double value() const;
  bool connected() const noexcept { return psi_.has_value(); }

 private:
  void refresh();
  DynamicIndex& index_;
  Vertex s_;
  Vertex t_;
  std::optional<double> psi_;
};

}  // namespace effres
