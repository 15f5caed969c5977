#pragma once

#include <vector>

#include "balcut/graph.hpp"

namespace balcut {

// Everything here works on the undirected view: each directed edge becomes
// one undirected edge of the same weight, so antiparallel pairs become
// parallel edges.

struct MinCutResult {
  double value = 0.0;
  CutSet side;  // last-merged group of the best phase
};

/// Stoer-Wagner. A disconnected input yields value 0 and a separating side.
MinCutResult global_min_cut(const DiGraph& g);

struct StrengthMap {
  std::vector<double> k;  // per edge id
  bool exact = true;
  // Connected pieces visited by the decomposition (each has >= 2 vertices);
  // they form a laminar family.
  std::vector<std::vector<Vertex>> pieces;
};

/// Exact strengths by recursive min-cut decomposition: every edge of a
/// connected piece gets max(floor, c) where c is the piece's min cut, the
/// piece is split along that cut and both sides recurse with the raised floor.
StrengthMap compute_strengths(const DiGraph& g);

/// Sum of u_e / k_e. Zero-weight edges contribute nothing.
double strength_sum_check(const DiGraph& g, const StrengthMap& sm);

}  // namespace balcut
