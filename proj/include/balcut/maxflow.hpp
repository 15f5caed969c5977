#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "balcut/graph.hpp"

namespace balcut {

// Max flow on undirected graphs. The DiGraph's orientation is ignored: edge
// e is an undirected edge {tail, head} of capacity u_e, and flow[e] > 0 means
// flow from tail to head.

struct FlowState {
  const DiGraph* graph = nullptr;
  Vertex s = 0;
  Vertex t = 0;
  std::vector<double> flow;  // signed, per edge id
  double value = 0.0;

  /// Arc 2e: tail -> head with capacity u - x; arc 2e+1: head -> tail with u + x.
  DiGraph residual() const;
};

struct KargerLevineStep {
  double alpha = 0.0;
  std::size_t requested = 0;  // alpha * n draws
  std::size_t distinct = 0;   // arcs left after dropping duplicates
  bool found_path = false;
  std::size_t augmentations = 0;
};

struct KargerLevineResult {
  double value = 0.0;
  std::vector<double> flow;
  std::vector<KargerLevineStep> trace;
  bool used_full_residual = false;  // reached alpha n >= m
  std::size_t full_augmentations = 0;
};

using FlowObserver = std::function<void(const FlowState&)>;

/// Strength-weighted residual sampling with doubling alpha; the final phase
/// augments on the full residual, so the value is exact. `observer` sees the
/// state after every augmentation.
KargerLevineResult karger_levine(const DiGraph& g, Vertex s, Vertex t, std::uint64_t seed,
                                 const FlowObserver& observer = {});

/// Exact undirected max flow (each edge as two opposite arcs).
double undirected_max_flow(const DiGraph& g, Vertex s, Vertex t);

struct ResidualBalanceReport {
  double max_balance = 1.0;
  double bound = 2.0;
  bool ok = true;
  std::uint64_t cuts = 0;
};

/// Enumerates every S with s in S, t not in S (n <= 20) and compares the
/// residual cut balance with 2 / gamma.
ResidualBalanceReport residual_balance_bound(const FlowState& fs, double gamma);

/// For-all sparsifier of the residual graph with beta = 2 / gamma.
DiGraph sample_residual(const FlowState& fs, double gamma, std::uint64_t seed, double eps = 0.1,
                        double d = 3.0);

/// Whether t is reachable from s over positive-weight edges.
bool has_path(const DiGraph& g, Vertex s, Vertex t);

}  // namespace balcut
