#pragma once

#include <cstdint>
#include <vector>

#include "balcut/graph.hpp"
#include "balcut/strength.hpp"

namespace balcut {

struct SparsifyParams {
  double beta = 1.0;
  double eps = 0.5;
  double d = 3.0;
  std::uint64_t seed = 0;
};

struct SparsifierResult {
  DiGraph h;
  double rho = 0.0;
  SparsifyParams params;
  double expected_edges = 0.0;    // sum of p_e
  std::vector<EdgeId> source;     // h edge id -> g edge id
  std::vector<double> probability;  // p_e per g edge id
};

/// 3 d (beta + 1) ln(n) / eps^2.
double sparsify_rho(std::size_t n, const SparsifyParams& p);

/// Keeps edge e independently with p_e = min(1, rho u_e / k_e) and weight
/// u_e / p_e. Edge e's coin depends only on (seed, e).
SparsifierResult sparsify(const DiGraph& g, const SparsifyParams& p);
/// Same, reusing precomputed strengths.
SparsifierResult sparsify(const DiGraph& g, const StrengthMap& strengths, const SparsifyParams& p);

/// eps * sqrt((alpha + 1) / (beta + 1)).
double guaranteed_tolerance(double alpha, double beta, double eps);

double expected_edges(const DiGraph& g, const SparsifyParams& p);
double expected_edges(const DiGraph& g, const StrengthMap& strengths, const SparsifyParams& p);

}  // namespace balcut
