#pragma once

#include <cstdint>
#include <vector>

#include "balcut/graph.hpp"

namespace balcut {

/// Random Eulerian multigraph with unit weights: one closed walk that starts
/// with a random permutation of all vertices (so it is strongly connected)
/// and continues with m - n random steps. Needs m >= n, and n >= 3 unless
/// n == 2 and m is even.
DiGraph gen_eulerian(std::size_t n, std::size_t m, std::uint64_t seed);

/// Random connected undirected multigraph with m edges (spanning tree plus
/// random edges), so 2m arcs in the result. Each edge becomes a weight-beta
/// arc one way and a unit arc the other, oriented at random. Every cut has balance at most beta.
DiGraph gen_skewed(std::size_t n, std::size_t m, double beta, std::uint64_t seed);

/// Random connected multigraph with n * degree / 2 undirected edges (a
/// random Hamiltonian cycle plus random pairs). Edge weights are 2^U with U
/// uniform in [0, ceil(log2 n)), so there are about log2 n weight classes.
/// Each edge becomes beta parallel arcs one way and one arc back, oriented at
/// random; beta must be a positive integer and bounds every cut's balance.
DiGraph gen_spread(std::size_t n, std::size_t degree, int beta, std::uint64_t seed);

/// Uniform random digraph with m edges, no self-loops, integer weights in
/// [1, max_weight]. May be disconnected.
DiGraph gen_random_digraph(std::size_t n, std::size_t m, int max_weight, std::uint64_t seed);

/// Random undirected capacitated graph for max flow tests (orientation is
/// meaningless): random edges with integer capacities in [1, max_capacity].
DiGraph gen_random_undirected(std::size_t n, std::size_t m, int max_capacity, std::uint64_t seed);

/// 2n vertices, L = [0, n), R = [n, 2n). Unit matching i -> n + i; every
/// R -> L edge present with probability 1/2 at unit weight. Requires n >= 8.
DiGraph gen_matching_family(std::size_t n, std::uint64_t seed);

/// Chain of t = n / k clusters, k = beta / eps, V_i = [ik, (i+1)k). Between
/// consecutive clusters sits a matching-family gadget with matching weight
/// 1/eps, resampled until it is strongly connected and (when 2k <= 20) its
/// exact balance is at most 8 beta.
DiGraph gen_forall_lb_chain(std::size_t n, double beta, double eps, std::uint64_t seed);

struct DecodeQuery {
  std::size_t bit = 0;
  Vertex u = 0;
  Vertex v = 0;
  CutSet cut;
  double baseline = 0.0;  // weight of non-bipartite edges leaving the cut
};

struct EncodedGraph {
  DiGraph graph;
  std::vector<DecodeQuery> queries;  // one per bit, in bit order
  std::size_t k = 0;
  std::size_t clusters = 0;
};

/// Bits packed into a chain of k x k complete bipartite digraphs,
/// k = sqrt(beta/eps), bipartite weight bit + 1, plus one cycle of weight
/// 1/eps through each consecutive cluster pair. Vertex order is permuted by
/// seed. The query for bit (u, v) between V_i and V_{i+1} is
/// {u} ∪ (V_{i+1} \ {v}) ∪ V_{i+2} ∪ ... ∪ V_t.
EncodedGraph gen_foreach_lb(std::size_t n, double beta, double eps, const std::vector<bool>& bits,
                            std::uint64_t seed);

/// Two-cluster variant: complete L -> R bipartite digraph on n/2 + n/2
/// vertices with weights bit + 1, plus a unit cycle leaving each side once.
/// Query for (u, v) is {u} ∪ (R \ {v}).
EncodedGraph gen_foreach_lb_simple(std::size_t n, const std::vector<bool>& bits, std::uint64_t seed);

/// Decoded bit from a cut value: value - baseline >= 1.5.
bool decode_bit(const DecodeQuery& q, double value);

/// Unit bipartite digraph on n vertices: matching L -> R, complete R -> L.
DiGraph gen_gamma_counterexample(std::size_t n);

/// Directed edge connectivity of each edge: max flow tail -> head.
std::vector<double> directed_connectivities(const DiGraph& g);

struct GammaTrial {
  DiGraph h;
  Vertex witness = 0;  // v in R with the smallest out-degree in h
  CutSet cut;          // {v} ∪ N_h(v)
  double w_g = 0.0;
  double w_h = 0.0;
  double deviation = 1.0;  // max(w_g / w_h, w_h / w_g)
};

/// Samples e with p_e = min(1, rho / gamma_e), weight 1 / p_e, then
/// evaluates the witness cut of a matching/complete bipartite graph whose
/// right side is [n/2, n).
GammaTrial gamma_sampling_trial(const DiGraph& g, const std::vector<double>& gamma, double rho,
                                std::uint64_t seed);

/// Random bit string of the given length.
std::vector<bool> random_bits(std::size_t count, std::uint64_t seed);

}  // namespace balcut
