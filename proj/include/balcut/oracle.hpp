#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "balcut/graph.hpp"

namespace balcut {

// Hard caps for the exhaustive oracles.
inline constexpr std::size_t kMaxEnumerationVertices = 26;
inline constexpr std::size_t kMaxBruteStrengthVertices = 10;
inline constexpr std::size_t kMaxStCutVertices = 20;

/// Every proper nonempty subset of [0, n) up to complement: the subsets that
/// omit vertex n-1, in increasing bitmask order (2^(n-1) - 1 of them).
class CutRange {
 public:
  class iterator {
   public:
    using value_type = CutSet;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::size_t n, std::uint64_t mask) : n_(n), mask_(mask) {}
    CutSet operator*() const { return CutSet::from_mask(n_, mask_); }
    std::uint64_t mask() const { return mask_; }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++mask_;
      return old;
    }
    bool operator==(const iterator& o) const { return mask_ == o.mask_; }

   private:
    std::size_t n_ = 0;
    std::uint64_t mask_ = 0;
  };

  explicit CutRange(std::size_t n);
  iterator begin() const { return {n_, 1}; }
  iterator end() const { return {n_, end_}; }
  std::uint64_t size() const { return end_ - 1; }

 private:
  std::size_t n_;
  std::uint64_t end_;
};

CutRange enumerate_cuts(std::size_t n);

/// Total order on vertex sets: compare their sorted member lists.
bool lex_less(std::uint64_t a, std::uint64_t b);

/// Max cut_balance over all proper nonempty S.
double exact_graph_balance(const DiGraph& g);

struct ConductanceResult {
  double value = 0.0;
  CutSet cut;  // a minimizing side
};

/// Exact conductance of the undirected view. Volumes count each incident
/// edge's weight; crossing weight counts both directions. Throws
/// ArgumentError on an edgeless graph. If some side has zero volume the
/// graph is disconnected and the value is 0.
ConductanceResult exact_conductance(const DiGraph& g);

/// Minimizer of crossing edge count / min(|S|, |S̄|) (both directions,
/// counts not weights) if it satisfies count <= lambda * min(|S|, |S̄|).
/// The returned side is the smaller one (lexicographically least on ties),
/// and ties between cuts go to the lexicographically least such side.
std::optional<CutSet> find_sparse_cut_exact(const DiGraph& component, double lambda);

/// Strength by definition: max over W containing both endpoints of the
/// global min cut of the induced undirected subgraph.
double brute_strength(const DiGraph& g, EdgeId e);
std::vector<double> brute_strengths(const DiGraph& g);

/// Min over all proper S of the undirected crossing weight.
double brute_global_min_cut(const DiGraph& g);

/// Min over S with s in S, t not in S of w(S, S̄).
double brute_min_st_cut(const DiGraph& g, Vertex s, Vertex t);

struct MaxFlowResult {
  double value = 0.0;
  std::vector<double> flow;  // per edge id
};

/// Dinic's algorithm on the directed graph. For n <= 20 the value is
/// cross-checked against brute_min_st_cut and a mismatch throws
/// std::logic_error.
MaxFlowResult exact_max_flow(const DiGraph& g, Vertex s, Vertex t);

struct ForAllReport {
  bool ok = true;
  CutSet worst_cut;         // S with the largest normalised error, direction S -> S̄
  double worst_ratio = 1.0;  // w_H(S, S̄) / w_G(S, S̄) at that cut
  double worst_excess = 0.0;  // |ratio - 1| / tolerance, > 1 means violated
  std::uint64_t cuts_checked = 0;
};

/// Checks (1-eps) w_G <= w_H <= (1+eps) w_G on every directed cut.
ForAllReport verify_for_all(const DiGraph& g, const DiGraph& h, double eps);

/// Same, with a per-cut tolerance computed from the cut's balance in g.
ForAllReport verify_for_all(const DiGraph& g, const DiGraph& h,
                            const std::function<double(double)>& tolerance_of_balance);

}  // namespace balcut
