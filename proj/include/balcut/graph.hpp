#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace balcut {

using Vertex = std::uint32_t;
using EdgeId = std::size_t;

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;
  double weight = 0.0;

  bool operator==(const Edge&) const = default;
};

/// Weighted directed multigraph on vertices [0, n).
///
/// Parallel edges and opposite-direction pairs are kept as distinct edges;
/// self-loops and negative weights are rejected. Edge ids are positions in
/// insertion order and are never renumbered.
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(std::size_t n) : n_(n) {}
  DiGraph(std::size_t n, std::vector<Edge> edges);

  EdgeId add_edge(Vertex tail, Vertex head, double weight);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  double total_weight() const;
  double min_weight() const;
  double max_weight() const;

  /// Same vertex set, every edge flipped; edge ids preserved.
  DiGraph reversed() const;

  bool operator==(const DiGraph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Vertex subset over a fixed universe [0, universe), stored as a bitset.
class CutSet {
 public:
  CutSet() = default;
  explicit CutSet(std::size_t universe);

  static CutSet from_members(std::size_t universe, std::span<const Vertex> members);
  /// Bit v of `mask` selects vertex v. Requires universe <= 64.
  static CutSet from_mask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(Vertex v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
  }
  void insert(Vertex v);
  void erase(Vertex v);

  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  bool is_proper() const noexcept;

  std::vector<Vertex> members() const;
  CutSet complement() const;

  bool operator==(const CutSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class Direction { kOut, kIn };

/// kOut: total weight of edges from S to V\S. kIn: from V\S to S.
/// Summation runs in edge-id order.
double cut_weight(const DiGraph& g, const CutSet& s, Direction direction);

/// max(w(S,S̄)/w(S̄,S), w(S̄,S)/w(S,S̄)); +inf when exactly one direction is
/// zero and 1 when no edge crosses. S must be proper and nonempty.
double cut_balance(const DiGraph& g, const CutSet& s);

/// Balance from the two directed crossing weights, with the conventions above.
double balance_ratio(double out_weight, double in_weight);

/// Reachability over positive-weight edges, both directions from vertex 0.
bool is_strongly_connected(const DiGraph& g);

/// Edges with weight in [2^(index-1), 2^index).
struct WeightClassView {
  int index = 0;
  std::vector<EdgeId> edges;
};

/// Partition of the edge set by weight class; empty classes are omitted and
/// the result is sorted by index. Throws DomainError on weights below 1.
std::vector<WeightClassView> weight_classes(const DiGraph& g);

/// floor(log2(w)) + 1 for w >= 1, computed exactly from the binary exponent.
int weight_class_of(double w);

/// Per-vertex incident edge ids (both lists in increasing edge-id order).
struct Incidence {
  std::vector<std::vector<EdgeId>> out;
  std::vector<std::vector<EdgeId>> in;
};
Incidence incidence(const DiGraph& g);
Incidence incidence(const DiGraph& g, std::span<const EdgeId> subset);

/// Connected components of the undirected view restricted to `subset`.
/// Returns a component label per vertex; vertices touching no edge of the
/// subset get label -1. Labels are dense and ordered by smallest member.
std::vector<int> undirected_components(const DiGraph& g, std::span<const EdgeId> subset,
                                       int* component_count = nullptr);

/// Text edge list: first line `n`, then `tail head weight` per edge. Lines
/// starting with '#' and blank lines are skipped.
DiGraph read_edge_list(std::istream& in);
DiGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const DiGraph& g);
std::string format_weight(double w);

}  // namespace balcut
