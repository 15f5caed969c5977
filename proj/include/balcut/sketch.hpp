#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "balcut/graph.hpp"

namespace balcut {

// Pieces shared by the for-each sketch and the expander-based fast sketch.

enum class PeelMode : std::uint8_t { kExact = 0, kHeuristic = 1 };

const char* to_string(PeelMode m);
PeelMode peel_mode_from_string(const std::string& s);

// Sketch inputs must have weights in [1, max(n,2)^kMaxWeightExponent].
inline constexpr int kMaxWeightExponent = 10;
void check_sketch_weights(const DiGraph& g);

struct SampleRecord {
  Vertex other = 0;  // head for outgoing samples, tail for incoming
  double weight = 0.0;

  bool operator==(const SampleRecord&) const = default;
};

// One dense cluster: its vertices, their degree counts over the cluster's
// edges, and the samples drawn from those edges.
struct SketchPart {
  std::vector<Vertex> members;  // increasing
  std::vector<std::uint32_t> out_degree;
  std::vector<std::uint32_t> in_degree;
  std::vector<std::vector<SampleRecord>> out_samples;
  std::vector<std::vector<SampleRecord>> in_samples;

  bool operator==(const SketchPart&) const = default;
};

struct CutEstimate {
  double total = 0.0;
  double i_s = 0.0;  // sampled part
  double j_s = 0.0;  // stored edges, exact
};

/// ceil(alpha), tolerant of floating noise just above an integer.
std::size_t samples_for_alpha(double alpha);

/// Builds a part from its vertex set and edge ids, drawing
/// `samples_per_vertex` samples per vertex and direction with replacement.
/// Sample j of vertex u in direction dir is keyed by (seed, tag..., u, dir, j).
SketchPart make_part(const DiGraph& g, std::vector<Vertex> members, const std::vector<EdgeId>& edges,
                     std::size_t samples_per_vertex, std::uint64_t seed, std::uint64_t tag_a,
                     std::uint64_t tag_b);

/// Sampled estimate of the part's S -> S̄ weight, using the smaller side
/// (S on ties) with outgoing samples for S and incoming samples for S̄.
double estimate_part(const SketchPart& part, const CutSet& s, std::size_t samples_per_vertex);

/// Weight of stored edges from S to S̄.
double stored_cut_weight(const std::vector<Edge>& edges, const CutSet& s);

}  // namespace balcut
