#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "balcut/graph.hpp"
#include "balcut/sketch.hpp"

namespace balcut {

struct ForEachClass {
  int index = 0;
  std::vector<Edge> sparse_edges;  // peeled, stored exactly
  std::vector<SketchPart> parts;   // components of the remaining edges

  bool operator==(const ForEachClass&) const = default;
};

struct ForEachSketch {
  std::size_t n = 0;
  double beta = 1.0;
  double eps = 0.5;
  double alpha = 0.0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  PeelMode mode = PeelMode::kExact;
  bool certified = false;  // every final component has no lambda-sparse cut
  std::size_t samples_per_vertex = 0;
  std::vector<ForEachClass> classes;

  bool operator==(const ForEachSketch&) const = default;
};

struct ForEachOptions {
  PeelMode mode = PeelMode::kExact;
  // Overrides for experiments; by default alpha = lambda = sqrt(beta)/eps.
  std::optional<double> alpha;
  std::optional<double> lambda;
};

/// Lambda-sparse cut search on one component (local vertex ids, all edges
/// counted). Exact mode is complete; heuristic mode tries the min-degree
/// singleton, then degree-ordered prefixes, then a spectral sweep, and
/// returns the lowest-ratio qualifying cut of the first stage that has one.
std::optional<CutSet> find_sparse_cut(const DiGraph& component, double lambda, PeelMode mode);

ForEachSketch build_sketch(const DiGraph& g, double beta, double eps, std::uint64_t seed,
                           const ForEachOptions& options = {});

CutEstimate query_sketch(const ForEachSketch& sk, const CutSet& s);

}  // namespace balcut
