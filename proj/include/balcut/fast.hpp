#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "balcut/graph.hpp"
#include "balcut/sketch.hpp"

namespace balcut {

// Parts up to this size are certified by brute-force conductance.
inline constexpr std::size_t kBruteConductanceLimit = 26;

/// 1 / (4 log2^3 n), with n clamped below at 3.
double default_phi_star(std::size_t n);

struct ExpanderPartition {
  std::vector<int> part_of;  // per vertex; every vertex belongs to some part
  std::vector<std::vector<Vertex>> parts;  // ordered by smallest member
  std::vector<char> brute_certified;        // per part
  double phi_star = 0.0;   // threshold actually used after retention retries
  int rounds = 0;          // 1 + number of times phi_star was halved
  std::size_t edges = 0;
  std::size_t intra_edges = 0;
};

/// Splits V so every part of the undirected, unweighted view of `edges` has
/// conductance >= phi_star: parts up to kBruteConductanceLimit vertices are
/// checked exactly, larger ones by a spectral sweep. If fewer than half the
/// edges end up inside parts, phi_star is halved and the split redone.
ExpanderPartition expander_decompose(const DiGraph& g, std::span<const EdgeId> edges, double phi_star,
                                     std::size_t brute_limit = kBruteConductanceLimit);
ExpanderPartition expander_decompose(const DiGraph& g, double phi_star);

struct FastLevel {
  double phi_star = 0.0;
  int rounds = 0;
  std::size_t edges_in = 0;        // |E_ij|
  std::size_t edges_retained = 0;  // edges inside parts
  std::vector<SketchPart> parts;   // parts that kept edges after low-degree removal

  bool operator==(const FastLevel&) const = default;
};

struct FastClass {
  int index = 0;
  std::vector<Edge> stored_edges;  // low-degree edges, stored exactly
  std::vector<FastLevel> levels;

  bool operator==(const FastClass&) const = default;
};

struct FastSketch {
  std::size_t n = 0;
  double beta = 1.0;
  double eps = 0.5;
  double alpha = 0.0;
  double phi_star = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples_per_vertex = 0;
  std::vector<FastClass> classes;

  bool operator==(const FastSketch&) const = default;
};

struct FastOptions {
  std::optional<double> phi_star;
  std::optional<double> alpha;
  std::size_t brute_limit = kBruteConductanceLimit;
};

/// alpha = sqrt(beta) ln^1.5(n) / eps.
double fast_alpha(std::size_t n, double beta, double eps);

FastSketch build_fast_sketch(const DiGraph& g, double beta, double eps, std::uint64_t seed,
                             const FastOptions& options = {});

CutEstimate query_fast(const FastSketch& sk, const CutSet& s);

}  // namespace balcut
