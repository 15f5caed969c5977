#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace balcut {

// Undirected weighted edge between local vertex ids.
struct LocalEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double w = 1.0;
};

/// Vertices ordered by the degree-normalised Fiedler vector of the graph
/// (second eigenvector of the normalised Laplacian, scaled by D^-1/2).
/// Dense eigensolver for small graphs, deflated power iteration otherwise.
/// Ties are broken by vertex id.
std::vector<std::uint32_t> fiedler_order(std::size_t k, std::span<const LocalEdge> edges);

struct SweepPoint {
  std::size_t size = 0;   // prefix length
  double crossing = 0.0;  // weight between prefix and rest
  double volume = 0.0;    // weighted degree sum of the prefix
};

/// Profile of every proper prefix of `order` (sizes 1 .. k-1).
std::vector<SweepPoint> sweep_profile(std::size_t k, std::span<const LocalEdge> edges,
                                      std::span<const std::uint32_t> order);

}  // namespace balcut
