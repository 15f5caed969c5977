#pragma once

#include <initializer_list>
#include <tuple>

#include "balcut/graph.hpp"

namespace testutil {

inline balcut::DiGraph make(std::size_t n, std::initializer_list<std::tuple<int, int, double>> edges) {
  balcut::DiGraph g(n);
  for (auto [a, b, w] : edges) g.add_edge(static_cast<balcut::Vertex>(a), static_cast<balcut::Vertex>(b), w);
  return g;
}

inline balcut::CutSet cut(std::size_t n, std::initializer_list<balcut::Vertex> members) {
  balcut::CutSet s(n);
  for (auto v : members) s.insert(v);
  return s;
}

// Both directions of every listed undirected edge, unit weight.
inline balcut::DiGraph bidirected(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  balcut::DiGraph g(n);
  for (auto [a, b] : edges) {
    g.add_edge(static_cast<balcut::Vertex>(a), static_cast<balcut::Vertex>(b), 1.0);
    g.add_edge(static_cast<balcut::Vertex>(b), static_cast<balcut::Vertex>(a), 1.0);
  }
  return g;
}

inline balcut::DiGraph complete_bidirected(std::size_t n) {
  balcut::DiGraph g(n);
  for (balcut::Vertex a = 0; a < n; ++a)
    for (balcut::Vertex b = 0; b < n; ++b)
      if (a != b) g.add_edge(a, b, 1.0);
  return g;
}

}  // namespace testutil

#include <algorithm>
#include <filesystem>
#include <string>

namespace testutil {

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(BALCUT_CORPUS_DIR))
    if (e.path().extension() == ".txt") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace testutil
