#include "balcut/strength.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "balcut/errors.hpp"

namespace balcut {

namespace {

// Stoer-Wagner on a dense symmetric matrix over `verts` (local 0..k-1).
// Returns the min cut value and the local ids of one side.
std::pair<double, std::vector<std::size_t>> stoer_wagner(std::vector<double> w, std::size_t k) {
  std::vector<std::vector<std::size_t>> group(k);
  for (std::size_t i = 0; i < k; ++i) group[i] = {i};
  std::vector<std::size_t> alive(k);
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_side;
  std::vector<double> key(k);
  std::vector<char> added(k);
  while (alive.size() > 1) {
    std::fill(added.begin(), added.end(), 0);
    for (std::size_t v : alive) key[v] = 0.0;
    std::size_t prev = alive[0], last = alive[0];
    for (std::size_t step = 0; step < alive.size(); ++step) {
      std::size_t sel = k;
      for (std::size_t v : alive) {
        if (!added[v] && (sel == k || key[v] > key[sel])) sel = v;
      }
      added[sel] = 1;
      prev = last;
      last = sel;
      if (step + 1 == alive.size()) break;
      for (std::size_t v : alive) {
        if (!added[v]) key[v] += w[sel * k + v];
      }
    }
    // Cut of the phase: `last` against everything else.
    if (key[last] < best) {
      best = key[last];
      best_side = group[last];
    }
    // Merge last into prev.
    group[prev].insert(group[prev].end(), group[last].begin(), group[last].end());
    for (std::size_t v : alive) {
      w[prev * k + v] += w[last * k + v];
      w[v * k + prev] = w[prev * k + v];
    }
    w[prev * k + prev] = 0.0;
    alive.erase(std::find(alive.begin(), alive.end(), last));
  }
  std::sort(best_side.begin(), best_side.end());
  return {best, best_side};
}

struct Decomposer {
  const DiGraph& g;
  StrengthMap& sm;

  // Pieces of `verts` connected through `edges`, edge lists split to match.
  void run(const std::vector<Vertex>& verts, const std::vector<EdgeId>& edges, double floor) {
    if (verts.size() < 2 || edges.empty()) return;
    std::vector<int> label = undirected_components(g, edges);
    int count = 0;
    for (Vertex v : verts) count = std::max(count, label[v] + 1);
    if (count > 1) {
      std::vector<std::vector<Vertex>> vs(static_cast<std::size_t>(count));
      std::vector<std::vector<EdgeId>> es(static_cast<std::size_t>(count));
      for (Vertex v : verts)
        if (label[v] >= 0) vs[static_cast<std::size_t>(label[v])].push_back(v);
      for (EdgeId e : edges) es[static_cast<std::size_t>(label[g.edge(e).tail])].push_back(e);
      for (std::size_t c = 0; c < vs.size(); ++c) piece(vs[c], es[c], floor);
      return;
    }
    std::vector<Vertex> touched;
    for (Vertex v : verts)
      if (label[v] >= 0) touched.push_back(v);
    piece(touched, edges, floor);
  }

  // `verts` connected through `edges`.
  void piece(const std::vector<Vertex>& verts, const std::vector<EdgeId>& edges, double floor) {
    if (verts.size() < 2) return;
    sm.pieces.push_back(verts);
    const std::size_t k = verts.size();
    std::vector<std::size_t> local(g.num_vertices(), 0);
    for (std::size_t i = 0; i < k; ++i) local[verts[i]] = i;
    std::vector<double> w(k * k, 0.0);
    for (EdgeId e : edges) {
      const Edge& ed = g.edge(e);
      w[local[ed.tail] * k + local[ed.head]] += ed.weight;
      w[local[ed.head] * k + local[ed.tail]] += ed.weight;
    }
    auto [c, side_local] = stoer_wagner(std::move(w), k);
    const double level = std::max(floor, c);
    std::vector<char> in_side(k, 0);
    for (std::size_t i : side_local) in_side[i] = 1;
    std::vector<Vertex> a, b;
    for (std::size_t i = 0; i < k; ++i) (in_side[i] ? a : b).push_back(verts[i]);
    std::vector<EdgeId> ea, eb;
    for (EdgeId e : edges) {
      const Edge& ed = g.edge(e);
      const bool ta = in_side[local[ed.tail]] != 0;
      const bool ha = in_side[local[ed.head]] != 0;
      if (ta != ha) {
        sm.k[e] = level;
      } else {
        (ta ? ea : eb).push_back(e);
      }
    }
    run(a, ea, level);
    run(b, eb, level);
  }
};

}  // namespace

MinCutResult global_min_cut(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw ArgumentError("global min cut needs at least 2 vertices");
  std::vector<double> w(n * n, 0.0);
  for (const Edge& e : g.edges()) {
    w[e.tail * n + e.head] += e.weight;
    w[e.head * n + e.tail] += e.weight;
  }
  auto [value, side] = stoer_wagner(std::move(w), n);
  MinCutResult r;
  r.value = value;
  r.side = CutSet(n);
  for (std::size_t v : side) r.side.insert(static_cast<Vertex>(v));
  return r;
}

StrengthMap compute_strengths(const DiGraph& g) {
  StrengthMap sm;
  sm.k.assign(g.num_edges(), 0.0);
  std::vector<Vertex> verts(g.num_vertices());
  std::iota(verts.begin(), verts.end(), Vertex{0});
  std::vector<EdgeId> edges(g.num_edges());
  std::iota(edges.begin(), edges.end(), EdgeId{0});
  Decomposer{g, sm}.run(verts, edges, 0.0);
  return sm;
}

double strength_sum_check(const DiGraph& g, const StrengthMap& sm) {
  if (sm.k.size() != g.num_edges()) throw ArgumentError("strength map does not cover every edge");
  double total = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const double u = g.edge(e).weight;
    if (u > 0.0) total += u / sm.k[e];
  }
  return total;
}

}  // namespace balcut
