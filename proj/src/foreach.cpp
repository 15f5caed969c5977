#include "balcut/foreach.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include "balcut/errors.hpp"
#include "balcut/oracle.hpp"
#include "balcut/spectral.hpp"

namespace balcut {

namespace {

struct RatioPick {
  bool found = false;
  double count = 0.0;
  std::size_t small = 1;
  std::size_t prefix = 0;

  // Keeps the lowest count/small that satisfies count <= lambda * small.
  void offer(double c, std::size_t sz, std::size_t k, std::size_t pfx, double lambda) {
    const std::size_t sm = std::min(sz, k - sz);
    if (c > lambda * static_cast<double>(sm)) return;
    if (!found || c * static_cast<double>(small) < count * static_cast<double>(sm)) {
      found = true;
      count = c;
      small = sm;
      prefix = pfx;
    }
  }
};

CutSet prefix_set(std::size_t k, const std::vector<std::uint32_t>& order, std::size_t len) {
  CutSet s(k);
  for (std::size_t i = 0; i < len; ++i) s.insert(order[i]);
  return s;
}

std::optional<CutSet> heuristic_sparse_cut(const DiGraph& c, double lambda) {
  const std::size_t k = c.num_vertices();
  if (k < 2) return std::nullopt;
  std::vector<double> deg(k, 0.0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> agg;
  for (const Edge& e : c.edges()) {
    deg[e.tail] += 1.0;
    deg[e.head] += 1.0;
    agg[{std::min(e.tail, e.head), std::max(e.tail, e.head)}] += 1.0;
  }
  std::vector<LocalEdge> ledges;
  ledges.reserve(agg.size());
  for (const auto& [key, w] : agg) ledges.push_back({key.first, key.second, w});

  // Singletons.
  std::uint32_t best_v = 0;
  for (std::uint32_t v = 1; v < k; ++v)
    if (deg[v] < deg[best_v]) best_v = v;
  if (deg[best_v] <= lambda) {
    CutSet s(k);
    s.insert(best_v);
    return s;
  }

  // Degree-ordered prefixes: every low-degree threshold set.
  std::vector<std::uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&deg](std::uint32_t a, std::uint32_t b) { return deg[a] < deg[b]; });
  RatioPick pick;
  for (const SweepPoint& p : sweep_profile(k, ledges, order)) pick.offer(p.crossing, p.size, k, p.size, lambda);
  if (pick.found) return prefix_set(k, order, pick.prefix);

  // Spectral sweep.
  order = fiedler_order(k, ledges);
  for (const SweepPoint& p : sweep_profile(k, ledges, order)) pick.offer(p.crossing, p.size, k, p.size, lambda);
  if (pick.found) return prefix_set(k, order, pick.prefix);
  return std::nullopt;
}

struct Piece {
  std::vector<Vertex> verts;  // increasing
  std::vector<EdgeId> edges;
};

// Splits an edge set into its connected pieces, ordered by smallest vertex.
std::vector<Piece> pieces_of(const DiGraph& g, const std::vector<EdgeId>& edges) {
  int count = 0;
  const std::vector<int> label = undirected_components(g, edges, &count);
  std::vector<Piece> out(static_cast<std::size_t>(count));
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (label[v] >= 0) out[static_cast<std::size_t>(label[v])].verts.push_back(v);
  for (EdgeId e : edges) out[static_cast<std::size_t>(label[g.edge(e).tail])].edges.push_back(e);
  return out;
}

}  // namespace

std::optional<CutSet> find_sparse_cut(const DiGraph& component, double lambda, PeelMode mode) {
  if (mode == PeelMode::kExact) return find_sparse_cut_exact(component, lambda);
  return heuristic_sparse_cut(component, lambda);
}

ForEachSketch build_sketch(const DiGraph& g, double beta, double eps, std::uint64_t seed,
                           const ForEachOptions& options) {
  if (!(beta >= 1.0)) throw ArgumentError("beta must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  check_sketch_weights(g);
  ForEachSketch sk;
  sk.n = g.num_vertices();
  sk.beta = beta;
  sk.eps = eps;
  sk.alpha = options.alpha.value_or(std::sqrt(beta) / eps);
  sk.lambda = options.lambda.value_or(std::sqrt(beta) / eps);
  if (!(sk.lambda > 0.0)) throw ArgumentError("lambda must be positive");
  sk.seed = seed;
  sk.mode = options.mode;
  sk.certified = options.mode == PeelMode::kExact;
  sk.samples_per_vertex = samples_for_alpha(sk.alpha);

  // Scratch map from global to local ids, reset after each use.
  std::vector<std::uint32_t> local(g.num_vertices(), 0);
  for (const WeightClassView& wc : weight_classes(g)) {
    ForEachClass cls;
    cls.index = wc.index;
    std::vector<EdgeId> sparse;
    std::vector<Piece> done;
    std::deque<Piece> work;
    for (Piece& p : pieces_of(g, wc.edges)) work.push_back(std::move(p));
    while (!work.empty()) {
      Piece p = std::move(work.front());
      work.pop_front();
      for (std::size_t i = 0; i < p.verts.size(); ++i) local[p.verts[i]] = static_cast<std::uint32_t>(i);
      DiGraph lg(p.verts.size());
      for (EdgeId e : p.edges) {
        const Edge& ed = g.edge(e);
        lg.add_edge(local[ed.tail], local[ed.head], ed.weight);
      }
      const std::optional<CutSet> cut = find_sparse_cut(lg, sk.lambda, sk.mode);
      if (!cut) {
        done.push_back(std::move(p));
        continue;
      }
      std::vector<EdgeId> inner;
      for (EdgeId e : p.edges) {
        const Edge& ed = g.edge(e);
        if (cut->contains(local[ed.tail]) != cut->contains(local[ed.head])) {
          sparse.push_back(e);
        } else {
          inner.push_back(e);
        }
      }
      for (Piece& q : pieces_of(g, inner)) work.push_back(std::move(q));
    }
    std::sort(sparse.begin(), sparse.end());
    for (EdgeId e : sparse) cls.sparse_edges.push_back(g.edge(e));
    std::sort(done.begin(), done.end(),
              [](const Piece& a, const Piece& b) { return a.verts.front() < b.verts.front(); });
    for (Piece& p : done) {
      cls.parts.push_back(make_part(g, std::move(p.verts), p.edges, sk.samples_per_vertex, seed,
                                    static_cast<std::uint64_t>(wc.index), 0));
    }
    sk.classes.push_back(std::move(cls));
  }
  return sk;
}

CutEstimate query_sketch(const ForEachSketch& sk, const CutSet& s) {
  if (s.universe() != sk.n) throw ArgumentError("cut universe does not match sketch");
  CutEstimate est;
  for (const ForEachClass& cls : sk.classes) {
    est.j_s += stored_cut_weight(cls.sparse_edges, s);
    for (const SketchPart& part : cls.parts) est.i_s += estimate_part(part, s, sk.samples_per_vertex);
  }
  est.total = est.i_s + est.j_s;
  return est;
}

}  // namespace balcut
