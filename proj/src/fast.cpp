#include "balcut/fast.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "balcut/errors.hpp"
#include "balcut/oracle.hpp"
#include "balcut/spectral.hpp"

namespace balcut {

namespace {

constexpr int kMaxHalvings = 60;

struct Piece {
  std::vector<Vertex> verts;
  std::vector<EdgeId> edges;
};

class Decomposer {
 public:
  Decomposer(const DiGraph& g, double phi, std::size_t brute_limit)
      : g_(g), phi_(phi), brute_limit_(brute_limit), local_(g.num_vertices(), 0) {}

  void run(std::span<const EdgeId> edges) {
    std::vector<EdgeId> es(edges.begin(), edges.end());
    std::vector<Vertex> all(g_.num_vertices());
    std::iota(all.begin(), all.end(), Vertex{0});
    split_into_pieces(all, es);
  }

  std::vector<std::vector<Vertex>> parts;
  std::vector<char> certified;

 private:
  // Connected pieces of `edges` within `verts`; untouched vertices become singletons.
  void split_into_pieces(const std::vector<Vertex>& verts, const std::vector<EdgeId>& edges) {
    int count = 0;
    const std::vector<int> label = undirected_components(g_, edges, &count);
    std::vector<Piece> ps(static_cast<std::size_t>(count));
    for (Vertex v : verts) {
      if (label[v] < 0) {
        parts.push_back({v});
        certified.push_back(1);
      } else {
        ps[static_cast<std::size_t>(label[v])].verts.push_back(v);
      }
    }
    for (EdgeId e : edges) ps[static_cast<std::size_t>(label[g_.edge(e).tail])].edges.push_back(e);
    for (Piece& p : ps) refine(p);
  }

  void refine(const Piece& p) {
    const std::size_t k = p.verts.size();
    if (k <= 2) {  // a connected pair has conductance 1
      parts.push_back(p.verts);
      certified.push_back(1);
      return;
    }
    for (std::size_t i = 0; i < k; ++i) local_[p.verts[i]] = static_cast<std::uint32_t>(i);
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> agg;
    DiGraph lg(k);
    for (EdgeId e : p.edges) {
      const Edge& ed = g_.edge(e);
      const std::uint32_t a = local_[ed.tail], b = local_[ed.head];
      agg[{std::min(a, b), std::max(a, b)}] += 1.0;
      lg.add_edge(a, b, 1.0);
    }
    std::vector<LocalEdge> ledges;
    for (const auto& [key, w] : agg) ledges.push_back({key.first, key.second, w});

    const double total_vol = 2.0 * static_cast<double>(p.edges.size());
    const std::vector<std::uint32_t> order = fiedler_order(k, ledges);
    double best = 2.0;
    std::size_t best_len = 0;
    for (const SweepPoint& sp : sweep_profile(k, ledges, order)) {
      const double denom = std::min(sp.volume, total_vol - sp.volume);
      const double phi = denom > 0 ? sp.crossing / denom : 0.0;
      if (phi < best) {
        best = phi;
        best_len = sp.size;
      }
    }
    CutSet cut(k);
    bool split = false;
    if (best < phi_) {
      for (std::size_t i = 0; i < best_len; ++i) cut.insert(order[i]);
      split = true;
    } else if (k <= brute_limit_) {
      ConductanceResult cr = exact_conductance(lg);
      if (cr.value < phi_) {
        cut = cr.cut;
        split = true;
      }
    }
    if (!split) {
      parts.push_back(p.verts);
      certified.push_back(k <= brute_limit_ ? 1 : 0);
      return;
    }
    std::vector<Vertex> va, vb;
    for (std::size_t i = 0; i < k; ++i) (cut.contains(static_cast<Vertex>(i)) ? va : vb).push_back(p.verts[i]);
    std::vector<EdgeId> ea, eb;
    for (EdgeId e : p.edges) {
      const Edge& ed = g_.edge(e);
      const bool ta = cut.contains(local_[ed.tail]);
      const bool ha = cut.contains(local_[ed.head]);
      if (ta && ha) ea.push_back(e);
      if (!ta && !ha) eb.push_back(e);
    }
    split_into_pieces(va, ea);
    split_into_pieces(vb, eb);
  }

  const DiGraph& g_;
  double phi_;
  std::size_t brute_limit_;
  std::vector<std::uint32_t> local_;
};

ExpanderPartition assemble(const DiGraph& g, std::span<const EdgeId> edges, Decomposer& d) {
  ExpanderPartition ep;
  std::vector<std::size_t> idx(d.parts.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (auto& p : d.parts) std::sort(p.begin(), p.end());
  std::sort(idx.begin(), idx.end(),
            [&d](std::size_t a, std::size_t b) { return d.parts[a].front() < d.parts[b].front(); });
  ep.part_of.assign(g.num_vertices(), -1);
  for (std::size_t i : idx) {
    for (Vertex v : d.parts[i]) ep.part_of[v] = static_cast<int>(ep.parts.size());
    ep.parts.push_back(std::move(d.parts[i]));
    ep.brute_certified.push_back(d.certified[i]);
  }
  ep.edges = edges.size();
  for (EdgeId e : edges) {
    if (ep.part_of[g.edge(e).tail] == ep.part_of[g.edge(e).head]) ++ep.intra_edges;
  }
  return ep;
}

}  // namespace

double default_phi_star(std::size_t n) {
  const double l = std::log2(static_cast<double>(std::max<std::size_t>(n, 3)));
  return 1.0 / (4.0 * l * l * l);
}

ExpanderPartition expander_decompose(const DiGraph& g, std::span<const EdgeId> edges, double phi_star,
                                     std::size_t brute_limit) {
  if (!(phi_star >= 0.0)) throw ArgumentError("phi_star must be non-negative");
  double phi = phi_star;
  for (int round = 1;; ++round) {
    // After enough halvings fall back to plain connected components.
    const double use = round > kMaxHalvings ? 0.0 : phi;
    Decomposer d(g, use, brute_limit);
    d.run(edges);
    ExpanderPartition ep = assemble(g, edges, d);
    ep.phi_star = use;
    ep.rounds = round;
    if (2 * ep.intra_edges >= ep.edges || use == 0.0) return ep;
    phi /= 2.0;
  }
}

ExpanderPartition expander_decompose(const DiGraph& g, double phi_star) {
  std::vector<EdgeId> all(g.num_edges());
  std::iota(all.begin(), all.end(), EdgeId{0});
  return expander_decompose(g, all, phi_star);
}

double fast_alpha(std::size_t n, double beta, double eps) {
  const double l = std::log(static_cast<double>(n));
  return std::sqrt(beta) * l * std::sqrt(l) / eps;
}

FastSketch build_fast_sketch(const DiGraph& g, double beta, double eps, std::uint64_t seed,
                             const FastOptions& options) {
  if (!(beta >= 1.0)) throw ArgumentError("beta must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  if (g.num_vertices() < 2) throw ArgumentError("fast sketch needs n >= 2");
  check_sketch_weights(g);
  FastSketch sk;
  sk.n = g.num_vertices();
  sk.beta = beta;
  sk.eps = eps;
  sk.alpha = options.alpha.value_or(fast_alpha(sk.n, beta, eps));
  sk.phi_star = options.phi_star.value_or(default_phi_star(sk.n));
  sk.seed = seed;
  sk.samples_per_vertex = samples_for_alpha(sk.alpha);

  std::vector<std::uint32_t> deg(g.num_vertices(), 0);
  for (const WeightClassView& wc : weight_classes(g)) {
    FastClass cls;
    cls.index = wc.index;
    std::vector<EdgeId> stored;
    std::vector<EdgeId> current = wc.edges;
    for (std::uint64_t level = 0; !current.empty(); ++level) {
      const ExpanderPartition ep = expander_decompose(g, current, sk.phi_star, options.brute_limit);
      FastLevel lv;
      lv.phi_star = ep.phi_star;
      lv.rounds = ep.rounds;
      lv.edges_in = current.size();
      lv.edges_retained = ep.intra_edges;
      std::vector<std::vector<EdgeId>> inside(ep.parts.size());
      std::vector<EdgeId> next;
      for (EdgeId e : current) {
        const int a = ep.part_of[g.edge(e).tail];
        if (a == ep.part_of[g.edge(e).head]) {
          inside[static_cast<std::size_t>(a)].push_back(e);
        } else {
          next.push_back(e);
        }
      }
      for (std::size_t pi = 0; pi < ep.parts.size(); ++pi) {
        std::vector<EdgeId> rem = std::move(inside[pi]);
        if (rem.empty()) continue;
        // Strip vertices with d_out + d_in <= alpha until none remain.
        while (true) {
          for (Vertex v : ep.parts[pi]) deg[v] = 0;
          for (EdgeId e : rem) {
            ++deg[g.edge(e).tail];
            ++deg[g.edge(e).head];
          }
          std::vector<EdgeId> keep;
          for (EdgeId e : rem) {
            const Edge& ed = g.edge(e);
            const bool low = static_cast<double>(deg[ed.tail]) <= sk.alpha ||
                             static_cast<double>(deg[ed.head]) <= sk.alpha;
            (low ? stored : keep).push_back(e);
          }
          const bool changed = keep.size() != rem.size();
          rem = std::move(keep);
          if (!changed || rem.empty()) break;
        }
        if (rem.empty()) continue;
        std::vector<Vertex> members;
        for (Vertex v : ep.parts[pi]) deg[v] = 0;
        for (EdgeId e : rem) {
          ++deg[g.edge(e).tail];
          ++deg[g.edge(e).head];
        }
        for (Vertex v : ep.parts[pi])
          if (deg[v] > 0) members.push_back(v);
        lv.parts.push_back(make_part(g, std::move(members), rem, sk.samples_per_vertex, seed,
                                     static_cast<std::uint64_t>(wc.index), level + 1));
      }
      cls.levels.push_back(std::move(lv));
      current = std::move(next);
    }
    std::sort(stored.begin(), stored.end());
    for (EdgeId e : stored) cls.stored_edges.push_back(g.edge(e));
    sk.classes.push_back(std::move(cls));
  }
  return sk;
}

CutEstimate query_fast(const FastSketch& sk, const CutSet& s) {
  if (s.universe() != sk.n) throw ArgumentError("cut universe does not match sketch");
  CutEstimate est;
  for (const FastClass& cls : sk.classes) {
    est.j_s += stored_cut_weight(cls.stored_edges, s);
    for (const FastLevel& lv : cls.levels)
      for (const SketchPart& part : lv.parts) est.i_s += estimate_part(part, s, sk.samples_per_vertex);
  }
  est.total = est.i_s + est.j_s;
  return est;
}

}  // namespace balcut
